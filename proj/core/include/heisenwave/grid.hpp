#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cmath>
#include <stdexcept>

#include "heisenwave/group.hpp"

namespace heisenwave {

enum class Axis : int { p = 0, q = 1, t = 2 };

/// One axis of a box grid: nodes at (i - (n-1)/2) * spacing, symmetric about 0.
struct AxisSpec {
  double half_extent = 6.0;
  std::uint32_t samples = 33;

  double spacing() const noexcept { return 2.0 * half_extent / static_cast<double>(samples - 1); }
  double center() const noexcept { return 0.5 * static_cast<double>(samples - 1); }

  // Computed from the centered index so that coordinate(n-1-i) == -coordinate(i) bit for bit.
  double coordinate(std::size_t i) const noexcept {
    return (static_cast<double>(i) - center()) * spacing();
  }

  /// Fractional index of coordinate x (may lie outside [0, samples-1]).
  double position(double x) const noexcept { return x / spacing() + center(); }

  friend bool operator==(const AxisSpec&, const AxisSpec&) = default;
};

/// Regular box grid [-Ep,Ep] x [-Eq,Eq] x [-Et,Et]. Storage order is (p, q, t), t fastest.
class GridSpec {
 public:
  GridSpec(AxisSpec p, AxisSpec q, AxisSpec t) : axes_{p, q, t} {
    for (const auto& a : axes_) {
      if (!(a.half_extent > 0.0)) throw std::invalid_argument("grid half extent must be positive");
      if (a.samples < 3) throw std::invalid_argument("grid needs at least 3 samples per axis");
    }
  }

  /// Cubic grid with the same extent and sample count on every axis.
  static GridSpec cube(double half_extent, std::uint32_t samples) {
    const AxisSpec a{half_extent, samples};
    return GridSpec(a, a, a);
  }

  /// Square p-q grid whose t spacing makes every twist (p'q - q'p)/2 between nodes a whole
  /// number of t steps: dt = d^2/2 for odd counts, d^2/4 for even ones. The t half extent is
  /// rounded up to a whole number of steps. Convolution on it reads no interpolated values.
  static GridSpec lattice(double half_extent, std::uint32_t samples) {
    const AxisSpec pq{half_extent, samples};
    const double d = pq.spacing();
    const double dt = samples % 2 == 1 ? 0.5 * d * d : 0.25 * d * d;
    const double steps = std::ceil(half_extent / dt - 1e-9);
    return GridSpec(pq, pq, AxisSpec{steps * dt, static_cast<std::uint32_t>(2 * steps + 1)});
  }

  const AxisSpec& axis(Axis a) const noexcept { return axes_[static_cast<int>(a)]; }
  const AxisSpec& p() const noexcept { return axes_[0]; }
  const AxisSpec& q() const noexcept { return axes_[1]; }
  const AxisSpec& t() const noexcept { return axes_[2]; }

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(axes_[0].samples) * axes_[1].samples * axes_[2].samples;
  }

  std::size_t index(std::size_t ip, std::size_t iq, std::size_t it) const noexcept {
    return (ip * axes_[1].samples + iq) * axes_[2].samples + it;
  }

  GroupPoint point(std::size_t ip, std::size_t iq, std::size_t it) const noexcept {
    return {axes_[0].coordinate(ip), axes_[1].coordinate(iq), axes_[2].coordinate(it)};
  }

  double cell_volume() const noexcept {
    return axes_[0].spacing() * axes_[1].spacing() * axes_[2].spacing();
  }

  /// Node lies in the central box covering `fraction` of each half extent.
  bool is_interior(std::size_t ip, std::size_t iq, std::size_t it, double fraction = 0.8) const noexcept {
    const double tol = 1e-12;
    return std::abs(axes_[0].coordinate(ip)) <= fraction * axes_[0].half_extent + tol &&
           std::abs(axes_[1].coordinate(iq)) <= fraction * axes_[1].half_extent + tol &&
           std::abs(axes_[2].coordinate(it)) <= fraction * axes_[2].half_extent + tol;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::array<AxisSpec, 3> axes_;
};

}  // namespace heisenwave
