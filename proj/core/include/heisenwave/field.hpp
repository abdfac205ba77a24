#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "heisenwave/errors.hpp"
#include "heisenwave/grid.hpp"
#include "heisenwave/group.hpp"

namespace heisenwave {

using Complex = std::complex<double>;

enum class VectorFieldDirection { X, Y, T };

/// L1 keeps the integral (a^-4 f(a^-1 w)); L2 keeps the 2-norm (a^-2 f(a^-1 w)).
enum class Normalization { L1, L2 };

/// Complex samples of a function on a GridSpec. Values are fixed at construction.
class SampledField {
 public:
  SampledField(GridSpec grid, std::vector<Complex> values);

  static SampledField zeros(const GridSpec& grid);

  /// Samples fn(GroupPoint) at every node. fn may return double or Complex.
  template <class Fn>
  static SampledField sample(const GridSpec& grid, Fn&& fn) {
    std::vector<Complex> v(grid.size());
    for (std::size_t ip = 0; ip < grid.p().samples; ++ip)
      for (std::size_t iq = 0; iq < grid.q().samples; ++iq)
        for (std::size_t it = 0; it < grid.t().samples; ++it)
          v[grid.index(ip, iq, it)] = Complex(fn(grid.point(ip, iq, it)));
    return SampledField(grid, std::move(v));
  }

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  const Complex& operator()(std::size_t ip, std::size_t iq, std::size_t it) const noexcept {
    return values_[grid_.index(ip, iq, it)];
  }

  /// Trilinear interpolation; points outside the box read as 0.
  Complex interpolate(const GroupPoint& x) const noexcept;

  /// True when every imaginary part is exactly zero.
  bool is_real() const noexcept;

  SampledField operator+(const SampledField& other) const;
  SampledField operator-(const SampledField& other) const;
  SampledField operator*(Complex factor) const;
  SampledField conj() const;

 private:
  GridSpec grid_;
  std::vector<Complex> values_;
};

inline SampledField operator*(Complex factor, const SampledField& f) { return f * factor; }

/// Throws GridMismatch unless both fields live on the same grid.
void require_same_grid(const SampledField& a, const SampledField& b);

// -- quadrature -------------------------------------------------------------

/// Trapezoidal rule for the Haar (Lebesgue) integral over the grid box.
Complex integrate(const SampledField& f);

/// <f, g> = integral of f * conj(g).
Complex inner_product(const SampledField& f, const SampledField& g);

double norm_l2(const SampledField& f);
double norm_l1(const SampledField& f);

/// ||approx - reference|| / ||reference|| over nodes inside `fraction` of each half extent.
double relative_l2_error(const SampledField& approx, const SampledField& reference,
                         double fraction = 0.8);

double max_abs_difference(const SampledField& a, const SampledField& b);

// -- group actions ----------------------------------------------------------

/// (L_w f)(v) = f(w^-1 v), trilinear resampling onto the same grid.
SampledField left_translate(const GroupPoint& w, const SampledField& f);

/// f~(w) = conj(f(w^-1)). Exact because the grid is symmetric about the identity.
SampledField involute(const SampledField& f);

/// How dilate_field reads f between nodes: trilinear, tricubic (Catmull-Rom), or the exact
/// mean of the tricubic interpolant over each output cell. Reads outside the box are 0.
enum class Resampling { linear, cubic, cubic_cell_average };

/// Dilation of a function; rejects a <= 0 through Scale.
SampledField dilate_field(Scale a, const SampledField& f, Normalization norm,
                          Resampling mode = Resampling::linear);

// -- left-invariant calculus ------------------------------------------------

/// First-order derivative along one coordinate axis: central inside, one-sided (2nd order) at the edges.
SampledField partial_derivative(const SampledField& f, Axis axis);

/// X = d/dp - (q/2) d/dt,  Y = d/dq + (p/2) d/dt,  T = d/dt.
SampledField apply_vector_field(VectorFieldDirection dir, const SampledField& f);

/// L = -(X^2 + Y^2), assembled with compact second-difference stencils.
SampledField sub_laplacian(const SampledField& f);

// -- convolution ------------------------------------------------------------

/// (f * g)(w) = integral f(v) g(v^-1 w) dv by direct quadrature over the grid nodes.
SampledField convolve(const SampledField& f, const SampledField& g);

}  // namespace heisenwave
