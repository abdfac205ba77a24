#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "heisenwave/field.hpp"
#include "heisenwave/grid.hpp"
#include "heisenwave/group.hpp"

namespace heisenwave {

/// Truncation and resolution of the frequency integral behind the heat kernel.
struct HeatQuadrature {
  double lambda_extent = 40.0;
  std::uint32_t lambda_nodes = 2048;
};

/// Heat kernel h(w, s) of the sub-Laplacian, i.e. the solution of (d/ds + L) h = 0 with
/// h(., s) -> delta as s -> 0.
///
/// Partial Fourier transform in t turns L into a Landau Hamiltonian whose heat kernel is
/// given by Mehler's formula. In the rescaled frequency mu = lambda * s,
///
///   h(p,q,t,s) = 1/(4 pi^2 s^2) * int_0^inf cos(mu t/s) (mu/sinh mu) exp(-(mu coth mu) r^2/(4s)) dmu
///
/// with r^2 = p^2 + q^2. The integrand is even and analytic in the strip |Im mu| < pi, so the
/// trapezoidal rule converges geometrically. Time derivatives are taken under the integral.
/// For |t|/s beyond the aliasing-free band the true value is below exp(-pi |t|/s) and is
/// returned as 0.
class HeatKernelEvaluator {
 public:
  static constexpr double kMinTime = 1e-4;

  explicit HeatKernelEvaluator(HeatQuadrature quad = {});

  const HeatQuadrature& quadrature() const noexcept { return quad_; }

  /// h(w, s). Rejects s < kMinTime.
  double heat_kernel(const GroupPoint& w, double s) const;

  /// d^order/ds^order h(w, s) for order in {1, 2}.
  double heat_time_derivative(const GroupPoint& w, double s, int order) const;

  /// Same as heat_kernel / heat_time_derivative but recomputed with twice the nodes;
  /// throws QuadratureError when the two disagree by more than tolerance * max(1, |value|).
  double checked(const GroupPoint& w, double s, int order, double tolerance = 1e-9) const;

  /// Samples sum_k coeffs[k] * d^k/ds^k h(., s) on a grid in one separable sweep.
  SampledField sample(const GridSpec& grid, double s, std::array<double, 3> coeffs) const;

  /// Cell averages of the same combination: each node carries the mean over its grid cell
  /// (p, q, t each within half a spacing), computed in closed form per frequency node.
  /// Cells far narrower than the function reproduce point samples to O(spacing^2); functions
  /// narrower than a cell keep their exact mass instead of aliasing into a spike.
  SampledField sample_cell_average(const GridSpec& grid, double s, std::array<double, 3> coeffs) const;

  /// Convenience: d^order/ds^order h(., s) on a grid.
  SampledField sample_derivative(const GridSpec& grid, double s, int order) const;

  /// Largest |t|/s handled by the node spacing without aliasing.
  double oscillation_cutoff() const noexcept { return oscillation_cutoff_; }

 private:
  double evaluate(const GroupPoint& w, double s, std::array<double, 3> coeffs) const;

  HeatQuadrature quad_;
  double oscillation_cutoff_;
  // Per frequency node: mu, trapezoid weight * mu/sinh(mu), mu coth mu,
  // mu^2/sinh^2 mu, mu^3 cosh mu / sinh^3 mu.
  std::vector<double> mu_, weight_, coth_term_, sinh2_term_, cosh_term_;
};

}  // namespace heisenwave
