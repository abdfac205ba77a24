#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "heisenwave/field.hpp"
#include "heisenwave/heat.hpp"
#include "heisenwave/wavelet.hpp"

namespace heisenwave {

/// Constants of the reproducing formula for phi = L h(., 1):
///   phi_{sqrt a} * phi_{sqrt a} = -c a d/da psi_{k sqrt a},   g * K_{eps,A} -> q c (int psi) g.
namespace calderon_constants {
inline constexpr double c = 0.25;
inline constexpr double q = 0.5;
inline constexpr double k = 1.4142135623730951;
/// q c int(psi), with int(psi) = 1.
inline constexpr double admissibility = q * c;
}  // namespace calderon_constants

/// Geometric scales a_j = a_min rho^j, j = 0..count-1, with trapezoid weights in log a,
/// so that sum_j weight_j F(a_j) approximates int F(a) da / a.
class ScaleLattice {
 public:
  ScaleLattice(double a_min, double a_max, std::size_t count);

  double a_min() const noexcept { return a_min_; }
  double a_max() const noexcept { return a_max_; }
  std::size_t count() const noexcept { return nodes_.size(); }
  double ratio() const noexcept { return ratio_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> log_weights() const noexcept { return weights_; }

 private:
  double a_min_, a_max_, ratio_;
  std::vector<double> nodes_, weights_;
};

/// V f(w, a_j) = (f * D_{a_j} mother~)(w), one slab per lattice scale.
struct WaveletCoefficients {
  GridSpec grid;
  ScaleLattice scales;
  std::vector<SampledField> slabs;
};

/// Mother wavelet given as samples; D_a is applied by resampling (dilate_field, L2).
WaveletCoefficients cwt(const SampledField& f, const SampledField& mother, const ScaleLattice& scales);

/// Mexican hat evaluated directly at every scale. phi is real and inversion symmetric,
/// so D_a phi~ = D_a phi.
WaveletCoefficients cwt(const SampledField& f, const MexicanHatWavelet& phi, const ScaleLattice& scales,
                        Sampling mode = Sampling::cell_average);

/// int int |V f(w, a)|^2 a^-5 dw da: trapezoid in w, log-trapezoid in a (node weight w_j a_j^-4).
double cwt_energy(const WaveletCoefficients& c);

enum class KernelSource { numeric, closed_form };

/// K_{eps,A} = int_eps^A phi~_a * phi_a da / a on a grid.
struct CalderonKernel {
  double eps;
  double A;
  KernelSource source;
  Sampling sampling;
  SampledField field;
};

struct NumericKernelOptions {
  /// Scale at which phi~_b * phi_b is formed by group convolution; every lattice term is
  /// its dilation. Must be resolved by the grid and its square must fit in the box.
  double base_scale = 0.7071067811865476;
  Sampling sampling = Sampling::cell_average;
};

/// Log-trapezoid sum over the lattice of phi~_{a_j} * phi_{a_j}. The product is computed once
/// by convolution at the base scale and carried to each a_j by the dilation automorphism
/// (phi~ * phi)_a = phi~_a * phi_a, read through cubic interpolation.
/// eps == A gives the zero kernel; eps > A or a lattice not spanning [eps, A] is rejected.
CalderonKernel calderon_kernel_numeric(const MexicanHatWavelet& phi, const GridSpec& grid, double eps, double A,
                                       const ScaleLattice& scales, const NumericKernelOptions& options = {});

/// (q c) (psi_{k eps} - psi_{k A}).
CalderonKernel calderon_kernel_closed_form(const SmoothingFunction& psi, const GridSpec& grid, double eps, double A,
                                           Sampling sampling = Sampling::cell_average);

/// g * K. Tends to (q c) g as the window widens.
SampledField reconstruct(const SampledField& g, const CalderonKernel& kernel);

struct KeyIdentityResidual {
  /// phi_{sqrt a} * phi_{sqrt a} against a^2 L^2 h(., 2a).
  double r1;
  /// -c a d/da psi_{sqrt(2a)} (central difference) against a^2 L^2 h(., 2a).
  double r2;
};

KeyIdentityResidual key_identity_residual(const HeatKernelEvaluator& evaluator, const GridSpec& grid, double a,
                                          double da = 1e-3);

}  // namespace heisenwave
