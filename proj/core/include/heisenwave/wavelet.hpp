#pragma once

#include <span>
#include <string>
#include <vector>

#include "heisenwave/field.hpp"
#include "heisenwave/heat.hpp"

namespace heisenwave {

/// How a continuous function is put on a grid: values at the nodes, or exact means over
/// the cell around each node. Cell means keep the mass of features narrower than a cell
/// but blur wider ones at O(spacing^2). `adaptive` picks point values for dilated functions
/// at scales >= resolution_scale(grid) and cell means below.
enum class Sampling { point, cell_average, adaptive };

/// Smallest dilation scale the grid resolves: max(dp, dq, sqrt(2 dt)).
double resolution_scale(const GridSpec& grid) noexcept;

/// phi = L h(., 1) = -d/ds h(., s) at s = 1.
class MexicanHatWavelet {
 public:
  explicit MexicanHatWavelet(const HeatKernelEvaluator& evaluator) : evaluator_(&evaluator) {}

  double operator()(const GroupPoint& w) const;

  SampledField sample(const GridSpec& grid, Sampling mode = Sampling::point) const;

  /// phi_a (L1) = a^2 L h(., a^2); D_a phi (L2) = a^2 phi_a. Sampled directly from the
  /// evaluator, so no resampling error.
  SampledField sample_dilated(const GridSpec& grid, Scale a, Normalization norm,
                              Sampling mode = Sampling::point) const;

  const HeatKernelEvaluator& evaluator() const noexcept { return *evaluator_; }

 private:
  const HeatKernelEvaluator* evaluator_;
};

/// psi = h(., 1) + L h(., 1).
class SmoothingFunction {
 public:
  explicit SmoothingFunction(const HeatKernelEvaluator& evaluator) : evaluator_(&evaluator) {}

  double operator()(const GroupPoint& w) const;

  SampledField sample(const GridSpec& grid, Sampling mode = Sampling::point) const;

  /// psi_b (L1) = h(., b^2) - b^2 d/ds h(., b^2).
  SampledField sample_dilated(const GridSpec& grid, Scale b, Sampling mode = Sampling::point) const;

 private:
  const HeatKernelEvaluator* evaluator_;
};

/// p^i q^j t^k. Homogeneous degree counts t twice.
struct Monomial {
  unsigned i = 0, j = 0, k = 0;

  unsigned degree() const noexcept { return i + j + 2 * k; }
  double operator()(const GroupPoint& w) const noexcept;
  std::string name() const;

  /// All monomials with homogeneous degree <= d, ordered by degree.
  static std::vector<Monomial> up_to_degree(unsigned d);
};

struct MomentResult {
  Complex value;
  /// max |f m| on the outer grid faces over max |f m| on the grid.
  double boundary_ratio = 0.0;
  /// boundary_ratio >= 1e-6: the integrand is cut off by the box.
  bool boundary_warning = false;
};

/// Trapezoidal integral of f(w) m(w).
MomentResult moment(const SampledField& f, const Monomial& m);

struct DecayProfile {
  struct Shell {
    double radius;
    double max_abs;
  };
  std::vector<Shell> shells;
  /// Least-squares slope of log max|phi| against radius^2.
  double slope = 0.0;
};

/// For each radius r, max |phi| over points with homogeneous norm in [r, r + width),
/// taken along a fixed set of directions.
DecayProfile decay_profile(const MexicanHatWavelet& phi, std::span<const double> radii, double width = 0.25,
                           std::size_t directions = 400);

}  // namespace heisenwave
