#include "heisenwave/calderon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>


namespace heisenwave {

namespace {

void require_window(double eps, double A) {
  if (!(eps > 0.0) || !std::isfinite(A)) throw std::invalid_argument("window needs 0 < eps and finite A");
  if (eps > A) throw std::invalid_argument("window needs eps <= A");
}

bool same_scale(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); }

}  // namespace

ScaleLattice::ScaleLattice(double a_min, double a_max, std::size_t count) : a_min_(a_min), a_max_(a_max) {
  if (!(a_min > 0.0) || !std::isfinite(a_max) || !(a_max > a_min))
    throw std::invalid_argument("scale lattice needs 0 < a_min < a_max");
  if (count < 2) throw std::invalid_argument("scale lattice needs at least 2 scales");
  const double step = std::log(a_max / a_min) / static_cast<double>(count - 1);
  ratio_ = std::exp(step);
  nodes_.resize(count);
  weights_.assign(count, step);
  for (std::size_t j = 0; j < count; ++j) nodes_[j] = a_min * std::exp(step * static_cast<double>(j));
  nodes_.back() = a_max;
  weights_.front() = weights_.back() = 0.5 * step;
}

WaveletCoefficients cwt(const SampledField& f, const SampledField& mother, const ScaleLattice& scales) {
  require_same_grid(f, mother);
  const SampledField reflected = involute(mother);
  WaveletCoefficients out{f.grid(), scales, {}};
  out.slabs.reserve(scales.count());
  for (double a : scales.nodes())
    out.slabs.push_back(convolve(f, dilate_field(Scale(a), reflected, Normalization::L2)));
  return out;
}

WaveletCoefficients cwt(const SampledField& f, const MexicanHatWavelet& phi, const ScaleLattice& scales,
                        Sampling mode) {
  WaveletCoefficients out{f.grid(), scales, {}};
  out.slabs.reserve(scales.count());
  for (double a : scales.nodes())
    out.slabs.push_back(convolve(f, phi.sample_dilated(f.grid(), Scale(a), Normalization::L2, mode)));
  return out;
}

double cwt_energy(const WaveletCoefficients& c) {
  if (c.slabs.size() != c.scales.count()) throw std::invalid_argument("coefficient slabs do not match the lattice");
  double total = 0.0;
  for (std::size_t j = 0; j < c.slabs.size(); ++j) {
    const double a = c.scales.nodes()[j];
    const double n = norm_l2(c.slabs[j]);
    total += c.scales.log_weights()[j] * n * n / (a * a * a * a);
  }
  return total;
}

CalderonKernel calderon_kernel_numeric(const MexicanHatWavelet& phi, const GridSpec& grid, double eps, double A,
                                       const ScaleLattice& scales, const NumericKernelOptions& options) {
  require_window(eps, A);
  CalderonKernel k{eps, A, KernelSource::numeric, options.sampling, SampledField::zeros(grid)};
  if (eps == A) return k;
  if (!same_scale(scales.a_min(), eps) || !same_scale(scales.a_max(), A)) {
    std::ostringstream msg;
    msg << "scale lattice [" << scales.a_min() << ", " << scales.a_max() << "] does not span the window [" << eps
        << ", " << A << "]";
    throw std::invalid_argument(msg.str());
  }
  const double b0 = Scale(options.base_scale).value();
  const SampledField base = phi.sample_dilated(grid, Scale(b0), Normalization::L1, Sampling::point);
  const SampledField product = convolve(involute(base), base);

  std::vector<Complex> acc(grid.size());
  for (std::size_t j = 0; j < scales.count(); ++j) {
    const double a = scales.nodes()[j];
    Sampling mode = options.sampling;
    if (mode == Sampling::adaptive) mode = a >= resolution_scale(grid) ? Sampling::point : Sampling::cell_average;
    const SampledField term = dilate_field(Scale(a / b0), product, Normalization::L1,
                                           mode == Sampling::point ? Resampling::cubic : Resampling::cubic_cell_average);
    const double w = scales.log_weights()[j];
    const auto v = term.values();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * v[i];
  }
  k.field = SampledField(grid, std::move(acc));
  return k;
}

CalderonKernel calderon_kernel_closed_form(const SmoothingFunction& psi, const GridSpec& grid, double eps, double A,
                                           Sampling sampling) {
  require_window(eps, A);
  CalderonKernel out{eps, A, KernelSource::closed_form, sampling, SampledField::zeros(grid)};
  if (eps == A) return out;
  using namespace calderon_constants;
  out.field = (psi.sample_dilated(grid, Scale(k * eps), sampling) - psi.sample_dilated(grid, Scale(k * A), sampling)) *
            Complex(q * c);
  return out;
}

SampledField reconstruct(const SampledField& g, const CalderonKernel& kernel) { return convolve(g, kernel.field); }

KeyIdentityResidual key_identity_residual(const HeatKernelEvaluator& evaluator, const GridSpec& grid, double a,
                                          double da) {
  if (!(a > 0.0) || !(da > 0.0) || !(da < a)) throw std::invalid_argument("key identity needs 0 < da < a");
  // phi_{sqrt a} = a L h(., a) = -a d/ds h(., a)
  const SampledField phi = evaluator.sample(grid, a, {0.0, -a, 0.0});
  const SampledField reference = evaluator.sample(grid, 2.0 * a, {0.0, 0.0, a * a});
  // psi_{sqrt(2b)} = h(., 2b) - 2b d/ds h(., 2b)
  auto psi = [&](double b) { return evaluator.sample(grid, 2.0 * b, {1.0, -2.0 * b, 0.0}); };
  const SampledField slope = (psi(a + da) - psi(a - da)) * Complex(-calderon_constants::c * a / (2.0 * da));
  return {relative_l2_error(convolve(phi, phi), reference), relative_l2_error(slope, reference)};
}

}  // namespace heisenwave
