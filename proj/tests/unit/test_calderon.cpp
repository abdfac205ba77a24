#include <doctest.h>

#include <cmath>
#include <numeric>

#include <heisenwave/calderon.hpp>

using namespace heisenwave;

TEST_CASE("scale lattice is geometric with log-trapezoid weights") {
  const ScaleLattice s(0.1, 4.0, 32);
  CHECK(s.count() == 32);
  CHECK(s.nodes().front() == 0.1);
  CHECK(s.nodes().back() == 4.0);
  for (std::size_t j = 1; j < s.count(); ++j) CHECK(s.nodes()[j] / s.nodes()[j - 1] == doctest::Approx(s.ratio()));
  const double total = std::accumulate(s.log_weights().begin(), s.log_weights().end(), 0.0);
  CHECK(total == doctest::Approx(std::log(40.0)).epsilon(1e-14));
  CHECK(s.log_weights().front() == doctest::Approx(0.5 * std::log(s.ratio())));

  CHECK_THROWS_AS(ScaleLattice(0.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(ScaleLattice(2.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(ScaleLattice(0.1, 1.0, 1), std::invalid_argument);
}

TEST_CASE("constants") {
  CHECK(calderon_constants::admissibility == 0.125);
  CHECK(calderon_constants::k * calderon_constants::k == doctest::Approx(2.0));
}

TEST_CASE("closed-form kernel is the scaled difference of two smoothing functions") {
  const HeatKernelEvaluator ev;
  const SmoothingFunction psi(ev);
  const GridSpec g = GridSpec::lattice(6.0, 13);
  const CalderonKernel k = calderon_kernel_closed_form(psi, g, 0.5, 2.0, Sampling::point);
  CHECK(k.source == KernelSource::closed_form);
  const SampledField ref = (psi.sample_dilated(g, Scale(std::sqrt(2.0) * 0.5)) -
                            psi.sample_dilated(g, Scale(std::sqrt(2.0) * 2.0))) *
                           0.125;
  CHECK(max_abs_difference(k.field, ref) < 1e-15);
  CHECK_THROWS_AS(calderon_kernel_closed_form(psi, g, 2.0, 0.5), std::invalid_argument);
}

TEST_CASE("degenerate window gives the zero kernel; lattice must span the window") {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const GridSpec g = GridSpec::lattice(6.0, 13);
  const CalderonKernel k = calderon_kernel_numeric(phi, g, 1.0, 1.0, ScaleLattice(0.5, 2.0, 4));
  CHECK(norm_l2(k.field) == 0.0);
  CHECK_THROWS_AS(calderon_kernel_numeric(phi, g, 0.5, 2.0, ScaleLattice(0.5, 1.0, 4)), std::invalid_argument);
  CHECK_THROWS_AS(calderon_kernel_numeric(phi, g, -1.0, 2.0, ScaleLattice(0.5, 2.0, 4)), std::invalid_argument);
}

TEST_CASE("numeric kernel is additive over adjacent windows") {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const GridSpec g = GridSpec::lattice(6.0, 13);
  const ScaleLattice whole(0.2, 3.2, 9);
  const double m = whole.nodes()[4];
  const SampledField left = calderon_kernel_numeric(phi, g, 0.2, m, ScaleLattice(0.2, m, 5)).field;
  const SampledField right = calderon_kernel_numeric(phi, g, m, 3.2, ScaleLattice(m, 3.2, 5)).field;
  const SampledField all = calderon_kernel_numeric(phi, g, 0.2, 3.2, whole).field;
  CHECK(norm_l2(left + right - all) <= 1e-12 * norm_l2(all));
}

TEST_CASE("transform of the zero field is zero") {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const GridSpec g = GridSpec::lattice(6.0, 13);
  const WaveletCoefficients c = cwt(SampledField::zeros(g), phi, ScaleLattice(0.5, 2.0, 3));
  CHECK(c.slabs.size() == 3);
  CHECK(cwt_energy(c) == 0.0);
  for (const auto& s : c.slabs) CHECK(norm_l2(s) == 0.0);
}

TEST_CASE("transform with a sampled mother agrees with the analytic wavelet at resolved scales") {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const GridSpec g = GridSpec::lattice(6.0, 25);
  const SampledField f = SampledField::sample(g, [](const GroupPoint& w) {
    return std::exp(-0.5 * (w.p * w.p + w.q * w.q + w.t * w.t));
  });
  const ScaleLattice s(0.9, 1.1, 2);
  const WaveletCoefficients analytic = cwt(f, phi, s, Sampling::point);
  const WaveletCoefficients sampled = cwt(f, phi.sample(g), s);
  for (std::size_t j = 0; j < s.count(); ++j) CHECK(relative_l2_error(sampled.slabs[j], analytic.slabs[j]) < 5e-2);
}

TEST_CASE("reconstruction requires matching grids") {
  const HeatKernelEvaluator ev;
  const SmoothingFunction psi(ev);
  const CalderonKernel k = calderon_kernel_closed_form(psi, GridSpec::lattice(6.0, 13), 0.5, 2.0);
  CHECK_THROWS_AS(reconstruct(SampledField::zeros(GridSpec::lattice(6.0, 15)), k), GridMismatch);
}
