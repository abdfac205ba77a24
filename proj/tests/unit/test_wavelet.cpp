#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <heisenwave/wavelet.hpp>

using namespace heisenwave;

TEST_CASE("phi is minus the time derivative of the heat kernel at time 1") {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  CHECK(phi({}) == doctest::Approx(0.125).epsilon(1e-12));
  const GroupPoint w{0.4, 1.2, -0.7};
  CHECK(phi(w) == doctest::Approx(-ev.heat_time_derivative(w, 1.0, 1)).epsilon(1e-14));
  CHECK(&phi.evaluator() == &ev);
}

TEST_CASE("psi = h - dh/ds at time 1 and integrates to one") {
  const HeatKernelEvaluator ev;
  const SmoothingFunction psi(ev);
  const MexicanHatWavelet phi(ev);
  const GroupPoint w{-0.3, 0.8, 1.5};
  CHECK(psi(w) == doctest::Approx(ev.heat_kernel(w, 1.0) + phi(w)).epsilon(1e-14));
  const GridSpec g = GridSpec::cube(6.0, 33);
  CHECK(integrate(psi.sample(g)).real() == doctest::Approx(1.0).epsilon(4e-3));
  CHECK(integrate(psi.sample_dilated(g, Scale(0.5), Sampling::cell_average)).real() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("dilated samples follow the normalization conventions") {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const GridSpec g = GridSpec::cube(6.0, 9);
  const double a = 1.7;
  const SampledField l1 = phi.sample_dilated(g, Scale(a), Normalization::L1);
  const SampledField l2 = phi.sample_dilated(g, Scale(a), Normalization::L2);
  for (std::size_t i = 0; i < 9; ++i) {
    const GroupPoint w = g.point(i, 8 - i, (i + 3) % 9);
    const double base = phi(dilate_point(Scale(1.0 / a), w));
    CHECK(l1(i, 8 - i, (i + 3) % 9).real() == doctest::Approx(base / std::pow(a, 4)).epsilon(1e-10));
    CHECK(l2(i, 8 - i, (i + 3) % 9).real() == doctest::Approx(base / (a * a)).epsilon(1e-10));
  }
}

TEST_CASE("adaptive sampling switches at the grid resolution") {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const GridSpec g = GridSpec::lattice(6.0, 25);
  const double r = resolution_scale(g);
  CHECK(r == doctest::Approx(0.5));
  const SampledField coarse = phi.sample_dilated(g, Scale(2.0 * r), Normalization::L1, Sampling::adaptive);
  const SampledField coarse_pt = phi.sample_dilated(g, Scale(2.0 * r), Normalization::L1, Sampling::point);
  CHECK(max_abs_difference(coarse, coarse_pt) == 0.0);
  const SampledField fine = phi.sample_dilated(g, Scale(0.2 * r), Normalization::L1, Sampling::adaptive);
  const SampledField fine_avg = phi.sample_dilated(g, Scale(0.2 * r), Normalization::L1, Sampling::cell_average);
  CHECK(max_abs_difference(fine, fine_avg) == 0.0);
}

TEST_CASE("monomials") {
  const auto low = Monomial::up_to_degree(1);
  CHECK(low.size() == 3);
  const auto two = Monomial::up_to_degree(2);
  CHECK(two.size() == 7);  // 1, p, q, p^2, pq, q^2, t
  const Monomial t{0, 0, 1};
  CHECK(t.degree() == 2);
  CHECK(t({1.0, 2.0, 3.0}) == 3.0);
  CHECK(Monomial{2, 1, 0}({2.0, 3.0, 0.0}) == 12.0);
  CHECK_FALSE(Monomial{1, 0, 0}.name().empty());
}

TEST_CASE("moments of a Gaussian") {
  const GridSpec g = GridSpec::cube(6.0, 41);
  const SampledField f = SampledField::sample(g, [](const GroupPoint& w) {
    return std::exp(-0.5 * (w.p * w.p + w.q * w.q + w.t * w.t));
  });
  const double mass = std::pow(2.0 * std::numbers::pi, 1.5);
  CHECK(moment(f, {0, 0, 0}).value.real() == doctest::Approx(mass).epsilon(1e-7));
  CHECK(std::abs(moment(f, {1, 0, 0}).value) < 1e-12);
  CHECK(moment(f, {2, 0, 0}).value.real() == doctest::Approx(mass).epsilon(1e-6));
  CHECK_FALSE(moment(f, {0, 0, 0}).boundary_warning);

  const SampledField wide = SampledField::sample(g, [](const GroupPoint& w) { return std::exp(-0.01 * w.t * w.t); });
  CHECK(moment(wide, {0, 0, 0}).boundary_warning);
}

TEST_CASE("phi has vanishing low moments and decays") {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const SampledField f = phi.sample(GridSpec::cube(6.0, 33));
  for (const Monomial& m : Monomial::up_to_degree(1)) CHECK(std::abs(moment(f, m).value) < 2e-3);
  const std::vector<double> radii{1.0, 1.5, 2.0, 2.5, 3.0};
  const DecayProfile d = decay_profile(phi, radii);
  CHECK(d.shells.size() == radii.size());
  CHECK(d.slope < 0.0);
  CHECK(d.shells.front().max_abs > d.shells.back().max_abs);
}
