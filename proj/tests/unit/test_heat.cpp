#include <doctest.h>

#include <cmath>
#include <numbers>

#include <heisenwave/heat.hpp>

using namespace heisenwave;

namespace {

// Integral over t of h(p, q, t, s) by a fine trapezoid; h decays like exp(-pi |t| / s).
double t_marginal(const HeatKernelEvaluator& ev, double p, double q, double s) {
  const double T = 30.0 * s;
  const int n = 6000;
  const double dt = 2.0 * T / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * ev.heat_kernel({p, q, -T + i * dt}, s);
  }
  return sum * dt;
}

}  // namespace

TEST_CASE("value at the identity") {
  const HeatKernelEvaluator ev;
  // 1/(4 pi^2) * int_0^inf mu / sinh(mu) dmu = 1/(4 pi^2) * pi^2 / 4
  CHECK(ev.heat_kernel({}, 1.0) == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
  CHECK(ev.heat_kernel({}, 0.25) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrating out t leaves the planar Gaussian heat kernel") {
  const HeatKernelEvaluator ev;
  for (auto [p, q, s] : {std::array<double, 3>{0.0, 0.0, 1.0}, {1.0, 0.5, 1.0}, {0.3, -0.8, 0.5}, {2.0, 1.0, 2.0}}) {
    const double planar = std::exp(-(p * p + q * q) / (4.0 * s)) / (4.0 * std::numbers::pi * s);
    CHECK(t_marginal(ev, p, q, s) == doctest::Approx(planar).epsilon(1e-8));
  }
}

TEST_CASE("time derivatives agree with finite differences in s") {
  const HeatKernelEvaluator ev;
  const GroupPoint w{0.7, -0.4, 0.9};
  const double s = 1.3, ds = 1e-4;
  const double d1 = (ev.heat_kernel(w, s + ds) - ev.heat_kernel(w, s - ds)) / (2.0 * ds);
  const double d2 = (ev.heat_kernel(w, s + ds) - 2.0 * ev.heat_kernel(w, s) + ev.heat_kernel(w, s - ds)) / (ds * ds);
  CHECK(ev.heat_time_derivative(w, s, 1) == doctest::Approx(d1).epsilon(1e-7));
  CHECK(ev.heat_time_derivative(w, s, 2) == doctest::Approx(d2).epsilon(1e-5));
  CHECK_THROWS_AS(ev.heat_time_derivative(w, s, 3), std::invalid_argument);
}

TEST_CASE("homogeneity, inversion symmetry and the quadrature check") {
  const HeatKernelEvaluator ev;
  const GroupPoint w{1.1, 0.2, -2.3};
  CHECK(16.0 * ev.heat_kernel(dilate_point(Scale(2.0), w), 4.0) ==
        doctest::Approx(ev.heat_kernel(w, 1.0)).epsilon(1e-12));
  CHECK(ev.heat_kernel(inverse(w), 0.8) == ev.heat_kernel(w, 0.8));
  CHECK(ev.checked(w, 1.0, 0) == doctest::Approx(ev.heat_kernel(w, 1.0)).epsilon(1e-12));
  const HeatKernelEvaluator coarse(HeatQuadrature{40.0, 16});
  CHECK_THROWS_AS(coarse.checked(w, 1.0, 0, 1e-12), QuadratureError);
}

TEST_CASE("invalid times and quadrature settings are rejected") {
  const HeatKernelEvaluator ev;
  CHECK_THROWS_AS(ev.heat_kernel({}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ev.heat_kernel({}, 1e-5), std::invalid_argument);
  CHECK_THROWS_AS(ev.heat_kernel({}, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(HeatKernelEvaluator(HeatQuadrature{0.0, 100}), std::invalid_argument);
  CHECK_THROWS_AS(HeatKernelEvaluator(HeatQuadrature{40.0, 1}), std::invalid_argument);
}

TEST_CASE("grid sampling matches pointwise evaluation") {
  const HeatKernelEvaluator ev;
  const GridSpec g = GridSpec::cube(3.0, 9);
  const SampledField f = ev.sample(g, 0.7, {0.5, -1.0, 2.0});
  for (std::size_t i = 0; i < 9; ++i) {
    const GroupPoint w = g.point(i, (2 * i) % 9, 8 - i);
    const double ref = 0.5 * ev.heat_kernel(w, 0.7) - ev.heat_time_derivative(w, 0.7, 1) +
                       2.0 * ev.heat_time_derivative(w, 0.7, 2);
    CHECK(f(i, (2 * i) % 9, 8 - i).real() == doctest::Approx(ref).epsilon(1e-11));
  }
  const SampledField d1 = ev.sample_derivative(g, 0.7, 1);
  CHECK(d1(4, 4, 4).real() == doctest::Approx(ev.heat_time_derivative({}, 0.7, 1)).epsilon(1e-12));
}

TEST_CASE("cell averages keep the mass of kernels narrower than a cell") {
  const HeatKernelEvaluator ev;
  const GridSpec g = GridSpec::cube(6.0, 33);
  const double narrow = 0.01;
  CHECK(integrate(ev.sample_cell_average(g, narrow, {1, 0, 0})).real() == doctest::Approx(1.0).epsilon(1e-6));
  // wide kernels: cell means converge to point values
  const SampledField pt = ev.sample(g, 2.0, {1, 0, 0});
  const SampledField avg = ev.sample_cell_average(g, 2.0, {1, 0, 0});
  CHECK(relative_l2_error(avg, pt) < 1e-2);
}
