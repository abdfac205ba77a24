#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <heisenwave/calderon.hpp>
#include <heisenwave/group.hpp>
#include <heisenwave/heat.hpp>
#include <heisenwave/parallel.hpp>
#include <heisenwave/wavelet.hpp>

namespace heisenwave::cli {

namespace {

using nlohmann::json;

// Grid for finite-difference and resampling checks; these need more nodes than the
// quadrature checks to reach their tolerances.
constexpr std::uint32_t kFineSamples = 97;

json grid_json(const GridSpec& g) {
  json axes = json::array();
  for (Axis a : {Axis::p, Axis::q, Axis::t})
    axes.push_back({{"samples", g.axis(a).samples}, {"half_extent", g.axis(a).half_extent}});
  return axes;
}

GridSpec convolution_grid(const SuiteConfig& c) {
  const std::uint32_t n = std::max<std::uint32_t>(9, (3 * c.grid / 4) | 1u);
  return GridSpec::lattice(c.extent, n);
}

GridSpec fine_grid(const SuiteConfig& c) { return GridSpec::cube(c.extent, std::max(c.grid, kFineSamples) | 1u); }

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}
  void add(std::string id, std::string anchor, double residual, double tolerance) {
    const bool pass = std::isfinite(residual) && residual <= tolerance;
    r_.checks.push_back({std::move(id), std::move(anchor), residual, tolerance, pass});
  }

 private:
  SuiteResult& r_;
};

// |a - b| in units of the rounding step at magnitude `scale`.
double ulps(double a, double b, double scale) {
  return std::abs(a - b) / (std::numeric_limits<double>::epsilon() * std::max(1.0, scale));
}

double max_ulps(const GroupPoint& a, const GroupPoint& b, double scale) {
  return std::max({ulps(a.p, b.p, scale), ulps(a.q, b.q, scale), ulps(a.t, b.t, scale)});
}

double magnitude(std::initializer_list<GroupPoint> pts) {
  double m = 0.0, prod = 0.0;
  for (const auto& x : pts) m = std::max({m, std::abs(x.p), std::abs(x.q), std::abs(x.t)});
  for (const auto& x : pts)
    for (const auto& y : pts) prod = std::max(prod, std::abs(x.p * y.q));
  return std::max(m, prod);
}

void group_suite(Recorder& rec, SuiteResult& r) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-10.0, 10.0), s(0.1, 10.0);
  auto point = [&] { return GroupPoint{u(rng), u(rng), u(rng)}; };
  constexpr int kSamples = 10000;
  double assoc = 0, inv = 0, autom = 0, compose = 0, bracket_err = 0, norm_hom = 0, norm_inv = 0;
  for (int i = 0; i < kSamples; ++i) {
    const GroupPoint x = point(), y = point(), z = point();
    const Scale a(s(rng)), b(s(rng));
    const double m = magnitude({x, y, z});
    assoc = std::max(assoc, max_ulps((x * y) * z, x * (y * z), m));
    const GroupPoint e = x * inverse(x), e2 = inverse(x) * x;
    inv = std::max({inv, std::abs(e.p) + std::abs(e.q) + std::abs(e.t), std::abs(e2.p) + std::abs(e2.q) + std::abs(e2.t)});
    const double ma = magnitude({dilate_point(a, x), dilate_point(a, y)});
    autom = std::max(autom, max_ulps(dilate_point(a, x * y), dilate_point(a, x) * dilate_point(a, y), ma));
    compose = std::max(compose, max_ulps(dilate_point(a, dilate_point(b, x)), dilate_point(Scale(a.value() * b.value()), x),
                                         magnitude({dilate_point(Scale(a.value() * b.value()), x)})));
    const GroupPoint xh{x.p, x.q, 0.0}, yh{y.p, y.q, 0.0};
    const GroupPoint d1 = xh * yh, d2 = yh * xh;
    bracket_err = std::max(bracket_err, ulps(d1.t - d2.t, bracket(xh, yh), magnitude({xh, yh})));
    const double n = homogeneous_norm(x);
    norm_hom = std::max(norm_hom, std::abs(homogeneous_norm(dilate_point(a, x)) - a.value() * n) / (a.value() * n));
    norm_inv = std::max(norm_inv, std::abs(homogeneous_norm(inverse(x)) - n));
  }
  rec.add("group.associativity", "(xy)z = x(yz), ulps", assoc, 8.0);
  rec.add("group.inverse", "x x^-1 = x^-1 x = e", inv, 0.0);
  rec.add("group.dilation_automorphism", "d_a(xy) = d_a(x) d_a(y), ulps", autom, 8.0);
  rec.add("group.dilation_composition", "d_a d_b = d_ab, ulps", compose, 8.0);
  rec.add("group.bracket", "xy - yx = (0, 0, p1 q2 - q1 p2), ulps", bracket_err, 8.0);
  rec.add("group.norm_homogeneity", "N(d_a x) = a N(x), relative", norm_hom, 1e-14);
  rec.add("group.norm_inversion", "N(x^-1) = N(x)", norm_inv, 0.0);
  r.environment = {{"samples", kSamples}, {"seed", 20240601}};
}

void heat_suite(Recorder& rec, SuiteResult& r, const SuiteConfig& c) {
  const HeatKernelEvaluator ev;
  const GridSpec cube = GridSpec::cube(c.extent, c.grid);
  const GridSpec lat = convolution_grid(c);
  const GridSpec fine = fine_grid(c);

  const SampledField h1 = ev.sample(cube, 1.0, {1, 0, 0});
  rec.add("heat.normalization", "int h(., 1) = 1", std::abs(integrate(h1).real() - 1.0), 2e-3);
  rec.add("heat.inversion_symmetry", "h(w, 1) = h(w^-1, 1)", max_abs_difference(involute(h1), h1), 0.0);
  double min_h = 0.0;
  for (const Complex& v : h1.values()) min_h = std::min(min_h, v.real());
  rec.add("heat.positivity", "h(., 1) >= 0 up to quadrature noise", -min_h, 1e-12);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-3.0, 3.0), time(0.25, 4.0);
  double hom = 0.0, conv = 0.0;
  const HeatKernelEvaluator doubled(HeatQuadrature{ev.quadrature().lambda_extent, 2 * ev.quadrature().lambda_nodes - 1});
  for (int i = 0; i < 100; ++i) {
    const GroupPoint w{coord(rng), coord(rng), coord(rng)};
    const double s = time(rng);
    const double v = ev.heat_kernel(w, s);
    if (v != 0.0) hom = std::max(hom, std::abs(16.0 * ev.heat_kernel(dilate_point(Scale(2.0), w), 4.0 * s) - v) / std::abs(v));
    conv = std::max(conv, std::abs(doubled.heat_kernel(w, s) - v) / std::max(1.0, std::abs(v)));
  }
  rec.add("heat.homogeneity", "2^4 h(d_2 w, 4s) = h(w, s), relative", hom, 1e-9);
  rec.add("heat.quadrature_convergence", "doubling frequency nodes", conv, 1e-9);

  for (auto [s, t] : {std::pair{0.5, 0.5}, std::pair{0.5, 1.0}, std::pair{1.0, 1.0}}) {
    const SampledField lhs = convolve(ev.sample(lat, s, {1, 0, 0}), ev.sample(lat, t, {1, 0, 0}));
    rec.add("heat.semigroup_" + std::to_string(s).substr(0, 3) + "_" + std::to_string(t).substr(0, 3),
            "h(., s) * h(., t) = h(., s + t)", relative_l2_error(lhs, ev.sample(lat, s + t, {1, 0, 0})), 1e-2);
  }

  const SampledField fh = ev.sample(fine, 1.0, {1, 0, 0});
  rec.add("heat.equation", "L h = -d/ds h at s = 1", relative_l2_error(sub_laplacian(fh), ev.sample(fine, 1.0, {0, -1, 0})), 1e-2);
  for (double a : {0.5, 2.0}) {
    const SampledField d = dilate_field(Scale(a), fh, Normalization::L1, Resampling::cubic);
    rec.add("heat.dilation_" + std::to_string(a).substr(0, 3), "h(., 1)_a = h(., a^2)",
            relative_l2_error(d, ev.sample(fine, a * a, {1, 0, 0})), 1e-3);
  }
  r.environment = {{"grid", grid_json(cube)},
                   {"convolution_grid", grid_json(lat)},
                   {"fine_grid", grid_json(fine)},
                   {"lambda_extent", ev.quadrature().lambda_extent},
                   {"lambda_nodes", ev.quadrature().lambda_nodes}};
}

void wavelet_suite(Recorder& rec, SuiteResult& r, const SuiteConfig& c) {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const SmoothingFunction psi(ev);
  const GridSpec cube = GridSpec::cube(c.extent, c.grid);
  const GridSpec fine = fine_grid(c);

  const SampledField f = phi.sample(cube);
  rec.add("wavelet.integral", "int phi = 0", std::abs(moment(f, {0, 0, 0}).value), 2e-3);
  rec.add("wavelet.moment_p", "int phi p = 0", std::abs(moment(f, {1, 0, 0}).value), 2e-3);
  rec.add("wavelet.moment_q", "int phi q = 0", std::abs(moment(f, {0, 1, 0}).value), 2e-3);
  rec.add("wavelet.involution", "phi~ = phi", max_abs_difference(involute(f), f), 1e-10);
  rec.add("wavelet.psi_integral", "int psi = 1", std::abs(integrate(psi.sample(cube)).real() - 1.0), 4e-3);
  rec.add("wavelet.psi_decomposition", "psi - h(., 1) = phi",
          max_abs_difference(psi.sample(cube) - ev.sample(cube, 1.0, {1, 0, 0}), f), 1e-15);

  const std::vector<double> radii{1.0, 1.5, 2.0, 2.5, 3.0};
  const DecayProfile decay = decay_profile(phi, radii);
  rec.add("wavelet.decay_slope", "log max|phi| vs N^2 slope <= -0.1", decay.slope, -0.1);

  const SampledField ff = phi.sample(fine);
  rec.add("wavelet.heat_equation", "L h(., 1) = phi", relative_l2_error(sub_laplacian(ev.sample(fine, 1.0, {1, 0, 0})), ff), 1e-2);
  for (double a : {0.5, 2.0})
    rec.add("wavelet.dilation_" + std::to_string(a).substr(0, 3), "phi_a = a^2 L h(., a^2)",
            relative_l2_error(dilate_field(Scale(a), ff, Normalization::L1, Resampling::cubic),
                              phi.sample_dilated(fine, Scale(a), Normalization::L1)),
            1e-3);
  json shells = json::array();
  for (const auto& s : decay.shells) shells.push_back({s.radius, s.max_abs});
  r.environment = {{"grid", grid_json(cube)}, {"fine_grid", grid_json(fine)}, {"decay_shells", shells}};
}

SampledField gaussian(const GridSpec& g) {
  return SampledField::sample(g, [](const GroupPoint& w) { return std::exp(-0.5 * (w.p * w.p + w.q * w.q + w.t * w.t)); });
}

double relative_norm_error(const SampledField& approx, const SampledField& ref) { return norm_l2(approx - ref) / norm_l2(ref); }

void calderon_suite(Recorder& rec, SuiteResult& r, const SuiteConfig& c) {
  namespace cc = calderon_constants;
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const SmoothingFunction psi(ev);
  const GridSpec lat = convolution_grid(c);
  if (!(c.eps > 0.0 && c.A > c.eps)) throw std::invalid_argument("calderon suite needs 0 < eps < A");

  for (double a : {0.5, 1.0, 2.0}) {
    const KeyIdentityResidual k = key_identity_residual(ev, lat, a);
    const std::string tag = std::to_string(a).substr(0, 3);
    rec.add("calderon.key_identity_r1_" + tag, "phi_sqrt(a) * phi_sqrt(a) = a^2 L^2 h(., 2a)", k.r1, 2e-2);
    rec.add("calderon.key_identity_r2_" + tag, "a^2 L^2 h(., 2a) = -c a d/da psi_sqrt(2a)", k.r2, 2e-2);
  }

  for (double a : {0.5, 1.0}) {
    const SampledField lh = ev.sample(lat, a, {0, -1, 0});
    rec.add("calderon.semigroup_derivative_" + std::to_string(a).substr(0, 3), "Lh(., a) * Lh(., a) = L^2 h(., 2a)",
            relative_l2_error(convolve(lh, lh), ev.sample(lat, 2 * a, {0, 0, 1})), 2e-2);
  }

  const ScaleLattice window(c.eps, c.A, c.scales);
  const CalderonKernel kn = calderon_kernel_numeric(phi, lat, c.eps, c.A, window);
  const CalderonKernel kc = calderon_kernel_closed_form(psi, lat, c.eps, c.A);
  rec.add("calderon.kernel_agreement", "numeric K = q c (psi_k eps - psi_k A)", relative_l2_error(kn.field, kc.field), 2e-2);

  {
    const std::size_t split = c.scales / 2;
    const double m = window.nodes()[split];
    const CalderonKernel left = calderon_kernel_numeric(phi, lat, c.eps, m, ScaleLattice(c.eps, m, split + 1));
    const CalderonKernel right = calderon_kernel_numeric(phi, lat, m, c.A, ScaleLattice(m, c.A, c.scales - split));
    rec.add("calderon.window_additivity", "K_eps,m + K_m,A = K_eps,A", relative_norm_error(left.field + right.field, kn.field), 1e-12);
  }

  const SampledField g = gaussian(lat);
  const double inv_c = 1.0 / cc::admissibility;
  const double err = relative_norm_error(reconstruct(g, kn) * Complex(inv_c), g);
  rec.add("calderon.reconstruction", "g * K / (q c) = g", err, 5e-2);

  const double eps2 = c.eps / 2, A2 = 2 * c.A;
  const ScaleLattice wide(eps2, A2, c.scales);
  const CalderonKernel kw = calderon_kernel_numeric(phi, lat, eps2, A2, wide);
  const SampledField gk = reconstruct(g, kw);
  rec.add("calderon.reconstruction_monotone", "widening the window does not increase the error",
          relative_norm_error(gk * Complex(inv_c), g) - err, 0.0);

  const double gg = std::pow(norm_l2(g), 2);
  const double energy = cwt_energy(cwt(g, phi, wide, Sampling::adaptive));
  rec.add("calderon.energy_ratio", "energy(Vg) / |g|^2 = q c, relative", std::abs(energy / gg / cc::admissibility - 1.0), 0.1);
  rec.add("calderon.parseval", "energy(Vg) = <g, g * K>, relative", std::abs(energy - inner_product(g, gk).real()) / energy, 2e-2);

  r.environment = {{"convolution_grid", grid_json(lat)},
                   {"window", {c.eps, c.A}},
                   {"wide_window", {eps2, A2}},
                   {"scales", c.scales},
                   {"admissibility", cc::admissibility},
                   {"energy_ratio", energy / gg}};
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& config) {
  SuiteResult r;
  r.suite = name;
  Recorder rec(r);
  const auto start = std::chrono::steady_clock::now();
  if (name == "group") {
    group_suite(rec, r);
  } else if (name == "heat") {
    heat_suite(rec, r, config);
  } else if (name == "wavelet") {
    wavelet_suite(rec, r, config);
  } else if (name == "calderon") {
    calderon_suite(rec, r, config);
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  r.environment["threads"] = thread_count();
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json report_json(const std::vector<SuiteResult>& results) {
  json suites = json::array();
  bool all = true;
  for (const auto& r : results) {
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"id", c.id}, {"anchor", c.anchor}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    suites.push_back({{"suite", r.suite}, {"checks", checks}, {"environment", r.environment}, {"wall_time_s", r.wall_time}, {"pass", r.passed()}});
    all = all && r.passed();
  }
  return {{"schema", "hwreport/1"}, {"pass", all}, {"suites", suites}};
}

}  // namespace heisenwave::cli
