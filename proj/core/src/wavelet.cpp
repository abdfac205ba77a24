#include "heisenwave/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace heisenwave {

namespace {

// s is the heat time; the matching dilation scale is sqrt(s).
SampledField sample_combination(const HeatKernelEvaluator& ev, const GridSpec& grid, double s,
                                std::array<double, 3> coeffs, Sampling mode) {
  if (mode == Sampling::adaptive)
    mode = std::sqrt(s) >= resolution_scale(grid) ? Sampling::point : Sampling::cell_average;
  return mode == Sampling::point ? ev.sample(grid, s, coeffs) : ev.sample_cell_average(grid, s, coeffs);
}

}  // namespace

double resolution_scale(const GridSpec& grid) noexcept {
  return std::max({grid.p().spacing(), grid.q().spacing(), std::sqrt(2.0 * grid.t().spacing())});
}

double MexicanHatWavelet::operator()(const GroupPoint& w) const {
  return -evaluator_->heat_time_derivative(w, 1.0, 1);
}

SampledField MexicanHatWavelet::sample(const GridSpec& grid, Sampling mode) const {
  return sample_combination(*evaluator_, grid, 1.0, {0.0, -1.0, 0.0}, mode);
}

SampledField MexicanHatWavelet::sample_dilated(const GridSpec& grid, Scale a, Normalization norm,
                                               Sampling mode) const {
  const double a2 = a.value() * a.value();
  const double c = norm == Normalization::L1 ? -a2 : -a2 * a2;
  return sample_combination(*evaluator_, grid, a2, {0.0, c, 0.0}, mode);
}

double SmoothingFunction::operator()(const GroupPoint& w) const {
  return evaluator_->heat_kernel(w, 1.0) - evaluator_->heat_time_derivative(w, 1.0, 1);
}

SampledField SmoothingFunction::sample(const GridSpec& grid, Sampling mode) const {
  return sample_combination(*evaluator_, grid, 1.0, {1.0, -1.0, 0.0}, mode);
}

SampledField SmoothingFunction::sample_dilated(const GridSpec& grid, Scale b, Sampling mode) const {
  const double b2 = b.value() * b.value();
  return sample_combination(*evaluator_, grid, b2, {1.0, -b2, 0.0}, mode);
}

double Monomial::operator()(const GroupPoint& w) const noexcept {
  return std::pow(w.p, i) * std::pow(w.q, j) * std::pow(w.t, k);
}

std::string Monomial::name() const {
  if (degree() == 0) return "1";
  std::ostringstream out;
  auto term = [&](const char* var, unsigned e) {
    if (e == 0) return;
    if (out.tellp() > 0) out << ' ';
    out << var;
    if (e > 1) out << '^' << e;
  };
  term("p", i);
  term("q", j);
  term("t", k);
  return out.str();
}

std::vector<Monomial> Monomial::up_to_degree(unsigned d) {
  std::vector<Monomial> out;
  for (unsigned deg = 0; deg <= d; ++deg)
    for (unsigned k = 0; 2 * k <= deg; ++k)
      for (unsigned i = deg - 2 * k + 1; i-- > 0;) out.push_back({i, deg - 2 * k - i, k});
  return out;
}

MomentResult moment(const SampledField& f, const Monomial& m) {
  const GridSpec& g = f.grid();
  std::vector<Complex> prod(g.size());
  double peak = 0.0, edge = 0.0;
  const std::size_t np = g.p().samples, nq = g.q().samples, nt = g.t().samples;
  for (std::size_t ip = 0; ip < np; ++ip)
    for (std::size_t iq = 0; iq < nq; ++iq)
      for (std::size_t it = 0; it < nt; ++it) {
        const std::size_t idx = g.index(ip, iq, it);
        prod[idx] = f.values()[idx] * m(g.point(ip, iq, it));
        const double mag = std::abs(prod[idx]);
        peak = std::max(peak, mag);
        if (ip == 0 || iq == 0 || it == 0 || ip + 1 == np || iq + 1 == nq || it + 1 == nt) edge = std::max(edge, mag);
      }
  MomentResult r;
  r.value = integrate(SampledField(g, std::move(prod)));
  r.boundary_ratio = peak > 0.0 ? edge / peak : 0.0;
  r.boundary_warning = r.boundary_ratio >= 1e-6;
  return r;
}

DecayProfile decay_profile(const MexicanHatWavelet& phi, std::span<const double> radii, double width,
                           std::size_t directions) {
  if (!(width > 0.0)) throw std::invalid_argument("shell width must be positive");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw std::invalid_argument("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw std::invalid_argument("radii must be increasing");
  }

  // Fibonacci points on the Euclidean sphere, pushed onto the unit sphere of the homogeneous norm.
  std::vector<GroupPoint> unit(directions);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < directions; ++k) {
    const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(directions);
    const double rho = std::sqrt(1.0 - z * z);
    const GroupPoint u{rho * std::cos(golden * k), rho * std::sin(golden * k), z};
    unit[k] = dilate_point(Scale(1.0 / homogeneous_norm(u)), u);
  }

  constexpr int kRadialSteps = 4;
  DecayProfile out;
  for (double r : radii) {
    double best = 0.0;
    for (int step = 0; step < kRadialSteps; ++step) {
      const Scale rr(r + width * step / kRadialSteps);
      for (const GroupPoint& u : unit) best = std::max(best, std::abs(phi(dilate_point(rr, u))));
    }
    out.shells.push_back({r, best});
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& s : out.shells) {
    if (s.max_abs <= 0.0) continue;
    const double x = s.radius * s.radius, y = std::log(s.max_abs);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double den = static_cast<double>(n) * sxx - sx * sx;
  out.slope = n >= 2 && den > 0.0 ? (static_cast<double>(n) * sxy - sx * sy) / den : 0.0;
  return out;
}

}  // namespace heisenwave
