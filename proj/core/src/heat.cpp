#include "heisenwave/heat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace heisenwave {

namespace {

void require_time(double s) {
  if (!(s >= HeatKernelEvaluator::kMinTime) || !std::isfinite(s)) {
    std::ostringstream msg;
    msg << "heat kernel time must be >= " << HeatKernelEvaluator::kMinTime << ", got " << s;
    throw std::invalid_argument(msg.str());
  }
}

// Coefficients of exp(-beta r^2) (A0 + A1 r^2 + A2 r^4) for one frequency node.
struct NodePoly {
  double beta, a0, a1, a2;
};

NodePoly node_poly(double s, double c, double s2, double ch, const std::array<double, 3>& coeffs) {
  const double e = s2 / (4.0 * s);
  const double f = ch / (2.0 * s);
  const double inv_s = 1.0 / s;
  const double inv_s2 = inv_s * inv_s;
  NodePoly n{};
  n.beta = c / (4.0 * s);
  n.a0 = coeffs[0] - coeffs[1] * c * inv_s + coeffs[2] * (c * c + s2) * inv_s2;
  n.a1 = coeffs[1] * e * inv_s + coeffs[2] * (-2.0 * c * e - f) * inv_s2;
  n.a2 = coeffs[2] * e * e * inv_s2;
  return n;
}

std::array<double, 3> unit_coeffs(int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("heat time derivative order must be 0, 1 or 2");
  std::array<double, 3> c{0.0, 0.0, 0.0};
  c[static_cast<std::size_t>(order)] = 1.0;
  return c;
}

// Means of exp(-beta x^2) * {1, x^2, x^4} over [x - h/2, x + h/2].
struct GaussMoments {
  double m0, m2, m4;
};

GaussMoments gauss_cell_means(double beta, double x, double h) {
  const double a = x - 0.5 * h, b = x + 0.5 * h;
  const double rb = std::sqrt(beta);
  const double ea = std::exp(-beta * a * a), eb = std::exp(-beta * b * b);
  // I0 = int e^{-beta x^2}, I2 = int x^2 e^{-beta x^2}, I4 = int x^4 e^{-beta x^2}
  const double i0 = 0.5 * std::sqrt(std::numbers::pi) / rb * (std::erf(rb * b) - std::erf(rb * a));
  const double i2 = -(b * eb - a * ea) / (2.0 * beta) + i0 / (2.0 * beta);
  const double i4 = -(b * b * b * eb - a * a * a * ea) / (2.0 * beta) + 3.0 * i2 / (2.0 * beta);
  return {i0 / h, i2 / h, i4 / h};
}

}  // namespace

HeatKernelEvaluator::HeatKernelEvaluator(HeatQuadrature quad) : quad_(quad) {
  if (!(quad_.lambda_extent > 0.0)) throw std::invalid_argument("lambda_extent must be positive");
  if (quad_.lambda_nodes < 2) throw std::invalid_argument("lambda_nodes must be at least 2");
  const std::size_t n = quad_.lambda_nodes;
  const double step = quad_.lambda_extent / static_cast<double>(n - 1);
  // exp(-pi |t|/s) underflows well before 240; beyond 3/4 of the sampling rate aliasing sets in.
  oscillation_cutoff_ = std::min(240.0, 0.75 * 2.0 * std::numbers::pi / step);

  mu_.resize(n);
  weight_.resize(n);
  coth_term_.resize(n);
  sinh2_term_.resize(n);
  cosh_term_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double mu = step * static_cast<double>(k);
    const double w = (k == 0 || k == n - 1) ? 0.5 * step : step;
    mu_[k] = mu;
    if (k == 0) {
      weight_[k] = w;
      coth_term_[k] = sinh2_term_[k] = cosh_term_[k] = 1.0;
      continue;
    }
    const double sh = std::sinh(mu);
    const double ratio = mu / sh;
    weight_[k] = w * ratio;
    coth_term_[k] = mu * std::cosh(mu) / sh;
    sinh2_term_[k] = ratio * ratio;
    cosh_term_[k] = ratio * ratio * ratio * std::cosh(mu);
  }
}

double HeatKernelEvaluator::evaluate(const GroupPoint& w, double s, std::array<double, 3> coeffs) const {
  require_time(s);
  const double v = w.t / s;
  if (std::abs(v) > oscillation_cutoff_) return 0.0;
  const double r2 = w.p * w.p + w.q * w.q;
  const double r4 = r2 * r2;
  double sum = 0.0;
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    const NodePoly n = node_poly(s, coth_term_[k], sinh2_term_[k], cosh_term_[k], coeffs);
    const double gauss = std::exp(-n.beta * r2);
    if (gauss == 0.0) break;  // beta grows with mu, so later nodes vanish too
    sum += weight_[k] * std::cos(mu_[k] * v) * gauss * (n.a0 + n.a1 * r2 + n.a2 * r4);
  }
  return sum / (4.0 * std::numbers::pi * std::numbers::pi * s * s);
}

double HeatKernelEvaluator::heat_kernel(const GroupPoint& w, double s) const {
  return evaluate(w, s, unit_coeffs(0));
}

double HeatKernelEvaluator::heat_time_derivative(const GroupPoint& w, double s, int order) const {
  if (order != 1 && order != 2) throw std::invalid_argument("heat time derivative order must be 1 or 2");
  return evaluate(w, s, unit_coeffs(order));
}

double HeatKernelEvaluator::checked(const GroupPoint& w, double s, int order, double tolerance) const {
  const double coarse = evaluate(w, s, unit_coeffs(order));
  const HeatKernelEvaluator fine(HeatQuadrature{quad_.lambda_extent, 2 * quad_.lambda_nodes - 1});
  const double refined = fine.evaluate(w, s, unit_coeffs(order));
  if (std::abs(refined - coarse) > tolerance * std::max(1.0, std::abs(refined))) {
    std::ostringstream msg;
    msg << "heat kernel quadrature not converged at (" << w.p << ", " << w.q << ", " << w.t << "), s=" << s
        << ": " << coarse << " vs " << refined;
    throw QuadratureError(msg.str());
  }
  return refined;
}

SampledField HeatKernelEvaluator::sample(const GridSpec& grid, double s, std::array<double, 3> coeffs) const {
  require_time(s);
  const std::size_t np = grid.p().samples, nq = grid.q().samples, nt = grid.t().samples;
  std::vector<double> acc(grid.size(), 0.0);
  std::vector<double> tcos(nt), p0(np), p1(np), p2(np), q0(nq), q1(nq), q2(nq);

  for (std::size_t k = 0; k < mu_.size(); ++k) {
    const NodePoly n = node_poly(s, coth_term_[k], sinh2_term_[k], cosh_term_[k], coeffs);
    bool any_t = false;
    for (std::size_t it = 0; it < nt; ++it) {
      const double v = grid.t().coordinate(it) / s;
      tcos[it] = std::abs(v) > oscillation_cutoff_ ? 0.0 : std::cos(mu_[k] * v);
      any_t = any_t || tcos[it] != 0.0;
    }
    if (!any_t) continue;
    auto fill = [&](const AxisSpec& ax, std::vector<double>& e0, std::vector<double>& e1, std::vector<double>& e2) {
      bool any = false;
      for (std::size_t i = 0; i < e0.size(); ++i) {
        const double x2 = ax.coordinate(i) * ax.coordinate(i);
        e0[i] = std::exp(-n.beta * x2);
        e1[i] = x2 * e0[i];
        e2[i] = x2 * e1[i];
        any = any || e0[i] != 0.0;
      }
      return any;
    };
    if (!fill(grid.p(), p0, p1, p2) || !fill(grid.q(), q0, q1, q2)) continue;

    for (std::size_t ip = 0; ip < np; ++ip) {
      if (p0[ip] == 0.0) continue;
      for (std::size_t iq = 0; iq < nq; ++iq) {
        const double sep = n.a0 * p0[ip] * q0[iq] + n.a1 * (p1[ip] * q0[iq] + p0[ip] * q1[iq]) +
                           n.a2 * (p2[ip] * q0[iq] + 2.0 * p1[ip] * q1[iq] + p0[ip] * q2[iq]);
        if (sep == 0.0) continue;
        const double scale = weight_[k] * sep;
        double* line = &acc[grid.index(ip, iq, 0)];
        for (std::size_t it = 0; it < nt; ++it) line[it] += scale * tcos[it];
      }
    }
  }

  const double pref = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * s * s);
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < acc.size(); ++i) values[i] = pref * acc[i];
  return SampledField(grid, std::move(values));
}

SampledField HeatKernelEvaluator::sample_cell_average(const GridSpec& grid, double s,
                                                      std::array<double, 3> coeffs) const {
  require_time(s);
  const std::size_t np = grid.p().samples, nq = grid.q().samples, nt = grid.t().samples;
  const double dt = grid.t().spacing();
  const double tmax = oscillation_cutoff_ * s;
  std::vector<double> acc(grid.size(), 0.0);
  std::vector<double> tavg(nt), p0(np), p1(np), p2(np), q0(nq), q1(nq), q2(nq);

  for (std::size_t k = 0; k < mu_.size(); ++k) {
    const NodePoly n = node_poly(s, coth_term_[k], sinh2_term_[k], cosh_term_[k], coeffs);
    const double freq = mu_[k] / s;
    bool any_t = false;
    for (std::size_t it = 0; it < nt; ++it) {
      // mean of cos(freq t) over the part of the cell inside the aliasing-free band
      const double lo = std::max(grid.t().coordinate(it) - 0.5 * dt, -tmax);
      const double hi = std::min(grid.t().coordinate(it) + 0.5 * dt, tmax);
      if (hi <= lo) {
        tavg[it] = 0.0;
        continue;
      }
      tavg[it] = freq == 0.0 ? (hi - lo) / dt : (std::sin(freq * hi) - std::sin(freq * lo)) / (freq * dt);
      any_t = any_t || tavg[it] != 0.0;
    }
    if (!any_t) continue;
    auto fill = [&](const AxisSpec& ax, std::vector<double>& e0, std::vector<double>& e1, std::vector<double>& e2) {
      bool any = false;
      for (std::size_t i = 0; i < e0.size(); ++i) {
        const GaussMoments g = gauss_cell_means(n.beta, ax.coordinate(i), ax.spacing());
        e0[i] = g.m0;
        e1[i] = g.m2;
        e2[i] = g.m4;
        any = any || g.m0 != 0.0;
      }
      return any;
    };
    if (!fill(grid.p(), p0, p1, p2) || !fill(grid.q(), q0, q1, q2)) continue;

    for (std::size_t ip = 0; ip < np; ++ip) {
      for (std::size_t iq = 0; iq < nq; ++iq) {
        const double sep = n.a0 * p0[ip] * q0[iq] + n.a1 * (p1[ip] * q0[iq] + p0[ip] * q1[iq]) +
                           n.a2 * (p2[ip] * q0[iq] + 2.0 * p1[ip] * q1[iq] + p0[ip] * q2[iq]);
        if (sep == 0.0) continue;
        const double scale = weight_[k] * sep;
        double* line = &acc[grid.index(ip, iq, 0)];
        for (std::size_t it = 0; it < nt; ++it) line[it] += scale * tavg[it];
      }
    }
  }

  const double pref = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * s * s);
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < acc.size(); ++i) values[i] = pref * acc[i];
  return SampledField(grid, std::move(values));
}

SampledField HeatKernelEvaluator::sample_derivative(const GridSpec& grid, double s, int order) const {
  return sample(grid, s, unit_coeffs(order));
}

}  // namespace heisenwave
