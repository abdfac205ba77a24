#include "heisenwave/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "heisenwave/parallel.hpp"

namespace heisenwave {

namespace {

struct Tap {
  long index;
  double weight;
};

// Linear-interpolation taps for fractional index u on [0, n-1] with zero extension.
// Snaps u onto a node when it is within rounding of one, so node lookups stay exact.
int linear_taps(double u, long n, Tap (&taps)[2]) {
  const double r = std::round(u);
  if (std::abs(u - r) < 1e-9) u = r;
  const double fl = std::floor(u);
  const long i0 = static_cast<long>(fl);
  const double frac = u - fl;
  int count = 0;
  if (i0 >= 0 && i0 < n && frac < 1.0) taps[count++] = {i0, 1.0 - frac};
  if (frac > 0.0 && i0 + 1 >= 0 && i0 + 1 < n) taps[count++] = {i0 + 1, frac};
  return count;
}

std::size_t stride(const GridSpec& g, Axis axis) {
  switch (axis) {
    case Axis::p: return static_cast<std::size_t>(g.q().samples) * g.t().samples;
    case Axis::q: return g.t().samples;
    case Axis::t: return 1;
  }
  return 1;
}

std::size_t axis_index(const GridSpec& g, std::size_t flat, Axis axis) {
  const std::size_t nt = g.t().samples;
  const std::size_t nq = g.q().samples;
  switch (axis) {
    case Axis::p: return flat / (nq * nt);
    case Axis::q: return (flat / nt) % nq;
    case Axis::t: return flat % nt;
  }
  return 0;
}

// d/dx or d2/dx2 along one axis; second-order accurate everywhere.
SampledField difference(const SampledField& f, Axis axis, int order) {
  const GridSpec& g = f.grid();
  const auto& ax = g.axis(axis);
  const std::size_t n = ax.samples;
  const std::size_t s = stride(g, axis);
  const double h = ax.spacing();
  const auto v = f.values();
  std::vector<Complex> out(v.size());

  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::size_t i = axis_index(g, k, axis);
    auto at = [&](long offset) { return v[static_cast<std::size_t>(static_cast<long>(k) + offset * static_cast<long>(s))]; };
    if (order == 1) {
      if (i == 0) {
        out[k] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
      } else if (i == n - 1) {
        out[k] = (3.0 * at(0) - 4.0 * at(-1) + at(-2)) / (2.0 * h);
      } else {
        out[k] = (at(1) - at(-1)) / (2.0 * h);
      }
    } else {
      // One-sided four-point stencils need n >= 4; fall back to the three-point one otherwise.
      if (i == 0) {
        out[k] = n >= 4 ? (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / (h * h)
                        : (at(0) - 2.0 * at(1) + at(2)) / (h * h);
      } else if (i == n - 1) {
        out[k] = n >= 4 ? (2.0 * at(0) - 5.0 * at(-1) + 4.0 * at(-2) - at(-3)) / (h * h)
                        : (at(0) - 2.0 * at(-1) + at(-2)) / (h * h);
      } else {
        out[k] = (at(1) - 2.0 * at(0) + at(-1)) / (h * h);
      }
    }
  }
  return SampledField(g, std::move(out));
}

template <class T>
T to_value(const Complex& z);
template <>
double to_value<double>(const Complex& z) { return z.real(); }
template <>
Complex to_value<Complex>(const Complex& z) { return z; }

// Direct group-convolution quadrature. For grid nodes v and w the p and q coordinates
// of v^-1 w fall on (half-)nodes, so interpolation is only needed along t, where the
// shift -(p'q - q'p)/2 is constant for a whole t-line.
template <class T>
std::vector<Complex> convolve_kernel(const SampledField& f, const SampledField& g) {
  const GridSpec& grid = f.grid();
  const long np = grid.p().samples, nq = grid.q().samples, nt = grid.t().samples;
  const double dt = grid.t().spacing();
  const double ct = grid.t().center();

  std::vector<T> fv(f.size()), gv(g.size());
  // trapezoidal weights are folded into the integration variable v
  auto edge = [](long i, long n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; };
  for (long jp = 0; jp < np; ++jp)
    for (long jq = 0; jq < nq; ++jq)
      for (long jt = 0; jt < nt; ++jt) {
        const auto k = static_cast<std::size_t>((jp * nq + jq) * nt + jt);
        fv[k] = edge(jp, np) * edge(jq, nq) * edge(jt, nt) * to_value<T>(f.values()[k]);
        gv[k] = to_value<T>(g.values()[k]);
      }
  std::vector<char> f_line_nonzero(static_cast<std::size_t>(np * nq), 0);
  for (long j = 0; j < np * nq; ++j)
    for (long it = 0; it < nt; ++it)
      if (fv[static_cast<std::size_t>(j * nt + it)] != T(0)) {
        f_line_nonzero[static_cast<std::size_t>(j)] = 1;
        break;
      }

  std::vector<Complex> out(grid.size());
  const double cell = grid.cell_volume();

#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (long out_line = 0; out_line < np * nq; ++out_line) {
    const long ip = out_line / nq, iq = out_line % nq;
    const double p = grid.p().coordinate(static_cast<std::size_t>(ip));
    const double q = grid.q().coordinate(static_cast<std::size_t>(iq));
    std::vector<T> acc(static_cast<std::size_t>(nt), T(0));
    std::vector<T> gline(static_cast<std::size_t>(nt));
    std::vector<T> blend(static_cast<std::size_t>(nt + 1));

    for (long jp = 0; jp < np; ++jp) {
      Tap ptaps[2];
      const int npt = linear_taps(static_cast<double>(ip - jp) + grid.p().center(), np, ptaps);
      if (npt == 0) continue;
      const double pp = grid.p().coordinate(static_cast<std::size_t>(jp));
      for (long jq = 0; jq < nq; ++jq) {
        if (!f_line_nonzero[static_cast<std::size_t>(jp * nq + jq)]) continue;
        Tap qtaps[2];
        const int nqt = linear_taps(static_cast<double>(iq - jq) + grid.q().center(), nq, qtaps);
        if (nqt == 0) continue;
        const double qq = grid.q().coordinate(static_cast<std::size_t>(jq));

        // fractional t-index of v^-1 w is (it - jt) + sigma
        double sigma = ct - 0.5 * (pp * q - qq * p) / dt;
        const double r = std::round(sigma);
        if (std::abs(sigma - r) < 1e-9) sigma = r;
        const long k0 = static_cast<long>(std::floor(sigma));
        const double alpha = sigma - static_cast<double>(k0);
        if (k0 < -nt || k0 > 2 * nt - 2) continue;

        std::fill(gline.begin(), gline.end(), T(0));
        for (int a = 0; a < npt; ++a)
          for (int b = 0; b < nqt; ++b) {
            const double w = ptaps[a].weight * qtaps[b].weight;
            const T* src = &gv[static_cast<std::size_t>((ptaps[a].index * nq + qtaps[b].index) * nt)];
            for (long it = 0; it < nt; ++it) gline[static_cast<std::size_t>(it)] += w * src[it];
          }
        // blend[n + 1] = g at t-index n + alpha, n in [-1, nt-1]
        for (long n = -1; n < nt; ++n) {
          T v = T(0);
          if (n >= 0) v += (1.0 - alpha) * gline[static_cast<std::size_t>(n)];
          if (n + 1 < nt) v += alpha * gline[static_cast<std::size_t>(n + 1)];
          blend[static_cast<std::size_t>(n + 1)] = v;
        }

        const T* fl = &fv[static_cast<std::size_t>((jp * nq + jq) * nt)];
        for (long it = 0; it < nt; ++it) {
          const long lo = std::max(0L, it + k0 + 1 - nt);
          const long hi = std::min(nt - 1, it + k0 + 1);
          T sum = T(0);
          for (long jt = lo; jt <= hi; ++jt) sum += fl[jt] * blend[static_cast<std::size_t>(it - jt + k0 + 1)];
          acc[static_cast<std::size_t>(it)] += sum;
        }
      }
    }
    for (long it = 0; it < nt; ++it)
      out[static_cast<std::size_t>(out_line * nt + it)] = Complex(acc[static_cast<std::size_t>(it)]) * cell;
  }
  return out;
}

// Catmull-Rom weight of tap k in {-1, 0, 1, 2} at fractional offset u in [0, 1).
double cubic_weight(double u, int k) {
  const double u2 = u * u, u3 = u2 * u;
  switch (k) {
    case -1: return 0.5 * (-u3 + 2.0 * u2 - u);
    case 0: return 0.5 * (3.0 * u3 - 5.0 * u2 + 2.0);
    case 1: return 0.5 * (-3.0 * u3 + 4.0 * u2 + u);
    default: return 0.5 * (u3 - u2);
  }
}

// Integral over [u0, u1] (subset of [0, 1]) of the Catmull-Rom weight of tap k.
double cubic_weight_integral(int k, double u0, double u1) {
  auto anti = [k](double u) {
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u;
    switch (k) {
      case -1: return 0.5 * (-u4 / 4.0 + 2.0 * u3 / 3.0 - u2 / 2.0);
      case 0: return 0.5 * (3.0 * u4 / 4.0 - 5.0 * u3 / 3.0 + 2.0 * u);
      case 1: return 0.5 * (-3.0 * u4 / 4.0 + 4.0 * u3 / 3.0 + u2 / 2.0);
      default: return 0.5 * (u4 / 4.0 - u3 / 3.0);
    }
  };
  return anti(u1) - anti(u0);
}

struct WeightedNode {
  std::size_t index;
  double weight;
};
using AxisWeights = std::vector<std::vector<WeightedNode>>;

// For every node x of `target`, the weights that turn source samples into either the cubic
// interpolant at x / factor or its mean over the cell [x - h/2, x + h/2] / factor.
// Source nodes outside the grid are zero.
AxisWeights axis_weights(const AxisSpec& target, const AxisSpec& source, double factor, bool cell) {
  const long n = static_cast<long>(source.samples);
  AxisWeights out(target.samples);
  std::vector<double> acc(source.samples);
  for (std::size_t i = 0; i < target.samples; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const double x = target.coordinate(i);
    const double half = cell ? 0.5 * target.spacing() : 0.0;
    const double lo = source.position((x - half) / factor), hi = source.position((x + half) / factor);
    if (hi < -2.0 || lo > static_cast<double>(n + 1)) continue;
    if (!cell) {
      const double fl = std::floor(lo);
      for (int k = -1; k <= 2; ++k) {
        const long node = static_cast<long>(fl) + k;
        if (node >= 0 && node < n) acc[static_cast<std::size_t>(node)] += cubic_weight(lo - fl, k);
      }
    } else {
      const long first = std::max(static_cast<long>(std::floor(lo)), -2L);
      const long last = std::min(static_cast<long>(std::floor(hi)), n + 1);
      for (long m = first; m <= last; ++m) {
        const double u0 = std::max(lo - static_cast<double>(m), 0.0), u1 = std::min(hi - static_cast<double>(m), 1.0);
        if (u1 <= u0) continue;
        for (int k = -1; k <= 2; ++k) {
          const long node = m + k;
          if (node >= 0 && node < n) acc[static_cast<std::size_t>(node)] += cubic_weight_integral(k, u0, u1);
        }
      }
      for (double& a : acc) a /= hi - lo;
    }
    for (std::size_t j = 0; j < acc.size(); ++j)
      if (acc[j] != 0.0) out[i].push_back({j, acc[j]});
  }
  return out;
}

// c f(a^-1 .) from the tricubic interpolant of f, as node values or exact cell means,
// applied one axis at a time.
SampledField cubic_dilation(const SampledField& f, double a, double c, bool cell) {
  const GridSpec& g = f.grid();
  const AxisWeights wp = axis_weights(g.p(), g.p(), a, cell);
  const AxisWeights wq = axis_weights(g.q(), g.q(), a, cell);
  const AxisWeights wt = axis_weights(g.t(), g.t(), a * a, cell);
  const std::size_t np = g.p().samples, nq = g.q().samples, nt = g.t().samples;
  const auto src = f.values();

  std::vector<Complex> s1(g.size()), s2(g.size()), out(g.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::size_t line = 0; line < np * nq; ++line)
    for (std::size_t it = 0; it < nt; ++it) {
      Complex acc{0.0, 0.0};
      for (const WeightedNode& tap : wt[it]) acc += tap.weight * src[line * nt + tap.index];
      s1[line * nt + it] = acc;
    }
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::size_t ip = 0; ip < np; ++ip)
    for (std::size_t iq = 0; iq < nq; ++iq)
      for (const WeightedNode& tap : wq[iq])
        for (std::size_t it = 0; it < nt; ++it) s2[g.index(ip, iq, it)] += tap.weight * s1[g.index(ip, tap.index, it)];
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::size_t ip = 0; ip < np; ++ip)
    for (const WeightedNode& tap : wp[ip])
      for (std::size_t r = 0; r < nq * nt; ++r) out[ip * nq * nt + r] += c * tap.weight * s2[tap.index * nq * nt + r];
  return SampledField(g, std::move(out));
}

}  // namespace

SampledField::SampledField(GridSpec grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field has " + std::to_string(values_.size()) + " values, grid needs " +
                                std::to_string(grid_.size()));
  }
  for (const auto& z : values_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("field values must be finite");
    }
  }
}

SampledField SampledField::zeros(const GridSpec& grid) {
  return SampledField(grid, std::vector<Complex>(grid.size()));
}

Complex SampledField::interpolate(const GroupPoint& x) const noexcept {
  Tap tp[2], tq[2], tt[2];
  const int np = linear_taps(grid_.p().position(x.p), grid_.p().samples, tp);
  const int nq = linear_taps(grid_.q().position(x.q), grid_.q().samples, tq);
  const int nt = linear_taps(grid_.t().position(x.t), grid_.t().samples, tt);
  Complex v = 0.0;
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nq; ++b)
      for (int c = 0; c < nt; ++c)
        v += tp[a].weight * tq[b].weight * tt[c].weight *
             values_[grid_.index(static_cast<std::size_t>(tp[a].index), static_cast<std::size_t>(tq[b].index),
                                 static_cast<std::size_t>(tt[c].index))];
  return v;
}

bool SampledField::is_real() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

SampledField SampledField::operator+(const SampledField& other) const {
  require_same_grid(*this, other);
  std::vector<Complex> v(values_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += other.values_[k];
  return SampledField(grid_, std::move(v));
}

SampledField SampledField::operator-(const SampledField& other) const {
  require_same_grid(*this, other);
  std::vector<Complex> v(values_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= other.values_[k];
  return SampledField(grid_, std::move(v));
}

SampledField SampledField::operator*(Complex factor) const {
  std::vector<Complex> v(values_);
  for (auto& z : v) z *= factor;
  return SampledField(grid_, std::move(v));
}

SampledField SampledField::conj() const {
  std::vector<Complex> v(values_);
  for (auto& z : v) z = std::conj(z);
  return SampledField(grid_, std::move(v));
}

void require_same_grid(const SampledField& a, const SampledField& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("fields are sampled on different grids");
}

Complex integrate(const SampledField& f) {
  const GridSpec& g = f.grid();
  const std::size_t np = g.p().samples, nq = g.q().samples, nt = g.t().samples;
  Complex sum = 0.0;
  for (std::size_t ip = 0; ip < np; ++ip) {
    const double wp = (ip == 0 || ip == np - 1) ? 0.5 : 1.0;
    for (std::size_t iq = 0; iq < nq; ++iq) {
      const double wq = (iq == 0 || iq == nq - 1) ? 0.5 : 1.0;
      for (std::size_t it = 0; it < nt; ++it) {
        const double wt = (it == 0 || it == nt - 1) ? 0.5 : 1.0;
        sum += wp * wq * wt * f(ip, iq, it);
      }
    }
  }
  return sum * g.cell_volume();
}

Complex inner_product(const SampledField& f, const SampledField& g) {
  require_same_grid(f, g);
  std::vector<Complex> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f.values()[k] * std::conj(g.values()[k]);
  return integrate(SampledField(f.grid(), std::move(v)));
}

double norm_l2(const SampledField& f) { return std::sqrt(inner_product(f, f).real()); }

double norm_l1(const SampledField& f) {
  std::vector<Complex> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::abs(f.values()[k]);
  return integrate(SampledField(f.grid(), std::move(v))).real();
}

double relative_l2_error(const SampledField& approx, const SampledField& reference, double fraction) {
  require_same_grid(approx, reference);
  const GridSpec& g = reference.grid();
  double num = 0.0, den = 0.0;
  for (std::size_t ip = 0; ip < g.p().samples; ++ip)
    for (std::size_t iq = 0; iq < g.q().samples; ++iq)
      for (std::size_t it = 0; it < g.t().samples; ++it) {
        if (!g.is_interior(ip, iq, it, fraction)) continue;
        num += std::norm(approx(ip, iq, it) - reference(ip, iq, it));
        den += std::norm(reference(ip, iq, it));
      }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

double max_abs_difference(const SampledField& a, const SampledField& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

SampledField left_translate(const GroupPoint& w, const SampledField& f) {
  const GroupPoint winv = inverse(w);
  return SampledField::sample(f.grid(), [&](const GroupPoint& v) { return f.interpolate(winv * v); });
}

SampledField involute(const SampledField& f) {
  const GridSpec& g = f.grid();
  const std::size_t np = g.p().samples, nq = g.q().samples, nt = g.t().samples;
  std::vector<Complex> v(f.size());
  for (std::size_t ip = 0; ip < np; ++ip)
    for (std::size_t iq = 0; iq < nq; ++iq)
      for (std::size_t it = 0; it < nt; ++it)
        v[g.index(ip, iq, it)] = std::conj(f(np - 1 - ip, nq - 1 - iq, nt - 1 - it));
  return SampledField(g, std::move(v));
}

SampledField dilate_field(Scale a, const SampledField& f, Normalization norm, Resampling mode) {
  const double inv = 1.0 / a.value();
  const double factor = norm == Normalization::L1 ? std::pow(inv, 4) : inv * inv;
  if (mode != Resampling::linear) return cubic_dilation(f, a.value(), factor, mode == Resampling::cubic_cell_average);
  const Scale shrink(inv);
  return SampledField::sample(f.grid(), [&](const GroupPoint& w) {
    return factor * f.interpolate(dilate_point(shrink, w));
  });
}

SampledField partial_derivative(const SampledField& f, Axis axis) { return difference(f, axis, 1); }

SampledField apply_vector_field(VectorFieldDirection dir, const SampledField& f) {
  if (dir == VectorFieldDirection::T) return partial_derivative(f, Axis::t);
  const GridSpec& g = f.grid();
  const SampledField dt = partial_derivative(f, Axis::t);
  const SampledField d = partial_derivative(f, dir == VectorFieldDirection::X ? Axis::p : Axis::q);
  std::vector<Complex> v(f.size());
  for (std::size_t ip = 0; ip < g.p().samples; ++ip)
    for (std::size_t iq = 0; iq < g.q().samples; ++iq)
      for (std::size_t it = 0; it < g.t().samples; ++it) {
        const std::size_t k = g.index(ip, iq, it);
        const double coef = dir == VectorFieldDirection::X ? -0.5 * g.q().coordinate(iq)
                                                           : 0.5 * g.p().coordinate(ip);
        v[k] = d.values()[k] + coef * dt.values()[k];
      }
  return SampledField(g, std::move(v));
}

SampledField sub_laplacian(const SampledField& f) {
  // X^2 = d_pp - q d_p d_t + (q^2/4) d_tt,  Y^2 = d_qq + p d_q d_t + (p^2/4) d_tt
  const GridSpec& g = f.grid();
  const SampledField fpp = difference(f, Axis::p, 2);
  const SampledField fqq = difference(f, Axis::q, 2);
  const SampledField ftt = difference(f, Axis::t, 2);
  const SampledField ft = partial_derivative(f, Axis::t);
  const SampledField fpt = partial_derivative(ft, Axis::p);
  const SampledField fqt = partial_derivative(ft, Axis::q);
  std::vector<Complex> v(f.size());
  for (std::size_t ip = 0; ip < g.p().samples; ++ip)
    for (std::size_t iq = 0; iq < g.q().samples; ++iq)
      for (std::size_t it = 0; it < g.t().samples; ++it) {
        const std::size_t k = g.index(ip, iq, it);
        const double p = g.p().coordinate(ip), q = g.q().coordinate(iq);
        v[k] = -(fpp.values()[k] + fqq.values()[k] + 0.25 * (p * p + q * q) * ftt.values()[k] +
                 p * fqt.values()[k] - q * fpt.values()[k]);
      }
  return SampledField(g, std::move(v));
}

SampledField convolve(const SampledField& f, const SampledField& g) {
  require_same_grid(f, g);
  if (f.is_real() && g.is_real()) return SampledField(f.grid(), convolve_kernel<double>(f, g));
  return SampledField(f.grid(), convolve_kernel<Complex>(f, g));
}

}  // namespace heisenwave
