#pragma once

#include <cmath>
#include <stdexcept>

namespace heisenwave {

/// A point (p, q, t) of the Heisenberg group. The central coordinate is t.
struct GroupPoint {
  double p = 0.0;
  double q = 0.0;
  double t = 0.0;

  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;
};

/// Positive dilation parameter. Construction rejects a <= 0 and non-finite values.
class Scale {
 public:
  explicit Scale(double a) : a_(a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("scale must be finite and strictly positive");
    }
  }

  double value() const noexcept { return a_; }

 private:
  double a_;
};

/// (p1,q1,t1)(p2,q2,t2) = (p1+p2, q1+q2, t1+t2 + (p1 q2 - q1 p2)/2)
inline GroupPoint multiply(const GroupPoint& x, const GroupPoint& y) noexcept {
  return {x.p + y.p, x.q + y.q, x.t + y.t + 0.5 * (x.p * y.q - x.q * y.p)};
}

inline GroupPoint inverse(const GroupPoint& x) noexcept { return {-x.p, -x.q, -x.t}; }

inline GroupPoint operator*(const GroupPoint& x, const GroupPoint& y) noexcept {
  return multiply(x, y);
}

/// The automorphism (p,q,t) -> (ap, aq, a^2 t).
inline GroupPoint dilate_point(Scale a, const GroupPoint& x) noexcept {
  const double s = a.value();
  return {s * x.p, s * x.q, s * s * x.t};
}

/// Degree-one homogeneous norm (p^4 + q^4 + t^2)^(1/4).
inline double homogeneous_norm(const GroupPoint& x) noexcept {
  const double p2 = x.p * x.p;
  const double q2 = x.q * x.q;
  return std::sqrt(std::sqrt(p2 * p2 + q2 * q2 + x.t * x.t));
}

/// Central part of the commutator xyx^-1y^-1; equals p1 q2 - q1 p2.
inline double bracket(const GroupPoint& x, const GroupPoint& y) noexcept {
  return x.p * y.q - x.q * y.p;
}

}  // namespace heisenwave
