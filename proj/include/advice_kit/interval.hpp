#pragma once

#include "advice_kit/rational.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace advice_kit {

/// Closed interval [lo, hi] with exact rational endpoints.
class Interval {
 public:
  Interval() : lo_(0), hi_(0) {}
  explicit Interval(const Rational& point) : lo_(point), hi_(point) {}
  Interval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
    if (hi_ < lo_) throw std::invalid_argument("interval with hi < lo");
  }

  static Interval centered(const Rational& c, const Rational& radius) { return {c - radius, c + radius}; }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool containsZero() const { return lo_ <= 0 && hi_ >= 0; }
  bool excludesZero() const { return !containsZero(); }
  bool positive() const { return lo_ > 0; }
  bool negative() const { return hi_ < 0; }
  bool subsetOf(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }
  bool intersects(const Interval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }

  Interval hull(const Interval& o) const { return {std::min(lo_, o.lo_), std::max(hi_, o.hi_)}; }

  std::optional<Interval> intersect(const Interval& o) const {
    Rational l = std::max(lo_, o.lo_);
    Rational h = std::min(hi_, o.hi_);
    if (h < l) return std::nullopt;
    return Interval(l, h);
  }

  Interval operator-() const { return {-hi_, -lo_}; }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }

  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }

  friend Interval operator*(const Rational& s, const Interval& a) {
    if (s >= 0) return {s * a.lo_, s * a.hi_};
    return {s * a.hi_, s * a.lo_};
  }

  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.containsZero()) throw std::domain_error("interval division by an interval containing zero");
    Rational q1 = a.lo_ / b.lo_, q2 = a.lo_ / b.hi_, q3 = a.hi_ / b.lo_, q4 = a.hi_ / b.hi_;
    return {std::min({q1, q2, q3, q4}), std::max({q1, q2, q3, q4})};
  }

  /// Tight enclosure of {x^2 : x in this}.
  Interval square() const {
    if (lo_ >= 0) return {lo_ * lo_, hi_ * hi_};
    if (hi_ <= 0) return {hi_ * hi_, lo_ * lo_};
    return {Rational(0), std::max(lo_ * lo_, hi_ * hi_)};
  }

  Interval abs() const {
    if (lo_ >= 0) return *this;
    if (hi_ <= 0) return -*this;
    return {Rational(0), std::max(Rational(-lo_), hi_)};
  }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

  friend std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << '[' << iv.lo_.get_str() << ", " << iv.hi_.get_str() << ']';
  }

 private:
  Rational lo_, hi_;
};

/// Outward enclosure of sqrt(q) for q >= 0 with width at most 2^-bits.
inline Interval sqrtEnclosure(const Rational& q, unsigned bits) {
  if (q < 0) throw std::domain_error("sqrt of a negative rational");
  // floor(q * 4^bits) then integer sqrt.
  Integer scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  Rational unit = pow2(-static_cast<long>(bits));
  Rational lo = Rational(s) * unit;
  Rational hi = Rational(s + 1) * unit;
  if (lo * lo == q) hi = lo;
  return {lo, hi};
}

/// Enclosure of {sqrt(x) : x in iv, x >= 0}; iv must not be entirely negative.
inline Interval sqrtEnclosure(const Interval& iv, unsigned bits) {
  if (iv.hi() < 0) throw std::domain_error("sqrt of a negative interval");
  Rational lo = iv.lo() < 0 ? Rational(0) : iv.lo();
  return {sqrtEnclosure(lo, bits).lo(), sqrtEnclosure(iv.hi(), bits).hi()};
}

/// True when the closed interval `target` lies inside the union of the open intervals `cover`.
inline bool coveredByOpenIntervals(const Interval& target, std::vector<Interval> cover) {
  std::sort(cover.begin(), cover.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  // Sweep: `reach` is the supremum of the covered region starting strictly left of target.lo.
  Rational point = target.lo();
  bool pointCovered = false;
  for (const auto& open : cover) {
    if (open.lo() < point && point < open.hi()) {
      pointCovered = true;
      break;
    }
  }
  if (!pointCovered) return false;
  // Greedy extension: repeatedly pick the interval containing `point` in its interior reaching furthest.
  for (;;) {
    std::optional<Rational> best;
    for (const auto& open : cover) {
      if (open.lo() < point && point < open.hi()) {
        if (!best || open.hi() > *best) best = open.hi();
      }
    }
    if (!best) return false;
    if (*best > target.hi()) return true;
    point = *best;
  }
}

}  // namespace advice_kit
