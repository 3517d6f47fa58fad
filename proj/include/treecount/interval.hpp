#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "treecount/rational.hpp"

namespace treecount {

/// Decimal rendering of an enclosure as midpoint and radius. The printed ball
/// [mid - rad, mid + rad] always contains the interval it was rendered from.
struct BallStrings {
  std::string mid;
  std::string rad;
};

/// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
///
/// Every operation returns an interval that contains the exact result for all
/// points of its arguments. The precision of a result is the largest precision
/// among its operands.
class Interval {
 public:
  using Precision = mpfr_prec_t;

  explicit Interval(Precision prec = 128);
  Interval(long value, Precision prec);
  Interval(const mpz_class& value, Precision prec);

  static Interval from_rational(const Rational& value, Precision prec);
  /// Exact point interval at a double value.
  static Interval from_double(double value, Precision prec);
  /// [mid - rad, mid + rad], rounded outward.
  static Interval from_ball(double mid, double rad, Precision prec);
  static Interval hull(double lo, double hi, Precision prec);
  static Interval pi(Precision prec);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  Precision precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  double lower() const;  // rounded down
  double upper() const;  // rounded up
  double mid() const;
  double rad() const;  // rounded up
  /// Radius divided by |mid|, rounded up; infinite if the interval contains 0.
  double relative_rad() const;

  bool is_point() const;
  bool contains(const mpz_class& value) const;
  bool contains(double value) const;
  bool contains(const Interval& other) const;
  bool overlaps(const Interval& other) const;
  bool contains_zero() const;
  bool certainly_positive() const;
  bool certainly_less(const Interval& other) const;

  /// Integers ceil(lo) and floor(hi).
  mpz_class ceil_lower() const;
  mpz_class floor_upper() const;

  /// Smallest interval containing both.
  Interval hull_with(const Interval& other) const;
  Interval widened(double abs_rad) const;

  BallStrings to_ball_strings(int digits = 20) const;

  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  Interval operator-() const;

  friend Interval operator*(Interval a, long k);
  friend Interval operator/(Interval a, long k);

 private:
  mpfr_t lo_;
  mpfr_t hi_;

  void set_precision_at_least(Precision p);
  friend class IntervalAccess;
};

Interval sqr(const Interval& x);
/// Square root; a lower endpoint below zero is clamped to zero.
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval expm1(const Interval& x);
Interval log(const Interval& x);
Interval log1p(const Interval& x);
Interval sinh(const Interval& x);
Interval cosh(const Interval& x);
/// acosh(1 + y) for y >= 0, evaluated without cancellation near y = 0.
Interval acosh1p(const Interval& y);

/// Enclosures of sin(2πr) and cos(2πr) for a rational number of turns r.
struct SinCos {
  Interval sin;
  Interval cos;
};
SinCos sincos_turn(const Rational& turns, Interval::Precision prec);
Interval cos_turn(const Rational& turns, Interval::Precision prec);
Interval sin_turn(const Rational& turns, Interval::Precision prec);

}  // namespace treecount
