#include "treecount/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace treecount {

namespace {

// Huge exact results (10^8 bits) need exponents beyond the MPFR default.
const bool kExponentRangeWidened = [] {
  mpfr_set_emax(mpfr_get_emax_max());
  mpfr_set_emin(mpfr_get_emin_min());
  return true;
}();

// RAII scratch value.
struct Scratch {
  explicit Scratch(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  mpfr_t v;
};

mpfr_prec_t max_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

class IntervalAccess {
 public:
  static mpfr_ptr lo(Interval& x) { return x.lo_; }
  static mpfr_ptr hi(Interval& x) { return x.hi_; }
};

namespace {

mpfr_ptr lo_of(Interval& x) { return IntervalAccess::lo(x); }
mpfr_ptr hi_of(Interval& x) { return IntervalAccess::hi(x); }

using MonotoneFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Interval apply_increasing(const Interval& x, MonotoneFn fn) {
  Interval r(x.precision());
  fn(lo_of(r), x.lo(), MPFR_RNDD);
  fn(hi_of(r), x.hi(), MPFR_RNDU);
  return r;
}

}  // namespace

Interval::Interval(Precision prec) {
  (void)kExponentRangeWidened;
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value, Precision prec) : Interval(prec) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const mpz_class& value, Precision prec) : Interval(prec) {
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

Interval Interval::from_rational(const Rational& value, Precision prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, value.num(), MPFR_RNDD);
  mpfr_set_si(r.hi_, value.num(), MPFR_RNDU);
  if (!value.is_integer()) {
    mpfr_div_si(r.lo_, r.lo_, value.den(), MPFR_RNDD);
    mpfr_div_si(r.hi_, r.hi_, value.den(), MPFR_RNDU);
  }
  return r;
}

Interval Interval::from_double(double value, Precision prec) {
  if (!std::isfinite(value)) throw std::invalid_argument("Interval: non-finite double");
  Interval r(std::max<Precision>(prec, 53));
  mpfr_set_d(r.lo_, value, MPFR_RNDD);
  mpfr_set_d(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::from_ball(double mid, double rad, Precision prec) {
  if (!std::isfinite(mid) || !std::isfinite(rad) || rad < 0)
    throw std::invalid_argument("Interval: invalid ball");
  Interval r = from_double(mid, prec);
  mpfr_sub_d(r.lo_, r.lo_, rad, MPFR_RNDD);
  mpfr_add_d(r.hi_, r.hi_, rad, MPFR_RNDU);
  return r;
}

Interval Interval::hull(double lo, double hi, Precision prec) {
  if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
  Interval r = from_double(lo, prec);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval Interval::pi(Precision prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::set_precision_at_least(Precision p) {
  if (p <= precision()) return;
  Scratch a(p), b(p);
  mpfr_set(a.v, lo_, MPFR_RNDD);
  mpfr_set(b.v, hi_, MPFR_RNDU);
  mpfr_set_prec(lo_, p);
  mpfr_set_prec(hi_, p);
  mpfr_set(lo_, a.v, MPFR_RNDD);
  mpfr_set(hi_, b.v, MPFR_RNDU);
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid() const {
  Scratch m(precision() + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

double Interval::rad() const {
  Scratch w(precision());
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(w.v, w.v, 1, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

double Interval::relative_rad() const {
  if (contains_zero()) return std::numeric_limits<double>::infinity();
  Scratch w(53), m(53);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(w.v, w.v, 1, MPFR_RNDU);
  // |mid| >= min(|lo|, |hi|) when 0 is not inside.
  if (mpfr_sgn(lo_) > 0)
    mpfr_set(m.v, lo_, MPFR_RNDD);
  else
    mpfr_neg(m.v, hi_, MPFR_RNDD);
  mpfr_div(w.v, w.v, m.v, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool Interval::contains(const mpz_class& value) const {
  return mpfr_cmp_z(lo_, value.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, value.get_mpz_t()) >= 0;
}

bool Interval::contains(double value) const {
  return mpfr_cmp_d(lo_, value) <= 0 && mpfr_cmp_d(hi_, value) >= 0;
}

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }

bool Interval::certainly_less(const Interval& other) const {
  return mpfr_less_p(hi_, other.lo_) != 0;
}

mpz_class Interval::ceil_lower() const {
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), lo_, MPFR_RNDU);
  return r;
}

mpz_class Interval::floor_upper() const {
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), hi_, MPFR_RNDD);
  return r;
}

Interval Interval::hull_with(const Interval& other) const {
  Interval r(max_prec(*this, other));
  mpfr_min(r.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, other.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::widened(double abs_rad) const {
  if (!(abs_rad >= 0)) throw std::invalid_argument("Interval: negative widening");
  Interval r(*this);
  mpfr_sub_d(r.lo_, r.lo_, abs_rad, MPFR_RNDD);
  mpfr_add_d(r.hi_, r.hi_, abs_rad, MPFR_RNDU);
  return r;
}

BallStrings Interval::to_ball_strings(int digits) const {
  digits = std::max(digits, 2);
  const mpfr_prec_t work = precision() + 64;
  Scratch m(work);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);

  // Round the midpoint to `digits` decimals and reparse it so the radius can
  // be measured from what is actually printed.
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, m.v);
  std::string mid_text(buf.data());
  Scratch printed(work + 4 * digits);
  mpfr_set_str(printed.v, mid_text.c_str(), 10, MPFR_RNDN);

  Scratch up(53), down(53), r(53);
  mpfr_sub(up.v, hi_, printed.v, MPFR_RNDU);
  mpfr_sub(down.v, printed.v, lo_, MPFR_RNDU);
  mpfr_max(r.v, up.v, down.v, MPFR_RNDU);
  // Absorb the rounding of the reparse itself.
  Scratch slack(53);
  mpfr_abs(slack.v, printed.v, MPFR_RNDU);
  mpfr_mul_2si(slack.v, slack.v, -static_cast<long>(work), MPFR_RNDU);
  mpfr_add(r.v, r.v, slack.v, MPFR_RNDU);
  if (mpfr_sgn(r.v) < 0) mpfr_set_zero(r.v, 1);
  if (is_point() && mpfr_cmp(printed.v, lo_) == 0) mpfr_set_zero(r.v, 1);

  mpfr_snprintf(buf.data(), buf.size(), "%.2RUe", r.v);
  return BallStrings{std::move(mid_text), std::string(buf.data())};
}

Interval& Interval::operator+=(const Interval& rhs) {
  set_precision_at_least(rhs.precision());
  mpfr_add(lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
  set_precision_at_least(rhs.precision());
  if (this == &rhs) {
    Interval copy(rhs);
    return *this -= copy;
  }
  mpfr_sub(lo_, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, rhs.lo_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator*=(const Interval& rhs) {
  const mpfr_prec_t p = max_prec(*this, rhs);
  // Fast path for the common all-nonnegative case.
  if (mpfr_sgn(lo_) >= 0 && mpfr_sgn(rhs.lo_) >= 0) {
    set_precision_at_least(p);
    Scratch h(p);
    mpfr_mul(h.v, hi_, rhs.hi_, MPFR_RNDU);
    mpfr_mul(lo_, lo_, rhs.lo_, MPFR_RNDD);
    mpfr_swap(hi_, h.v);
    return *this;
  }
  Scratch lo(p), hi(p), t(p);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_set_inf(lo.v, 1);
  mpfr_set_inf(hi.v, -1);
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      mpfr_min(lo.v, lo.v, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      mpfr_max(hi.v, hi.v, t.v, MPFR_RNDU);
    }
  }
  mpfr_set_prec(lo_, p);
  mpfr_set_prec(hi_, p);
  mpfr_set(lo_, lo.v, MPFR_RNDD);
  mpfr_set(hi_, hi.v, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator/=(const Interval& rhs) {
  if (rhs.contains_zero()) throw std::domain_error("Interval: division by an interval containing zero");
  const mpfr_prec_t p = max_prec(*this, rhs);
  Scratch lo(p), hi(p), t(p);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_set_inf(lo.v, 1);
  mpfr_set_inf(hi.v, -1);
  for (auto x : a) {
    for (auto y : b) {
      mpfr_div(t.v, x, y, MPFR_RNDD);
      mpfr_min(lo.v, lo.v, t.v, MPFR_RNDD);
      mpfr_div(t.v, x, y, MPFR_RNDU);
      mpfr_max(hi.v, hi.v, t.v, MPFR_RNDU);
    }
  }
  mpfr_set_prec(lo_, p);
  mpfr_set_prec(hi_, p);
  mpfr_set(lo_, lo.v, MPFR_RNDD);
  mpfr_set(hi_, hi.v, MPFR_RNDU);
  return *this;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator*(Interval a, long k) {
  mpfr_mul_si(a.lo_, a.lo_, k, MPFR_RNDD);
  mpfr_mul_si(a.hi_, a.hi_, k, MPFR_RNDU);
  if (k < 0) mpfr_swap(a.lo_, a.hi_);
  return a;
}

Interval operator/(Interval a, long k) {
  if (k == 0) throw std::domain_error("Interval: division by zero");
  mpfr_div_si(a.lo_, a.lo_, k, MPFR_RNDD);
  mpfr_div_si(a.hi_, a.hi_, k, MPFR_RNDU);
  if (k < 0) mpfr_swap(a.lo_, a.hi_);
  return a;
}

Interval sqr(const Interval& x) {
  Interval r(x.precision());
  if (mpfr_sgn(x.lo()) >= 0) {
    mpfr_sqr(lo_of(r), x.lo(), MPFR_RNDD);
    mpfr_sqr(hi_of(r), x.hi(), MPFR_RNDU);
  } else if (mpfr_sgn(x.hi()) <= 0) {
    mpfr_sqr(lo_of(r), x.hi(), MPFR_RNDD);
    mpfr_sqr(hi_of(r), x.lo(), MPFR_RNDU);
  } else {
    Scratch a(x.precision());
    mpfr_sqr(a.v, x.lo(), MPFR_RNDU);
    mpfr_sqr(hi_of(r), x.hi(), MPFR_RNDU);
    mpfr_max(hi_of(r), hi_of(r), a.v, MPFR_RNDU);
    mpfr_set_zero(lo_of(r), 1);
  }
  return r;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.hi()) < 0) throw std::domain_error("Interval: sqrt of a negative interval");
  Interval r(x.precision());
  if (mpfr_sgn(x.lo()) <= 0)
    mpfr_set_zero(lo_of(r), 1);
  else
    mpfr_sqrt(lo_of(r), x.lo(), MPFR_RNDD);
  mpfr_sqrt(hi_of(r), x.hi(), MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) { return apply_increasing(x, mpfr_exp); }
Interval expm1(const Interval& x) { return apply_increasing(x, mpfr_expm1); }
Interval sinh(const Interval& x) { return apply_increasing(x, mpfr_sinh); }

Interval log(const Interval& x) {
  if (!x.certainly_positive()) throw std::domain_error("Interval: log of a non-positive interval");
  return apply_increasing(x, mpfr_log);
}

Interval log1p(const Interval& x) {
  if (mpfr_cmp_si(x.lo(), -1) <= 0) throw std::domain_error("Interval: log1p argument <= -1");
  return apply_increasing(x, mpfr_log1p);
}

Interval cosh(const Interval& x) {
  Interval r(x.precision());
  if (mpfr_sgn(x.lo()) >= 0) {
    mpfr_cosh(lo_of(r), x.lo(), MPFR_RNDD);
    mpfr_cosh(hi_of(r), x.hi(), MPFR_RNDU);
  } else if (mpfr_sgn(x.hi()) <= 0) {
    mpfr_cosh(lo_of(r), x.hi(), MPFR_RNDD);
    mpfr_cosh(hi_of(r), x.lo(), MPFR_RNDU);
  } else {
    Scratch a(x.precision());
    mpfr_cosh(a.v, x.lo(), MPFR_RNDU);
    mpfr_cosh(hi_of(r), x.hi(), MPFR_RNDU);
    mpfr_max(hi_of(r), hi_of(r), a.v, MPFR_RNDU);
    mpfr_set_ui(lo_of(r), 1, MPFR_RNDD);
  }
  return r;
}

Interval acosh1p(const Interval& y) {
  if (mpfr_sgn(y.hi()) < 0) throw std::domain_error("Interval: acosh1p of a negative interval");
  Interval r(y.precision());
  // acosh(1 + y) = log1p(y + sqrt(y (y + 2))), increasing in y.
  auto bound = [&](mpfr_ptr out, mpfr_srcptr v, mpfr_rnd_t rnd) {
    if (mpfr_sgn(v) <= 0) {
      mpfr_set_zero(out, 1);
      return;
    }
    Scratch t(y.precision());
    mpfr_add_ui(t.v, v, 2, rnd);
    mpfr_mul(t.v, t.v, v, rnd);
    mpfr_sqrt(t.v, t.v, rnd);
    mpfr_add(t.v, t.v, v, rnd);
    mpfr_log1p(out, t.v, rnd);
  };
  bound(lo_of(r), y.lo(), MPFR_RNDD);
  bound(hi_of(r), y.hi(), MPFR_RNDU);
  return r;
}

namespace {

// sin and cos of 2π·u for u in [0, 1/8], where both are monotone.
SinCos sincos_first_octant(const Rational& u, mpfr_prec_t prec) {
  if (u.num() == 0) return {Interval(0L, prec), Interval(1L, prec)};
  if (u == Rational(1, 12)) return {Interval::from_rational(Rational(1, 2), prec), sqrt(Interval(3L, prec)) / 2};
  if (u == Rational(1, 8)) {
    Interval h = sqrt(Interval(2L, prec)) / 2;
    return {h, h};
  }
  Interval x = Interval::pi(prec) * (2 * u.num()) / u.den();
  Interval s(prec), c(prec);
  mpfr_sin(lo_of(s), x.lo(), MPFR_RNDD);
  mpfr_sin(hi_of(s), x.hi(), MPFR_RNDU);
  mpfr_cos(lo_of(c), x.hi(), MPFR_RNDD);
  mpfr_cos(hi_of(c), x.lo(), MPFR_RNDU);
  return {std::move(s), std::move(c)};
}

SinCos sincos_reduced(const Rational& s, mpfr_prec_t prec) {
  // s in [0, 1); every reflection below is exact in rational arithmetic.
  if (s >= Rational(1, 2)) {
    SinCos r = sincos_reduced(s - Rational(1, 2), prec);
    return {-r.sin, -r.cos};
  }
  if (s > Rational(1, 4)) {
    SinCos r = sincos_reduced(s - Rational(1, 4), prec);
    return {r.cos, -r.sin};
  }
  if (s > Rational(1, 8)) {
    SinCos r = sincos_first_octant(Rational(1, 4) - s, prec);
    return {r.cos, r.sin};
  }
  return sincos_first_octant(s, prec);
}

}  // namespace

SinCos sincos_turn(const Rational& turns, Interval::Precision prec) {
  return sincos_reduced(turns.fractional_part(), prec);
}

Interval cos_turn(const Rational& turns, Interval::Precision prec) { return sincos_turn(turns, prec).cos; }
Interval sin_turn(const Rational& turns, Interval::Precision prec) { return sincos_turn(turns, prec).sin; }

}  // namespace treecount
