#include "treecount/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "treecount/errors.hpp"

namespace treecount {

namespace {

// Exact description of one factor before any floating evaluation.
struct FactorPlan {
  std::vector<std::int64_t> index;
  std::vector<Rational> mu_angles;  // μ = 4 Σ sin²(π a)
  Rational omega;
  bool mu_is_zero = false;
};

struct ProductPlan {
  std::vector<FactorPlan> factors;
  std::uint64_t n = 1;
  std::uint64_t divisor = 1;  // τ = n · Π / divisor
};

double mu_double(const FactorPlan& f) {
  double mu = 0;
  for (const Rational& a : f.mu_angles) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(a.fractional_part().num()) /
                              static_cast<double>(a.den()));
    mu += 4 * s * s;
  }
  return mu;
}

// log2 of one factor, from double arithmetic.
double factor_log2_estimate(const FactorPlan& f, std::uint64_t n) {
  const double mu = f.mu_is_zero ? 0.0 : mu_double(f);
  const double theta = std::acosh(1 + mu / 2);
  const double y = static_cast<double>(n) * theta;
  const double s = std::sin(std::numbers::pi * static_cast<double>(f.omega.fractional_part().num()) /
                            static_cast<double>(f.omega.den()));
  if (y > 60) return y / std::numbers::ln2;
  const double sh = std::sinh(y / 2);
  const double value = 4 * sh * sh + 4 * s * s;
  return value > 0 ? std::log2(value) : 0.0;
}

double product_log2_estimate(const ProductPlan& plan) {
  double est = 0;
  for (const FactorPlan& f : plan.factors) est += factor_log2_estimate(f, plan.n);
  return est;
}

FactorTerm evaluate_factor(const FactorPlan& f, std::uint64_t n, Interval::Precision prec) {
  Interval mu = f.mu_is_zero ? Interval(0L, prec) : laplacian_eigenvalue(f.mu_angles, prec);
  Interval theta = f.mu_is_zero ? Interval(0L, prec) : acosh1p(mu / 2);
  Interval factor = telescoped_factor(theta, f.omega, n);
  return FactorTerm{f.index, std::move(mu), std::move(theta), f.omega, std::move(factor)};
}

ClosedFormResult evaluate_product(const ProductPlan& plan, const EvalOptions& options) {
  options.precision.validate();
  const double magnitude = product_log2_estimate(plan);
  const double log2_tau = magnitude + std::log2(static_cast<double>(plan.n)) -
                          std::log2(static_cast<double>(plan.divisor));
  if (log2_tau > kExactResultBitCap)
    throw ResultTooLarge("exact result would need about " + std::to_string(static_cast<long long>(log2_tau)) +
                         " bits; use log mode");

  // Interval widths grow by about log2(n·θ) bits through cosh(nθ).
  const long amplification = static_cast<long>(std::ceil(std::log2(static_cast<double>(plan.n) + 1))) + 8;
  ClosedFormResult result;
  for (long guard = options.precision.initial_bits; guard <= options.precision.max_bits; guard *= 2) {
    const auto prec = static_cast<Interval::Precision>(std::ceil(magnitude)) + guard + amplification;
    ++result.attempts;
    result.factors.clear();
    Interval product(1L, prec);
    for (std::size_t i = 0; i < plan.factors.size(); ++i) {
      FactorTerm term = evaluate_factor(plan.factors[i], plan.n, prec);
      if (!term.factor.certainly_positive())
        throw std::logic_error("closed form: factor enclosure is not strictly positive");
      if (options.factor_hook) options.factor_hook(i, term.factor);
      product *= term.factor;
      result.factors.push_back(std::move(term));
    }
    const std::optional<mpz_class> rounded = certified_round(product);
    if (!rounded) continue;
    mpz_class numerator = *rounded * static_cast<unsigned long>(plan.n);
    if (!mpz_divisible_ui_p(numerator.get_mpz_t(), plan.divisor))
      throw std::logic_error("closed form: n·P is not divisible by " + std::to_string(plan.divisor));
    mpz_divexact_ui(numerator.get_mpz_t(), numerator.get_mpz_t(), plan.divisor);
    result.tau = BigCount(std::move(numerator));
    result.precision_bits = static_cast<long>(prec);
    return result;
  }
  throw PrecisionExhausted("no unique integer isolated within " + std::to_string(options.precision.max_bits) +
                           " guard bits");
}

ProductPlan scaled_circulant_plan(const ScaledCirculantFamily& family) {
  ProductPlan plan;
  plan.n = family.scale();
  plan.divisor = family.beta();
  const auto beta = static_cast<std::int64_t>(family.beta());
  for (std::int64_t k = 1; k < beta; ++k) {
    FactorPlan f;
    f.index = {k};
    f.omega = Rational(k, beta);
    bool zero = true;
    for (std::uint64_t g : family.base_generators()) {
      Rational a(k * static_cast<std::int64_t>(g), beta);
      zero = zero && a.is_integer();
      f.mu_angles.push_back(a);
    }
    f.mu_is_zero = zero;
    plan.factors.push_back(std::move(f));
  }
  return plan;
}

ProductPlan torus_plan(const TorusSpec& spec) {
  ProductPlan plan;
  plan.n = spec.last();
  plan.divisor = spec.base_determinant();
  for (SpectrumPoint& p : box_spectrum(spec.alphas(), 53)) {
    if (p.is_zero()) continue;
    plan.factors.push_back(FactorPlan{std::move(p.index), std::move(p.angles), Rational(0), false});
  }
  return plan;
}

// d = 1 and β = 1 reduce to the cycle.
bool is_cycle_family(const ScaledCirculantFamily& family) {
  return family.beta() == 1 || family.base_generators().empty();
}

}  // namespace

void PrecisionPolicy::validate() const {
  if (initial_bits < 53) throw InvalidInput("initial_bits must be at least 53");
  if (max_bits < initial_bits) throw InvalidInput("max_bits must be at least initial_bits");
}

std::optional<mpz_class> certified_round(const Interval& enclosure) {
  if (!mpfr_number_p(enclosure.lo()) || !mpfr_number_p(enclosure.hi())) return std::nullopt;
  if (!(enclosure.rad() < 0.25)) return std::nullopt;
  // ceil(lo) == floor(hi) iff exactly one integer lies inside.
  mpz_class first = enclosure.ceil_lower();
  if (first != enclosure.floor_upper()) return std::nullopt;
  return first;
}

Interval telescoped_factor(const Interval& theta, const Rational& omega, std::uint64_t n) {
  if (mpfr_sgn(theta.hi()) < 0) throw InvalidInput("theta must be nonnegative");
  const Interval::Precision prec = theta.precision();
  Interval half = theta * static_cast<long>(n) / 2;
  Interval result = sqr(sinh(half)) * 4;
  result += sqr(sin_turn(omega / Rational(2), prec)) * 4;
  return result;
}

ClosedFormResult evaluate_scaled_circulant(const ScaledCirculantFamily& family, const EvalOptions& options) {
  if (is_cycle_family(family)) {
    options.precision.validate();
    ClosedFormResult r;
    r.tau = BigCount(mpz_class(static_cast<unsigned long>(family.beta() * family.scale())));
    return r;
  }
  return evaluate_product(scaled_circulant_plan(family), options);
}

BigCount tau_scaled_circulant(const ScaledCirculantFamily& family, const EvalOptions& options) {
  return evaluate_scaled_circulant(family, options).tau;
}

ClosedFormResult evaluate_torus(const TorusSpec& spec, const EvalOptions& options) {
  if (spec.dimension() == 1) {
    options.precision.validate();
    ClosedFormResult r;
    r.tau = BigCount(mpz_class(static_cast<unsigned long>(spec.last())));
    return r;
  }
  // detA = 1 yields an empty product and τ = n.
  return evaluate_product(torus_plan(spec), options);
}

BigCount tau_torus(const TorusSpec& spec, const EvalOptions& options) { return evaluate_torus(spec, options).tau; }

namespace {

// ln(4sinh²(y/2) + 4s²) = y + ln((1 - e^{-y})² + 4s² e^{-y}), stable for huge y.
Interval log_factor(const Interval& theta, bool theta_is_zero, const Rational& omega, std::uint64_t n) {
  const Interval::Precision prec = theta.precision();
  const Interval s2 = sqr(sin_turn(omega / Rational(2), prec)) * 4;
  if (theta_is_zero) return log(s2);
  const Interval y = theta * static_cast<long>(n);
  const Interval e = exp(-y);
  return y + log(sqr(-expm1(-y)) + s2 * e);
}

Interval log_product(const ProductPlan& plan, Interval::Precision prec) {
  Interval sum = log(Interval(static_cast<long>(plan.n), prec)) - log(Interval(static_cast<long>(plan.divisor), prec));
  for (const FactorPlan& f : plan.factors) {
    const Interval mu = f.mu_is_zero ? Interval(0L, prec) : laplacian_eigenvalue(f.mu_angles, prec);
    const Interval theta = f.mu_is_zero ? Interval(0L, prec) : acosh1p(mu / 2);
    sum += log_factor(theta, f.mu_is_zero, f.omega, plan.n);
  }
  return sum;
}

}  // namespace

Interval log_tau_estimate(const ScaledCirculantFamily& family, Interval::Precision prec) {
  if (is_cycle_family(family)) return log(Interval(static_cast<long>(family.beta() * family.scale()), prec));
  return log_product(scaled_circulant_plan(family), prec);
}

Interval log_tau_estimate(const TorusSpec& spec, Interval::Precision prec) {
  if (spec.dimension() == 1) return log(Interval(static_cast<long>(spec.last()), prec));
  return log_product(torus_plan(spec), prec);
}

double estimated_log2_tau(const ScaledCirculantFamily& family) {
  if (is_cycle_family(family)) return std::log2(static_cast<double>(family.beta() * family.scale()));
  const ProductPlan plan = scaled_circulant_plan(family);
  return product_log2_estimate(plan) + std::log2(static_cast<double>(plan.n) / static_cast<double>(plan.divisor));
}

double estimated_log2_tau(const TorusSpec& spec) {
  if (spec.dimension() == 1) return std::log2(static_cast<double>(spec.last()));
  const ProductPlan plan = torus_plan(spec);
  return product_log2_estimate(plan) + std::log2(static_cast<double>(plan.n) / static_cast<double>(plan.divisor));
}

BigCount tau_from_spectrum(const CirculantSpec& spec, const PrecisionPolicy& policy) {
  policy.validate();
  const std::uint64_t n = spec.vertex_count();
  double magnitude = 0;
  for (const SpectrumPoint& p : circulant_spectrum(spec, 53))
    if (!p.is_zero()) magnitude += std::log2(std::max(p.value.mid(), 1e-300));
  const long extra = static_cast<long>(std::ceil(std::log2(static_cast<double>(n) + 1))) + 8;
  for (long guard = policy.initial_bits; guard <= policy.max_bits; guard *= 2) {
    const auto prec = static_cast<Interval::Precision>(std::ceil(std::max(magnitude, 0.0))) + guard + extra;
    const std::vector<SpectrumPoint> spectrum = circulant_spectrum(spec, prec);
    if (auto rounded = certified_round(eigenproduct_estimate(spectrum, n))) return BigCount(std::move(*rounded));
  }
  throw PrecisionExhausted("eigenvalue product not isolated within " + std::to_string(policy.max_bits) + " guard bits");
}

}  // namespace treecount
