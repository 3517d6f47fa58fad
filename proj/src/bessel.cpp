#include "treecount/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "treecount/errors.hpp"
#include "treecount/quadrature.hpp"

namespace treecount {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

ScaledValue scaled_series(unsigned order, double x) {
  const double nu = order;
  const double q = 0.25 * x * x;
  const double log_first = nu * std::log(0.5 * x) - std::lgamma(nu + 1) - x;
  double term = 1.0, sum = 1.0, log_scale = 0.0, tail = 0.0;
  constexpr double kRescale = 1e250;
  std::size_t j = 0;
  for (;; ++j) {
    const double ratio = q / ((j + 1.0) * (j + 1.0 + nu));
    if (term < 1e-18 * sum && ratio < 0.5) {
      // Ratios decrease from here on, so the rest is a dominated geometric series.
      tail = term * ratio / (1 - ratio);
      break;
    }
    term *= ratio;
    sum += term;
    if (sum > kRescale) {
      sum /= kRescale;
      term /= kRescale;
      log_scale += std::log(kRescale);
    }
  }
  const double scale = std::exp(log_first + log_scale);
  const double value = scale * sum;
  const double log_error = order == 0 ? 0.0 : std::abs(log_first) + 1;
  const double error = value * kEps * (static_cast<double>(j) + 8 + 4 * log_error) + scale * tail;
  return {value, error};
}

ScaledValue scaled_asymptotic(unsigned order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0, sum = 1.0, omitted = 0.0;
  for (int k = 1; k < 500; ++k) {
    const double odd = 2.0 * k - 1;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) {
      // Terms stopped decreasing; the truncation error is about the last term.
      omitted = std::abs(term);
      break;
    }
    sum += next;
    term = next;
    if (std::abs(term) < 1e-18 * std::abs(sum)) {
      omitted = std::abs(term);
      break;
    }
  }
  const double prefactor = 1.0 / std::sqrt(2 * std::numbers::pi * x);
  const double value = prefactor * sum;
  const double error = prefactor * (omitted + 8 * kEps * std::abs(sum) + std::exp(-2 * x));
  return {value, error};
}

double heat_symbol(std::span<const std::uint64_t> generators, double w) {
  double lambda = 0;
  for (std::uint64_t g : generators) {
    const double s = std::sin(0.5 * static_cast<double>(g) * w);
    lambda += 4 * s * s;
  }
  return lambda;
}

std::uint64_t largest(std::span<const std::uint64_t> generators) {
  if (std::find(generators.begin(), generators.end(), 1u) == generators.end())
    throw InvalidInput("heat kernel generator list must contain 1");
  return *std::max_element(generators.begin(), generators.end());
}

std::vector<double> uniform_breakpoints(double a, double b, std::size_t panels) {
  std::vector<double> pts(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) pts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
  pts.back() = b;
  return pts;
}

}  // namespace

ScaledValue bessel_i_scaled(unsigned order, double x) {
  if (!(x >= 0) || !std::isfinite(x)) throw InvalidInput("bessel_i: x must be finite and nonnegative");
  if (x == 0) return {order == 0 ? 1.0 : 0.0, 0.0};
  const double switchover = 30.0 + 0.5 * static_cast<double>(order) * order;
  if (x > switchover) return scaled_asymptotic(order, x);
  return scaled_series(order, x);
}

Interval bessel_i(unsigned order, double x) {
  const ScaledValue s = bessel_i_scaled(order, x);
  return Interval::from_ball(s.value, s.error, 64) * exp(Interval::from_double(x, 64));
}

double bessel_i0_deficit_over_t(double t) {
  // Σ_{j>=1} t^{2j-1} / (j!)²
  if (t == 0) return 0.0;
  double term = t, sum = t;
  for (int j = 2; j < 200; ++j) {
    term *= t * t / (static_cast<double>(j) * j);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

ScaledValue circulant_heat_kernel(std::span<const std::uint64_t> generators, double t, double tolerance) {
  if (!(t >= 0) || !std::isfinite(t)) throw InvalidInput("heat kernel: t must be finite and nonnegative");
  const double gmax = static_cast<double>(largest(generators));
  if (t == 0) return {1.0, 0.0};
  constexpr double kCutExponent = 46.0;
  const double pi = std::numbers::pi;
  // λ(w) >= 4 sin²(w/2) >= 4w²/π², so past W the integrand is below e^{-46}.
  double width = pi;
  double truncation = 0.0;
  const double cut = pi * std::sqrt(kCutExponent / (4 * t));
  if (cut < pi) {
    width = cut;
    truncation = std::exp(-kCutExponent);
  }
  // Resolve λ's finest oscillation and the Gaussian width 1/(g√t).
  const double h = std::min(pi / (8 * gmax), 0.5 / (gmax * std::sqrt(t)));
  const auto panels = static_cast<std::size_t>(std::ceil(width / h));
  const std::vector<double> pts = uniform_breakpoints(0.0, width, std::max<std::size_t>(panels, 1));
  QuadratureOptions opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = tolerance;
  opts.max_evaluations = 40 * 15 * pts.size() + 200'000;
  const QuadratureResult r = integrate_adaptive(
      [&](double w) { return std::exp(-t * heat_symbol(generators, w)); }, pts, opts);
  if (!r.converged) throw QuadratureBudgetExceeded("heat kernel quadrature did not converge");
  const double value = r.value / pi;
  return {value, r.error / pi + truncation + 64 * kEps * value};
}

ScaledValue circulant_heat_kernel_deficit(std::span<const std::uint64_t> generators, double t, double tolerance) {
  if (!(t >= 0) || !std::isfinite(t)) throw InvalidInput("heat kernel: t must be finite and nonnegative");
  const double gmax = static_cast<double>(largest(generators));
  if (t == 0) return {-2.0 * static_cast<double>(generators.size()), 0.0};
  const double pi = std::numbers::pi;
  const auto panels = static_cast<std::size_t>(std::ceil(pi / (pi / (8 * gmax))));
  const std::vector<double> pts = uniform_breakpoints(0.0, pi, panels);
  QuadratureOptions opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = tolerance;
  opts.max_evaluations = 40 * 15 * pts.size() + 200'000;
  const QuadratureResult r = integrate_adaptive(
      [&](double w) { return std::expm1(-t * heat_symbol(generators, w)) / t; }, pts, opts);
  if (!r.converged) throw QuadratureBudgetExceeded("heat kernel deficit quadrature did not converge");
  const double value = r.value / pi;
  return {value, r.error / pi + 64 * kEps * std::abs(value)};
}

ScaledValue multidim_bessel_scaled(std::span<const std::uint64_t> gammas, double t, BesselForm form,
                                   const MultidimOptions& options) {
  if (!(t >= 0) || !std::isfinite(t)) throw InvalidInput("multidim_bessel: t must be finite and nonnegative");
  for (std::uint64_t g : gammas)
    if (g == 0) throw InvalidInput("multidim_bessel: generators must be positive");
  if (t == 0) return {1.0, 0.0};

  if (form == BesselForm::integral) {
    std::vector<std::uint64_t> generators{1};
    generators.insert(generators.end(), gammas.begin(), gammas.end());
    return circulant_heat_kernel(generators, t, options.tolerance);
  }

  const std::size_t m = gammas.size();
  const double x = 2 * t;
  if (m == 0) return bessel_i_scaled(0, x);
  std::uint64_t gamma_sum = 0;
  for (std::uint64_t g : gammas) gamma_sum += g;

  // Each term is bounded via I_ν(2t) <= (t^ν/ν!) I_0(2t), so the part of the
  // lattice sum outside the box [-K, K]^m is at most
  // M_0^{m+1} (A^m - A_K^m) with A = Σ_{k∈Z} t^|k|/|k|! and A_K its truncation.
  const ScaledValue m0 = bessel_i_scaled(0, x);
  auto tail_bound = [&](std::size_t K) {
    double a_k = 1, term = 1;
    for (std::size_t j = 1; j <= K; ++j) {
      term *= t / static_cast<double>(j);
      a_k += 2 * term;
    }
    double rest = 0;
    for (std::size_t j = K + 1; j < K + 400; ++j) {
      term *= t / static_cast<double>(j);
      rest += 2 * term;
      if (term < 1e-30 * rest) break;
    }
    const double ratio = std::expm1(static_cast<double>(m) * std::log1p(rest / a_k));
    return std::pow(m0.value, static_cast<double>(m + 1)) * std::pow(a_k, static_cast<double>(m)) * ratio;
  };

  std::size_t K = static_cast<std::size_t>(std::ceil(t)) + 4;
  for (;;) {
    const double volume = std::pow(2.0 * static_cast<double>(K) + 1, static_cast<double>(m));
    if (volume > static_cast<double>(options.max_terms))
      throw QuadratureBudgetExceeded("multidim_bessel series: truncation budget exceeded");
    const double tail = tail_bound(K);
    // Cheap lower bound for the sum: the k = 0 term M_0^{m+1}.
    if (tail <= options.tolerance * std::pow(m0.value, static_cast<double>(m + 1)) * 1e-2) break;
    K = K + K / 2 + 1;
  }

  const std::size_t max_order = K * (gamma_sum + 1);
  std::vector<ScaledValue> scaled(max_order + 1);
  for (std::size_t nu = 0; nu <= max_order; ++nu) scaled[nu] = bessel_i_scaled(static_cast<unsigned>(nu), x);

  const auto side = static_cast<std::int64_t>(K);
  std::vector<std::int64_t> k(m, -side);
  double sum = 0, compensation = 0, error = 0;
  std::size_t count = 0;
  for (;;) {
    std::int64_t combo = 0;
    double product = 1, rel = 0;
    for (std::size_t i = 0; i < m; ++i) {
      combo += static_cast<std::int64_t>(gammas[i]) * k[i];
      const ScaledValue& b = scaled[static_cast<std::size_t>(std::abs(k[i]))];
      product *= b.value;
      rel += b.value > 0 ? b.error / b.value : 0;
    }
    const ScaledValue& c = scaled[static_cast<std::size_t>(std::abs(combo))];
    product *= c.value;
    rel += c.value > 0 ? c.error / c.value : 0;
    // Kahan summation; terms are all nonnegative.
    const double y = product - compensation;
    const double s = sum + y;
    compensation = (s - sum) - y;
    sum = s;
    error += product * rel;
    ++count;

    std::size_t i = 0;
    while (i < m && k[i] == side) k[i++] = -side;
    if (i == m) break;
    ++k[i];
  }
  error += tail_bound(K) + 4 * kEps * sum;
  (void)count;
  return {sum, error};
}

Interval multidim_bessel(std::span<const std::uint64_t> gammas, double t, BesselForm form,
                         const MultidimOptions& options) {
  const ScaledValue s = multidim_bessel_scaled(gammas, t, form, options);
  const double growth = 2.0 * static_cast<double>(gammas.size() + 1) * t;
  return Interval::from_ball(s.value, s.error, 64) * exp(Interval::from_double(growth, 64));
}

}  // namespace treecount
