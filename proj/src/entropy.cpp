#include "treecount/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "treecount/bessel.hpp"
#include "treecount/errors.hpp"
#include "treecount/quadrature.hpp"

namespace treecount {

namespace {

constexpr double kInnerTolerance = 1e-13;

// K(t) ≈ A t^{-p} (1 + b_1/t + b_2/t² + ...) for t >= T.
struct TailModel {
  double amplitude = 0;
  double power = 0.5;
  std::vector<double> coefficients;
  // Rough size of the first coefficient left out.
  double omitted = 1;

  // ∫_T^∞ K(t) dt/t
  double integral(double horizon) const {
    double total = 1 / power * std::pow(horizon, -power);
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      const double q = power + static_cast<double>(i + 1);
      total += coefficients[i] / q * std::pow(horizon, -q);
    }
    return amplitude * total;
  }
  double error(double horizon) const {
    const double q = power + static_cast<double>(coefficients.size() + 1);
    return std::abs(amplitude * omitted / q * std::pow(horizon, -q));
  }
};

struct EntropyIntegral {
  // (K(t) - 1)/t on (0, 1].
  std::function<ScaledValue(double)> deficit;
  // K(t) on [1, T].
  std::function<ScaledValue(double)> kernel;
  double horizon = 1e6;
  TailModel tail;
};

// ∫_0^∞ (e^{-t} - K(t)) dt/t, split at t = 1 and t = T; the middle piece is
// integrated in u = ln t.
EntropyReport integrate_entropy(const EntropyIntegral& problem, EntropyMethod method, const EntropyOptions& options) {
  QuadratureOptions q;
  q.abs_tol = options.tolerance / 8;
  q.max_evaluations = 400'000;

  double head_inner = 0;
  const double head_points[] = {0.0, 0.25, 0.5, 1.0};
  const QuadratureResult head = integrate_adaptive(
      [&](double t) {
        const ScaledValue d = problem.deficit(t);
        head_inner = std::max(head_inner, d.error);
        return std::expm1(-t) / t - d.value;
      },
      head_points, q);

  const double span = std::log(problem.horizon);
  std::vector<double> mid_points;
  const auto pieces = static_cast<std::size_t>(std::ceil(span / 0.5));
  for (std::size_t i = 0; i <= pieces; ++i) mid_points.push_back(span * static_cast<double>(i) / static_cast<double>(pieces));
  double mid_inner = 0;
  const QuadratureResult mid = integrate_adaptive(
      [&](double u) {
        const double t = std::exp(u);
        const ScaledValue k = problem.kernel(t);
        mid_inner = std::max(mid_inner, k.error);
        return std::exp(-t) - k.value;
      },
      mid_points, q);

  if (!head.converged || !mid.converged)
    throw QuadratureBudgetExceeded("entropy integral did not reach tolerance " + std::to_string(options.tolerance));

  const double value = head.value + mid.value - problem.tail.integral(problem.horizon);
  const double error = head.error + mid.error + head_inner + mid_inner * span + problem.tail.error(problem.horizon) +
                       std::exp(-problem.horizon) + 1e-15 * (std::abs(head.value) + std::abs(mid.value));
  return EntropyReport{Interval::from_ball(value, error, 64), method, error};
}

// (e^{-2t} I_0(2t) - 1)/t
double scaled_i0_deficit(double t) {
  return std::exp(-2 * t) * bessel_i0_deficit_over_t(t) + std::expm1(-2 * t) / t;
}

std::vector<std::uint64_t> with_unit(std::span<const std::uint64_t> gammas) {
  std::vector<std::uint64_t> out{1};
  out.insert(out.end(), gammas.begin(), gammas.end());
  return out;
}

double largest_generator(std::span<const std::uint64_t> generators) {
  return static_cast<double>(*std::max_element(generators.begin(), generators.end()));
}

// Leading large-t behaviour of the heat kernel H_L: A t^{-1/2}(1 + b_1/t).
struct HeatAsymptotics {
  double amplitude;
  double b1;
};

HeatAsymptotics heat_asymptotics(std::span<const std::uint64_t> generators) {
  double c2 = 0, c4 = 0;
  for (std::uint64_t g : generators) {
    const double x = static_cast<double>(g) * static_cast<double>(g);
    c2 += x;
    c4 += x * x / 12;
  }
  return {1 / (2 * std::sqrt(std::numbers::pi * c2)), 3 * c4 / (4 * c2 * c2)};
}

void check_full_list(std::span<const std::uint64_t> generators) {
  if (generators.empty() || generators.front() != 1)
    throw InvalidInput("generator list must start with 1");
  for (std::uint64_t g : generators)
    if (g == 0) throw InvalidInput("generators must be positive");
}

std::vector<std::int64_t> as_signed(std::span<const std::uint64_t> values) {
  return {values.begin(), values.end()};
}

}  // namespace

const char* to_string(EntropyMethod method) {
  switch (method) {
    case EntropyMethod::argcosh_sum: return "argcosh-sum";
    case EntropyMethod::bessel_integral: return "bessel-integral";
    case EntropyMethod::riemann_limit: return "riemann-limit";
  }
  return "unknown";
}

ThetaFunction::ThetaFunction(std::uint64_t beta, std::span<const std::uint64_t> gammas, Interval::Precision prec) {
  validate_base_generators(beta, gammas);
  eigenvalues_ = circulant_spectrum(CirculantSpec(beta, as_signed(gammas)), prec);
  for (const SpectrumPoint& p : eigenvalues_)
    if (p.is_zero()) ++zero_count_;
}

double ThetaFunction::operator()(double t) const {
  double sum = 0;
  for (const SpectrumPoint& p : eigenvalues_) sum += p.is_zero() ? 1.0 : std::exp(-p.value.mid() * t);
  return sum;
}

EntropyReport z_nf_sum(std::uint64_t beta, std::span<const std::uint64_t> gammas, const EntropyOptions& options) {
  validate_base_generators(beta, gammas);
  const auto spectrum = circulant_spectrum(CirculantSpec(beta, as_signed(gammas)), options.precision);
  Interval sum(0, options.precision);
  for (const SpectrumPoint& p : spectrum) {
    if (p.index.front() == 0) continue;
    sum += acosh1p(p.value / 2);
  }
  sum = sum / static_cast<long>(beta);
  const double rad = sum.rad();
  return EntropyReport{std::move(sum), EntropyMethod::argcosh_sum, rad};
}

EntropyReport z_nf_integral(std::uint64_t beta, std::span<const std::uint64_t> gammas,
                            const EntropyOptions& options) {
  const ThetaFunction theta(beta, gammas, options.precision);
  std::vector<double> mu;
  double mu_min = 0;
  for (const SpectrumPoint& p : theta.eigenvalues()) {
    const double m = p.is_zero() ? 0.0 : p.value.mid();
    mu.push_back(m);
    if (m > 0 && (mu_min == 0 || m < mu_min)) mu_min = m;
  }
  const double b = static_cast<double>(beta);

  EntropyIntegral problem;
  problem.deficit = [&](double t) {
    const double j = bessel_i0_deficit_over_t(t);
    double sum = 0;
    for (double m : mu) {
      const double a = m + 2;
      sum += std::exp(-a * t) * j + std::expm1(-a * t) / t;
    }
    return ScaledValue{sum / b, 0.0};
  };
  problem.kernel = [&](double t) {
    const ScaledValue s = bessel_i_scaled(0, 2 * t);
    const double th = theta(t) / b;
    return ScaledValue{th * s.value, th * s.error};
  };
  problem.horizon = mu_min > 0 ? std::max(1e6, 80 / mu_min) : 1e6;
  problem.tail.amplitude = static_cast<double>(theta.zero_count()) / (b * 2 * std::sqrt(std::numbers::pi));
  problem.tail.power = 0.5;
  problem.tail.coefficients = {1.0 / 16, 9.0 / 512};
  problem.tail.omitted = 225.0 / 24576;
  return integrate_entropy(problem, EntropyMethod::bessel_integral, options);
}

EntropyReport z_f(std::span<const std::uint64_t> gammas_full, const EntropyOptions& options) {
  check_full_list(gammas_full);
  const std::vector<std::uint64_t> gens(gammas_full.begin(), gammas_full.end());
  const double gmax = largest_generator(gens);
  const HeatAsymptotics asym = heat_asymptotics(gens);

  EntropyIntegral problem;
  problem.deficit = [&](double t) { return circulant_heat_kernel_deficit(gens, t, kInnerTolerance); };
  problem.kernel = [&](double t) { return circulant_heat_kernel(gens, t, kInnerTolerance); };
  problem.horizon = std::max(1e6, 1e4 * gmax * gmax);
  problem.tail.amplitude = asym.amplitude;
  problem.tail.power = 0.5;
  problem.tail.coefficients = {asym.b1};
  problem.tail.omitted = 1 + 10 * asym.b1 * asym.b1;
  return integrate_entropy(problem, EntropyMethod::bessel_integral, options);
}

EntropyReport riemann_limit(std::span<const std::uint64_t> gammas, RiemannRoute route, const EntropyOptions& options) {
  const std::vector<std::uint64_t> gens = with_unit(gammas);
  check_full_list(gens);
  const double gmax = largest_generator(gens);

  if (route == RiemannRoute::angular) {
    // 2∫_0^{1/2} argcosh(1 + λ(x)/2) dx; λ vanishes only at x = 0.
    auto f = [&](double x) {
      double half_lambda = 0;
      for (std::uint64_t g : gens) {
        const double s = std::sin(std::numbers::pi * static_cast<double>(g) * x);
        half_lambda += 2 * s * s;
      }
      return 2 * std::log1p(half_lambda + std::sqrt(half_lambda * (half_lambda + 2)));
    };
    const auto panels = static_cast<std::size_t>(std::ceil(8 * gmax));
    std::vector<double> points;
    for (std::size_t i = 0; i <= panels; ++i) points.push_back(0.5 * static_cast<double>(i) / static_cast<double>(panels));
    QuadratureOptions q;
    q.abs_tol = options.tolerance / 4;
    const QuadratureResult r = integrate_adaptive(f, points, q);
    if (!r.converged) throw QuadratureBudgetExceeded("angular integral did not reach tolerance");
    const double error = r.error + 1e-15 * std::abs(r.value);
    return EntropyReport{Interval::from_ball(r.value, error, 64), EntropyMethod::riemann_limit, error};
  }

  const HeatAsymptotics asym = heat_asymptotics(gens);
  EntropyIntegral problem;
  problem.deficit = [&](double t) {
    const ScaledValue s = bessel_i_scaled(0, 2 * t);
    const ScaledValue h = circulant_heat_kernel_deficit(gens, t, kInnerTolerance);
    return ScaledValue{s.value * h.value + scaled_i0_deficit(t), s.value * h.error + s.error / t * std::abs(h.value)};
  };
  problem.kernel = [&](double t) {
    const ScaledValue s = bessel_i_scaled(0, 2 * t);
    const ScaledValue h = circulant_heat_kernel(gens, t, kInnerTolerance);
    return ScaledValue{s.value * h.value, s.error * h.value + s.value * h.error};
  };
  problem.horizon = std::max(1e6, 1e4 * gmax * gmax);
  problem.tail.amplitude = asym.amplitude / (2 * std::sqrt(std::numbers::pi));
  problem.tail.power = 1.0;
  problem.tail.coefficients = {1.0 / 16 + asym.b1};
  problem.tail.omitted = 1 + 10 * asym.b1 * asym.b1;
  return integrate_entropy(problem, EntropyMethod::riemann_limit, options);
}

ComparisonTable compare_nf_vs_f(std::span<const std::uint64_t> gammas, std::uint64_t gamma_d,
                                std::span<const std::uint64_t> betas, const EntropyOptions& options) {
  if (gamma_d == 0) throw InvalidInput("gamma_d must be positive");
  ComparisonTable table;
  table.gammas.assign(gammas.begin(), gammas.end());
  table.gamma_d = gamma_d;
  std::vector<std::uint64_t> fixed = with_unit(gammas);
  fixed.push_back(gamma_d);
  table.z_f = z_f(fixed, options);

  const std::vector<std::uint64_t> base = with_unit(gammas);
  std::vector<std::uint64_t> sorted(betas.begin(), betas.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::uint64_t beta : sorted) {
    if (beta == 0 || std::any_of(base.begin(), base.end(), [&](std::uint64_t g) { return g > beta / 2; })) continue;
    ComparisonRow row{beta, z_nf_sum(beta, base, options)};
    row.certified_greater = table.z_f.value.certainly_less(row.z_nf.value);
    row.inconclusive = row.z_nf.value.overlaps(table.z_f.value);
    table.rows.push_back(std::move(row));
  }
  for (auto it = table.rows.rbegin(); it != table.rows.rend() && it->certified_greater; ++it) table.observed_b = it->beta;
  return table;
}

}  // namespace treecount
