#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "treecount/graph.hpp"
#include "treecount/interval.hpp"
#include "treecount/oracle.hpp"

namespace treecount {

/// Guard bits on top of the a-priori magnitude of the result. Starts at
/// `initial_bits` and doubles until rounding succeeds or `max_bits` is passed.
struct PrecisionPolicy {
  long initial_bits = 128;
  long max_bits = 1L << 20;

  void validate() const;
};

/// Results above this many bits are refused in exact mode.
inline constexpr double kExactResultBitCap = 1e8;

/// One factor of the product formula.
struct FactorTerm {
  std::vector<std::int64_t> index;
  Interval mu;      // subgraph eigenvalue
  Interval theta;   // acosh(1 + mu/2)
  Rational omega;   // angle 2π·omega; 0 for the torus
  Interval factor;  // 2cosh(n theta) - 2cos(2π omega)
};

struct ClosedFormResult {
  BigCount tau;
  long precision_bits = 0;
  int attempts = 0;
  std::vector<FactorTerm> factors;
};

struct EvalOptions {
  PrecisionPolicy precision;
  /// Test hook: may rewrite factor i before the product is formed.
  std::function<void(std::size_t, Interval&)> factor_hook;
};

/// The unique integer inside `enclosure` if the enclosure is narrower than 1/2
/// and holds exactly one; nullopt means more precision is needed.
std::optional<mpz_class> certified_round(const Interval& enclosure);

/// 2cosh(nθ) - 2cos(2π·omega), the closed form of
/// Π_{l<n} (2coshθ - 2cos((2π·omega + 2πl)/n)). Computed as
/// 4sinh²(nθ/2) + 4sin²(π·omega), which has no cancellation.
Interval telescoped_factor(const Interval& theta, const Rational& omega, std::uint64_t n);

/// Spanning trees of C^{1,γ_1 n,...,γ_{d-1} n}_{βn} from the β - 1 factor product.
ClosedFormResult evaluate_scaled_circulant(const ScaledCirculantFamily& family, const EvalOptions& options = {});
BigCount tau_scaled_circulant(const ScaledCirculantFamily& family, const EvalOptions& options = {});

/// Spanning trees of Z^d / diag(α_1, ..., α_{d-1}, n) from the det(A) - 1 factor product.
ClosedFormResult evaluate_torus(const TorusSpec& spec, const EvalOptions& options = {});
BigCount tau_torus(const TorusSpec& spec, const EvalOptions& options = {});

/// ln τ without forming τ; usable for n far beyond exact mode.
Interval log_tau_estimate(const ScaledCirculantFamily& family, Interval::Precision prec = 128);
Interval log_tau_estimate(const TorusSpec& spec, Interval::Precision prec = 128);

/// Certified integer (1/n)·Π λ_k straight from the Laplacian spectrum of a
/// circulant (the cycle formula for C^1_n). Throws DisconnectedGraph.
BigCount tau_from_spectrum(const CirculantSpec& spec, const PrecisionPolicy& policy = {});

/// a-priori log2 of τ for the family, used for precision planning and the cap.
double estimated_log2_tau(const ScaledCirculantFamily& family);
double estimated_log2_tau(const TorusSpec& spec);

}  // namespace treecount
