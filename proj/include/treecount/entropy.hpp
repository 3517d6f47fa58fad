#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "treecount/graph.hpp"
#include "treecount/interval.hpp"

namespace treecount {

enum class EntropyMethod { argcosh_sum, bessel_integral, riemann_limit };

const char* to_string(EntropyMethod method);

/// Tree entropy in nats per vertex. `value` is an enclosure when the method
/// is argcosh_sum; for the integral methods its radius is `error_bound`, an
/// estimate built from the quadrature error estimates and the tail model.
struct EntropyReport {
  Interval value;
  EntropyMethod method = EntropyMethod::argcosh_sum;
  double error_bound = 0.0;
};

/// θ(t) = Σ_{k<β} e^{-μ_k t} over the Laplacian spectrum of C^{γ...}_β.
class ThetaFunction {
 public:
  ThetaFunction(std::uint64_t beta, std::span<const std::uint64_t> gammas, Interval::Precision prec = 128);

  const std::vector<SpectrumPoint>& eigenvalues() const { return eigenvalues_; }
  std::size_t zero_count() const { return zero_count_; }
  double operator()(double t) const;

 private:
  std::vector<SpectrumPoint> eigenvalues_;
  std::size_t zero_count_ = 0;
};

struct EntropyOptions {
  /// Target absolute error of integral representations.
  double tolerance = 1e-10;
  Interval::Precision precision = 128;
};

/// (1/β) Σ_{k=1}^{β-1} argcosh(1 + μ_k/2) for the family with base list
/// `gammas`, as a rigorous enclosure. β = 1 gives 0.
EntropyReport z_nf_sum(std::uint64_t beta, std::span<const std::uint64_t> gammas, const EntropyOptions& options = {});

/// ∫_0^∞ (e^{-t} - (1/β) θ(t) e^{-2t} I_0(2t)) dt/t.
EntropyReport z_nf_integral(std::uint64_t beta, std::span<const std::uint64_t> gammas,
                            const EntropyOptions& options = {});

/// Entropy of the fixed-generator circulants C^{L}_n as n grows, where L is
/// the full generator list and starts with 1:
/// ∫_0^∞ (e^{-t} - H_L(t)) dt/t with H_L the heat kernel of Z under L.
EntropyReport z_f(std::span<const std::uint64_t> gammas_full, const EntropyOptions& options = {});

enum class RiemannRoute { bessel, angular };

/// lim_{β→∞} z_NF(β; 1, γ...). The bessel route integrates
/// e^{-t} - e^{-2t} I_0(2t) H_{(1,γ...)}(t); the angular route integrates
/// argcosh(1 + λ(x)/2) over a period, λ(x) = 4 sin²(πx) + Σ 4 sin²(πγx).
EntropyReport riemann_limit(std::span<const std::uint64_t> gammas, RiemannRoute route = RiemannRoute::bessel,
                            const EntropyOptions& options = {});

struct ComparisonRow {
  std::uint64_t beta = 0;
  EntropyReport z_nf;
  /// z_NF's enclosure lies strictly above z_F's.
  bool certified_greater = false;
  /// Enclosures overlap; no inequality can be read off.
  bool inconclusive = false;
};

struct ComparisonTable {
  std::vector<std::uint64_t> gammas;
  std::uint64_t gamma_d = 0;
  EntropyReport z_f;
  std::vector<ComparisonRow> rows;
  /// Smallest β of the table from which every later row is certified greater.
  /// Observed on this range only.
  std::optional<std::uint64_t> observed_b;
};

/// z_NF(β; 1, γ...) against z_F(1, γ..., γ_d) for each β in `betas`. Values of
/// β for which (1, γ...) is not a valid base list are skipped.
ComparisonTable compare_nf_vs_f(std::span<const std::uint64_t> gammas, std::uint64_t gamma_d,
                                std::span<const std::uint64_t> betas, const EntropyOptions& options = {});

}  // namespace treecount
