#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treecount/interval.hpp"
#include "treecount/rational.hpp"

namespace treecount {

/// An undirected edge {u, v} (u <= v) carried `multiplicity` times. u == v is a loop.
struct Edge {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  std::uint64_t multiplicity = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Multigraph on vertices {0, ..., vertex_count - 1}, stored as unordered pairs
/// with multiplicity counters, sorted by (u, v).
class EdgeMultiset {
 public:
  explicit EdgeMultiset(std::uint64_t vertex_count);
  EdgeMultiset(std::uint64_t vertex_count, std::vector<Edge> edges);

  std::uint64_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Number of incident edge-ends; a loop contributes two.
  std::uint64_t degree(std::uint64_t v) const;
  /// Edges counted with multiplicity, loops included.
  std::uint64_t edge_count() const;
  std::uint64_t loop_count() const;
  std::uint64_t multiplicity(std::uint64_t u, std::uint64_t v) const;

  /// Same graph on relabelled vertices: vertex v becomes perm[v].
  EdgeMultiset relabelled(std::span<const std::uint64_t> perm) const;

 private:
  std::uint64_t vertex_count_;
  std::vector<Edge> edges_;
};

/// Circulant graph C^{g_1,...,g_d}_n: vertex v is joined to v ± g_i mod n.
///
/// Generators are canonicalised to min(g mod n, n - g mod n) and kept as a
/// sorted multiset. A generator reducing to 0 is rejected unless `allow_loops`
/// is set, in which case it is kept as a loop marker.
class CirculantSpec {
 public:
  CirculantSpec(std::uint64_t vertex_count, std::vector<std::int64_t> generators, bool allow_loops = false);

  std::uint64_t vertex_count() const { return vertex_count_; }
  const std::vector<std::uint64_t>& generators() const { return generators_; }
  std::uint64_t degree() const { return 2 * generators_.size(); }
  bool allow_loops() const { return allow_loops_; }

  std::string describe() const;

 private:
  std::uint64_t vertex_count_;
  std::vector<std::uint64_t> generators_;
  bool allow_loops_;
};

/// The family C^{1, γ_1 n, ..., γ_{d-1} n}_{β n} with 1 <= γ_m <= floor(β/2).
class ScaledCirculantFamily {
 public:
  ScaledCirculantFamily(std::uint64_t beta, std::vector<std::uint64_t> base_generators, std::uint64_t scale);

  std::uint64_t beta() const { return beta_; }
  const std::vector<std::uint64_t>& base_generators() const { return base_; }
  std::uint64_t scale() const { return scale_; }
  /// Number of generator slots d (the unit generator plus the scaled ones).
  std::size_t dimension() const { return base_.size() + 1; }

  CirculantSpec instantiate() const;
  std::string describe() const;

 private:
  std::uint64_t beta_;
  std::vector<std::uint64_t> base_;
  std::uint64_t scale_;
};

/// Checks 1 <= γ_m <= floor(β/2) for a base generator list; throws InvalidInput.
void validate_base_generators(std::uint64_t beta, std::span<const std::uint64_t> gammas);

/// Discrete torus Z^d / Λ Z^d with Λ = diag(α_1, ..., α_{d-1}, n).
class TorusSpec {
 public:
  TorusSpec(std::vector<std::uint64_t> alphas, std::uint64_t last);

  const std::vector<std::uint64_t>& alphas() const { return alphas_; }
  std::uint64_t last() const { return last_; }
  std::size_t dimension() const { return alphas_.size() + 1; }
  /// det A = α_1 ... α_{d-1}.
  std::uint64_t base_determinant() const;
  /// det Λ = det A · n.
  std::uint64_t determinant() const;
  /// All diagonal entries, α's first.
  std::vector<std::uint64_t> moduli() const;

  std::string describe() const;

 private:
  std::vector<std::uint64_t> alphas_;
  std::uint64_t last_;
};

EdgeMultiset build_multigraph(const CirculantSpec& spec);
/// Nearest-neighbour graph of the torus; α = 1 gives loops, α = 2 gives double edges.
EdgeMultiset build_torus_multigraph(const TorusSpec& spec);

/// One Laplacian eigenvalue λ_k = Σ_j (2 - 2 cos(2π a_j)) with its cosine
/// arguments a_j kept as exact turn fractions.
struct SpectrumPoint {
  std::vector<std::int64_t> index;
  Interval value;
  std::vector<Rational> angles;

  /// Decided from the exact angles, never from `value`.
  bool is_zero() const;
};

std::vector<SpectrumPoint> circulant_spectrum(const CirculantSpec& spec, Interval::Precision prec = 128);
std::vector<SpectrumPoint> torus_spectrum(const TorusSpec& spec, Interval::Precision prec = 128);
/// Spectrum of the Cayley graph of Z/m_1 × ... × Z/m_r with the unit generators.
/// An empty modulus list is the one-point group with spectrum {0}.
std::vector<SpectrumPoint> box_spectrum(std::span<const std::uint64_t> moduli, Interval::Precision prec = 128);

/// 4 Σ_j sin²(π a_j); the encoding of 2d - 2Σcos(2π a_j) used throughout.
Interval laplacian_eigenvalue(std::span<const Rational> angles, Interval::Precision prec);

}  // namespace treecount
