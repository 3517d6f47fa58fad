#include "treecount/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "treecount/errors.hpp"

namespace treecount {

namespace {

std::vector<Edge> normalise(std::uint64_t vertex_count, std::vector<Edge> edges) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> merged;
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) throw InvalidInput("edge endpoint out of range");
    if (e.multiplicity == 0) continue;
    merged[std::minmax(e.u, e.v)] += e.multiplicity;
  }
  std::vector<Edge> out;
  out.reserve(merged.size());
  for (const auto& [key, m] : merged) out.push_back(Edge{key.first, key.second, m});
  return out;
}

std::string join(std::span<const std::uint64_t> values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  return os.str();
}

std::uint64_t checked_product(std::span<const std::uint64_t> values) {
  std::uint64_t p = 1;
  for (std::uint64_t v : values) {
    if (v != 0 && p > std::numeric_limits<std::uint64_t>::max() / v) throw InvalidInput("determinant overflows 64 bits");
    p *= v;
  }
  return p;
}

// Cayley multigraph of a product of cyclic groups: one edge {v, v + g} per
// vertex and generator. For 2g = 0 both endpoints emit the same pair, which
// yields the double edge the Laplacian symbol requires.
EdgeMultiset cayley_multigraph(std::span<const std::uint64_t> moduli,
                               const std::vector<std::vector<std::uint64_t>>& generators) {
  const std::uint64_t n = checked_product(moduli);
  std::vector<Edge> edges;
  edges.reserve(n * generators.size());
  std::vector<std::uint64_t> coords(moduli.size());
  for (std::uint64_t v = 0; v < n; ++v) {
    std::uint64_t rest = v;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      coords[i] = rest % moduli[i];
      rest /= moduli[i];
    }
    for (const auto& g : generators) {
      std::uint64_t w = 0, stride = 1;
      for (std::size_t i = 0; i < moduli.size(); ++i) {
        w += ((coords[i] + g[i]) % moduli[i]) * stride;
        stride *= moduli[i];
      }
      edges.push_back(Edge{v, w, 1});
    }
  }
  return EdgeMultiset(n, std::move(edges));
}

}  // namespace

EdgeMultiset::EdgeMultiset(std::uint64_t vertex_count) : vertex_count_(vertex_count) {}

EdgeMultiset::EdgeMultiset(std::uint64_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(normalise(vertex_count, std::move(edges))) {}

std::uint64_t EdgeMultiset::degree(std::uint64_t v) const {
  std::uint64_t d = 0;
  for (const Edge& e : edges_) {
    if (e.u == v) d += e.multiplicity;
    if (e.v == v) d += e.multiplicity;
  }
  return d;
}

std::uint64_t EdgeMultiset::edge_count() const {
  std::uint64_t c = 0;
  for (const Edge& e : edges_) c += e.multiplicity;
  return c;
}

std::uint64_t EdgeMultiset::loop_count() const {
  std::uint64_t c = 0;
  for (const Edge& e : edges_)
    if (e.u == e.v) c += e.multiplicity;
  return c;
}

std::uint64_t EdgeMultiset::multiplicity(std::uint64_t u, std::uint64_t v) const {
  const auto key = std::minmax(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, [](const Edge& e, const auto& k) {
    return std::pair(e.u, e.v) < std::pair(k.first, k.second);
  });
  if (it != edges_.end() && it->u == key.first && it->v == key.second) return it->multiplicity;
  return 0;
}

EdgeMultiset EdgeMultiset::relabelled(std::span<const std::uint64_t> perm) const {
  if (perm.size() != vertex_count_) throw InvalidInput("permutation size mismatch");
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back(Edge{perm[e.u], perm[e.v], e.multiplicity});
  return EdgeMultiset(vertex_count_, std::move(out));
}

CirculantSpec::CirculantSpec(std::uint64_t vertex_count, std::vector<std::int64_t> generators, bool allow_loops)
    : vertex_count_(vertex_count), allow_loops_(allow_loops) {
  if (vertex_count == 0) throw InvalidInput("circulant needs at least one vertex");
  const auto n = static_cast<std::int64_t>(vertex_count);
  generators_.reserve(generators.size());
  for (std::int64_t g : generators) {
    std::int64_t r = g % n;
    if (r < 0) r += n;
    const auto canonical = static_cast<std::uint64_t>(r == 0 ? 0 : std::min(r, n - r));
    if (canonical == 0 && !allow_loops)
      throw InvalidInput("generator " + std::to_string(g) + " is 0 mod " + std::to_string(n));
    generators_.push_back(canonical);
  }
  std::sort(generators_.begin(), generators_.end());
}

std::string CirculantSpec::describe() const {
  return "C^{" + join(generators_) + "}_" + std::to_string(vertex_count_);
}

void validate_base_generators(std::uint64_t beta, std::span<const std::uint64_t> gammas) {
  if (beta == 0) throw InvalidInput("beta must be positive");
  for (std::uint64_t g : gammas) {
    if (g < 1 || g > beta / 2)
      throw InvalidInput("generator " + std::to_string(g) + " outside [1, floor(beta/2)] for beta=" +
                         std::to_string(beta));
  }
}

ScaledCirculantFamily::ScaledCirculantFamily(std::uint64_t beta, std::vector<std::uint64_t> base_generators,
                                             std::uint64_t scale)
    : beta_(beta), base_(std::move(base_generators)), scale_(scale) {
  if (scale_ == 0) throw InvalidInput("scale n must be positive");
  validate_base_generators(beta_, base_);
  std::sort(base_.begin(), base_.end());
  if (beta_ > std::numeric_limits<std::uint32_t>::max() || scale_ > (std::uint64_t{1} << 40))
    throw InvalidInput("family parameters too large");
}

CirculantSpec ScaledCirculantFamily::instantiate() const {
  std::vector<std::int64_t> gens{1};
  for (std::uint64_t g : base_) gens.push_back(static_cast<std::int64_t>(g * scale_));
  // Only β = n = 1 reduces a generator to zero: the one-vertex cycle.
  return CirculantSpec(beta_ * scale_, std::move(gens), /*allow_loops=*/true);
}

std::string ScaledCirculantFamily::describe() const {
  std::ostringstream os;
  os << "beta=" << beta_ << ";gammas=" << join(base_) << ";n=" << scale_;
  return os.str();
}

TorusSpec::TorusSpec(std::vector<std::uint64_t> alphas, std::uint64_t last) : alphas_(std::move(alphas)), last_(last) {
  if (last_ == 0) throw InvalidInput("torus side n must be positive");
  for (std::uint64_t a : alphas_)
    if (a == 0) throw InvalidInput("torus alphas must be positive");
  (void)determinant();
}

std::uint64_t TorusSpec::base_determinant() const { return checked_product(alphas_); }

std::uint64_t TorusSpec::determinant() const {
  const std::vector<std::uint64_t> m = moduli();
  return checked_product(m);
}

std::vector<std::uint64_t> TorusSpec::moduli() const {
  std::vector<std::uint64_t> m = alphas_;
  m.push_back(last_);
  return m;
}

std::string TorusSpec::describe() const {
  std::ostringstream os;
  os << "alphas=" << join(alphas_) << ";n=" << last_;
  return os.str();
}

EdgeMultiset build_multigraph(const CirculantSpec& spec) {
  const std::uint64_t n = spec.vertex_count();
  std::vector<std::vector<std::uint64_t>> gens;
  for (std::uint64_t g : spec.generators()) gens.push_back({g % n});
  const std::uint64_t moduli[1] = {n};
  return cayley_multigraph(moduli, gens);
}

EdgeMultiset build_torus_multigraph(const TorusSpec& spec) {
  const std::vector<std::uint64_t> moduli = spec.moduli();
  std::vector<std::vector<std::uint64_t>> gens;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::vector<std::uint64_t> e(moduli.size(), 0);
    e[i] = 1 % moduli[i];
    gens.push_back(std::move(e));
  }
  return cayley_multigraph(moduli, gens);
}

bool SpectrumPoint::is_zero() const {
  return std::all_of(angles.begin(), angles.end(), [](const Rational& a) { return a.is_integer(); });
}

Interval laplacian_eigenvalue(std::span<const Rational> angles, Interval::Precision prec) {
  Interval sum(prec);
  for (const Rational& a : angles) {
    // 2 - 2cos(2πa) = 4 sin²(πa); the sine form keeps small eigenvalues accurate.
    sum += sqr(sin_turn(a / Rational(2), prec));
  }
  return sum * 4;
}

std::vector<SpectrumPoint> circulant_spectrum(const CirculantSpec& spec, Interval::Precision prec) {
  const std::uint64_t n = spec.vertex_count();
  std::vector<SpectrumPoint> out;
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    SpectrumPoint p{{static_cast<std::int64_t>(k)}, Interval(prec), {}};
    for (std::uint64_t g : spec.generators())
      p.angles.emplace_back(static_cast<std::int64_t>((k * g) % n), static_cast<std::int64_t>(n));
    p.value = laplacian_eigenvalue(p.angles, prec);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<SpectrumPoint> box_spectrum(std::span<const std::uint64_t> moduli, Interval::Precision prec) {
  const std::uint64_t total = checked_product(moduli);
  std::vector<SpectrumPoint> out;
  out.reserve(total);
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    SpectrumPoint p{{}, Interval(prec), {}};
    std::uint64_t rest = flat;
    for (std::uint64_t m : moduli) {
      const std::uint64_t k = rest % m;
      rest /= m;
      p.index.push_back(static_cast<std::int64_t>(k));
      p.angles.emplace_back(static_cast<std::int64_t>(k), static_cast<std::int64_t>(m));
    }
    p.value = laplacian_eigenvalue(p.angles, prec);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<SpectrumPoint> torus_spectrum(const TorusSpec& spec, Interval::Precision prec) {
  const std::vector<std::uint64_t> m = spec.moduli();
  return box_spectrum(m, prec);
}

}  // namespace treecount
