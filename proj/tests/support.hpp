#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "treecount/graph.hpp"

namespace treecount::testing {

// Integer sequences s_0 = 2, s_1 = c, s_{k+1} = c s_k - s_{k-1}.
inline mpz_class lucas_like(long c, unsigned n) {
  mpz_class prev = 2, cur = c;
  if (n == 0) return prev;
  for (unsigned k = 1; k < n; ++k) {
    mpz_class next = c * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// τ(C^{1,n}_{3n}) = (n/3)(X_n + 1)², X_n = a^{2n} + a^{-2n}, a = √(7/4) + √(3/4).
inline mpz_class tau_c1n_3n(unsigned n) {
  const mpz_class x = lucas_like(5, n);
  const mpz_class num = n * (x + 1) * (x + 1);
  if (num % 3 != 0) return -1;
  return num / 3;
}

// τ(C^{1,2n,3n}_{6n}) = (n/6)(Y_n - 1)²(W_n + 2)(X_n + 1)².
inline mpz_class tau_c12n3n_6n(unsigned n) {
  const mpz_class x = lucas_like(5, n);
  const mpz_class y = lucas_like(9, n);
  const mpz_class w = lucas_like(6, n);
  const mpz_class num = n * (y - 1) * (y - 1) * (w + 2) * (x + 1) * (x + 1);
  if (num % 6 != 0) return -1;
  return num / 6;
}

// Deletion-contraction with leaf stripping and memoisation; exponential.
class DeletionContraction {
 public:
  mpz_class count(const EdgeMultiset& g) {
    Graph h;
    h.vertices = g.vertex_count();
    for (const Edge& e : g.edges())
      if (e.u != e.v) h.edges[{e.u, e.v}] += e.multiplicity;
    return run(h);
  }

 private:
  struct Graph {
    std::uint64_t vertices = 0;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> edges;
  };

  std::map<std::string, mpz_class> memo_;

  static std::string key(const Graph& g) {
    std::string s = std::to_string(g.vertices) + ":";
    for (const auto& [e, m] : g.edges) s += std::to_string(e.first) + "-" + std::to_string(e.second) + "x" + std::to_string(m) + ";";
    return s;
  }

  static bool connected(const Graph& g) {
    std::vector<std::uint64_t> parent(g.vertices);
    for (std::uint64_t i = 0; i < g.vertices; ++i) parent[i] = i;
    auto find = [&](std::uint64_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::uint64_t comps = g.vertices;
    for (const auto& [e, m] : g.edges) {
      const auto a = find(e.first), b = find(e.second);
      if (a != b) {
        parent[a] = b;
        --comps;
      }
    }
    return comps == 1;
  }

  // Drops vertex v (merged into w when w is given) and renumbers the rest.
  static Graph merge(const Graph& g, std::uint64_t v, std::uint64_t w, bool keep_edges_of_v) {
    Graph h;
    h.vertices = g.vertices - 1;
    auto relabel = [&](std::uint64_t x) { return x == v ? w : x; };
    auto shift = [&](std::uint64_t x) { return x > v ? x - 1 : x; };
    for (const auto& [e, m] : g.edges) {
      if (!keep_edges_of_v && (e.first == v || e.second == v)) continue;
      std::uint64_t a = shift(relabel(e.first)), b = shift(relabel(e.second));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      h.edges[{a, b}] += m;
    }
    return h;
  }

  mpz_class run(const Graph& g) {
    if (g.vertices == 1) return 1;
    if (!connected(g)) return 0;
    const std::string k = key(g);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;

    std::vector<std::uint64_t> distinct(g.vertices, 0);
    for (const auto& [e, m] : g.edges) {
      ++distinct[e.first];
      ++distinct[e.second];
    }
    mpz_class result;
    bool done = false;
    for (std::uint64_t v = 0; v < g.vertices && !done; ++v) {
      if (distinct[v] != 1) continue;
      for (const auto& [e, m] : g.edges)
        if (e.first == v || e.second == v) {
          result = mpz_class(std::to_string(m)) * run(merge(g, v, 0, false));
          break;
        }
      done = true;
    }
    if (!done) {
      const auto [e, m] = *g.edges.begin();
      Graph without = g;
      without.edges.erase(e);
      result = run(without) + mpz_class(std::to_string(m)) * run(merge(g, e.second, e.first, true));
    }
    memo_.emplace(k, result);
    return result;
  }
};

}  // namespace treecount::testing
