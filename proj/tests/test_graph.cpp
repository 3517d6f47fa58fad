#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "treecount/errors.hpp"
#include "treecount/graph.hpp"
#include "treecount/oracle.hpp"

using namespace treecount;

namespace {

std::vector<double> mids(const std::vector<SpectrumPoint>& s) {
  std::vector<double> out;
  for (const SpectrumPoint& p : s) out.push_back(p.value.mid());
  return out;
}

}  // namespace

TEST_CASE("generator canonicalisation") {
  const CirculantSpec s(7, {6, -2, 9, 3});
  CHECK(s.generators() == std::vector<std::uint64_t>{1, 2, 2, 3});
  CHECK_THROWS_AS(CirculantSpec(5, {5}), InvalidInput);
  CHECK(CirculantSpec(5, {5}, true).generators() == std::vector<std::uint64_t>{0});
  CHECK_THROWS_AS(CirculantSpec(0, {1}), InvalidInput);
}

TEST_CASE("multigraph examples") {
  const EdgeMultiset c4 = build_multigraph(CirculantSpec(4, {1}));
  CHECK(c4.edge_count() == 4);
  for (std::uint64_t v = 0; v < 4; ++v) CHECK(c4.degree(v) == 2);

  const EdgeMultiset two = build_multigraph(CirculantSpec(2, {1, 1}));
  CHECK(two.vertex_count() == 2);
  CHECK(two.multiplicity(0, 1) == 4);
  CHECK(two.edge_count() == 4);

  const EdgeMultiset k5 = build_multigraph(CirculantSpec(5, {1, 2}));
  CHECK(k5.edge_count() == 10);
  for (std::uint64_t u = 0; u < 5; ++u)
    for (std::uint64_t v = u + 1; v < 5; ++v) CHECK(k5.multiplicity(u, v) == 1);

  const EdgeMultiset loop = build_multigraph(ScaledCirculantFamily(1, {}, 1).instantiate());
  CHECK(loop.vertex_count() == 1);
  CHECK(loop.loop_count() == 1);
}

TEST_CASE("torus multigraph conventions") {
  const EdgeMultiset t = build_torus_multigraph(TorusSpec({2}, 2));
  CHECK(t.vertex_count() == 4);
  for (std::uint64_t v = 0; v < 4; ++v) CHECK(t.degree(v) == 4);
  CHECK(t.multiplicity(0, 1) == 2);
  const EdgeMultiset inert = build_torus_multigraph(TorusSpec({1}, 5));
  CHECK(inert.loop_count() == 5);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(ScaledCirculantFamily(4, {3}, 2), InvalidInput);
  CHECK_THROWS_AS(ScaledCirculantFamily(4, {0}, 2), InvalidInput);
  CHECK_THROWS_AS(ScaledCirculantFamily(4, {1}, 0), InvalidInput);
  const ScaledCirculantFamily f(6, {3, 2}, 4);
  CHECK(f.base_generators() == std::vector<std::uint64_t>{2, 3});
  CHECK(f.dimension() == 3);
  CHECK(f.describe() == "beta=6;gammas=2,3;n=4");
  CHECK(f.instantiate().generators() == std::vector<std::uint64_t>{1, 8, 12});
  CHECK(TorusSpec({2, 3}, 5).determinant() == 30);
  CHECK_THROWS_AS(TorusSpec({0}, 5), InvalidInput);
}

TEST_CASE("spectrum examples") {
  const auto c4 = mids(circulant_spectrum(CirculantSpec(4, {1})));
  CHECK(c4[0] == doctest::Approx(0));
  CHECK(c4[1] == doctest::Approx(2));
  CHECK(c4[2] == doctest::Approx(4));
  CHECK(c4[3] == doctest::Approx(2));

  const auto c113 = circulant_spectrum(CirculantSpec(3, {1, 1}));
  CHECK(c113[0].is_zero());
  CHECK(c113[1].value.contains(6.0));
  CHECK(c113[2].value.contains(6.0));

  const auto c236 = circulant_spectrum(CirculantSpec(6, {2, 3}));
  for (std::size_t k = 0; k < 6; ++k) {
    const double expected = 4 - 2 * std::cos(2 * M_PI * k / 3.0) - 2 * std::cos(M_PI * k);
    CHECK(c236[k].value.widened(1e-14).contains(expected));
  }

  const auto t22 = torus_spectrum(TorusSpec({2}, 2));
  std::vector<double> t = mids(t22);
  std::sort(t.begin(), t.end());
  CHECK(t[0] == doctest::Approx(0));
  CHECK(t[1] == doctest::Approx(4));
  CHECK(t[2] == doctest::Approx(4));
  CHECK(t[3] == doctest::Approx(8));

  const auto cyc = mids(torus_spectrum(TorusSpec({}, 7)));
  const auto inert = mids(torus_spectrum(TorusSpec({1}, 7)));
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(cyc[k] == doctest::Approx(2 - 2 * std::cos(2 * M_PI * k / 7.0)));
    CHECK(inert[k] == doctest::Approx(cyc[k]));
  }
  CHECK(box_spectrum({}).size() == 1);
}

TEST_CASE("zero eigenvalues are decided exactly") {
  const auto s = circulant_spectrum(CirculantSpec(4, {2, 2}));
  CHECK(std::count_if(s.begin(), s.end(), [](const SpectrumPoint& p) { return p.is_zero(); }) == 2);
  CHECK(s[2].value.is_point());
  const auto c = circulant_spectrum(CirculantSpec(9, {3}));
  CHECK(std::count_if(c.begin(), c.end(), [](const SpectrumPoint& p) { return p.is_zero(); }) == 3);
}

TEST_CASE("spectrum symmetry k -> n-k") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t n = 2 + rng() % 40;
    std::vector<std::int64_t> gens{1};
    for (int j = 0; j < 2; ++j) gens.push_back(1 + static_cast<std::int64_t>(rng() % (n - 1)));
    const auto s = circulant_spectrum(CirculantSpec(n, gens));
    for (std::uint64_t k = 1; k < n; ++k) CHECK(s[k].value.overlaps(s[n - k].value));
  }
}

TEST_CASE("trace identity: eigenvalue sum equals Laplacian trace") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t n = 2 + rng() % 30;
    std::vector<std::int64_t> gens;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < count; ++j) gens.push_back(1 + static_cast<std::int64_t>(rng() % (n - 1)));
    const CirculantSpec spec(n, gens);
    Interval sum(0, 128);
    for (const SpectrumPoint& p : circulant_spectrum(spec)) sum += p.value;
    const IntegerMatrix lap = laplacian(build_multigraph(spec));
    mpz_class trace = 0;
    for (std::size_t i = 0; i < lap.dimension(); ++i) trace += lap.at(i, i);
    CHECK(sum.contains(trace));
  }
}

TEST_CASE("relabelling keeps the degree sequence") {
  const EdgeMultiset g = build_multigraph(CirculantSpec(9, {1, 3}));
  std::vector<std::uint64_t> perm(9);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(3);
  std::shuffle(perm.begin(), perm.end(), rng);
  const EdgeMultiset h = g.relabelled(perm);
  CHECK(h.edge_count() == g.edge_count());
  for (std::uint64_t v = 0; v < 9; ++v) CHECK(h.degree(perm[v]) == g.degree(v));
  CHECK(h.multiplicity(perm[0], perm[3]) == g.multiplicity(0, 3));
}
