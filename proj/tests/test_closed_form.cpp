#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "treecount/closed_form.hpp"
#include "treecount/errors.hpp"

using namespace treecount;

namespace {

BigCount family_tau(std::uint64_t beta, std::vector<std::uint64_t> gammas, std::uint64_t n) {
  return tau_scaled_circulant(ScaledCirculantFamily(beta, std::move(gammas), n));
}

}  // namespace

TEST_CASE("scaled circulant examples") {
  CHECK(family_tau(3, {1}, 1) == 12ul);
  CHECK(family_tau(3, {1}, 2) == 384ul);
  CHECK(family_tau(2, {1}, 1) == 4ul);
  CHECK(family_tau(1, {}, 7) == 7ul);
  CHECK(family_tau(5, {}, 3) == 15ul);
  for (unsigned n = 1; n <= 5; ++n) CHECK(family_tau(6, {2, 3}, n).value() == testing::tau_c12n3n_6n(n));
}

TEST_CASE("torus examples") {
  CHECK(tau_torus(TorusSpec({2}, 2)) == 32ul);
  CHECK(tau_torus(TorusSpec({2}, 3)) == 294ul);
  for (std::uint64_t n = 1; n <= 9; ++n) {
    CHECK(tau_torus(TorusSpec({1}, n)) == n);
    CHECK(tau_torus(TorusSpec({}, n)) == n);
    CHECK(tau_torus(TorusSpec({1, 1}, n)) == n);
  }
}

TEST_CASE("certified rounding") {
  CHECK(certified_round(Interval::hull(11.9997, 12.0003, 64)) == mpz_class(12));
  CHECK_FALSE(certified_round(Interval::hull(11.4, 12.6, 64)).has_value());
  CHECK_FALSE(certified_round(Interval::hull(12.2, 12.4, 64)).has_value());
  CHECK(certified_round(Interval(mpz_class("123456789012345678901234567890"), 128)) ==
        mpz_class("123456789012345678901234567890"));
}

TEST_CASE("telescoped factor") {
  CHECK(telescoped_factor(Interval(0L, 128), Rational(0), 9).contains(0.0));
  const Interval theta = acosh1p(Interval(1L, 128));
  CHECK(telescoped_factor(theta, Rational(0), 1).contains(2.0));

  const Interval two_cosh = cosh(theta) * 2L;
  Interval product(1L, 128);
  for (long l = 0; l < 3; ++l) product *= two_cosh - cos_turn((Rational(1, 3) + Rational(l)) / Rational(3), 128) * 2L;
  CHECK(product.overlaps(telescoped_factor(theta, Rational(1, 3), 3)));
  CHECK_THROWS_AS(telescoped_factor(Interval::from_double(-1, 64), Rational(0), 2), InvalidInput);
}

TEST_CASE("log mode agrees with exact mode") {
  const ScaledCirculantFamily f(3, {1}, 10);
  const BigCount exact = tau_scaled_circulant(f);
  CHECK(log_tau_estimate(f).widened(1e-13).contains(std::log(exact.value().get_d())));
  CHECK(log(Interval(exact.value(), 256)).overlaps(log_tau_estimate(f, 256)));
  CHECK(log_tau_estimate(ScaledCirculantFamily(2, {1}, 1)).overlaps(log(Interval(4L, 128))));
  CHECK(log_tau_estimate(ScaledCirculantFamily(1, {}, 1000000)).overlaps(log(Interval(1000000L, 128))));
  const TorusSpec t({2, 3}, 4);
  CHECK(log(Interval(tau_torus(t).value(), 256)).overlaps(log_tau_estimate(t, 256)));
  const ScaledCirculantFamily degenerate(4, {2}, 5);
  CHECK(log(Interval(tau_scaled_circulant(degenerate).value(), 256)).overlaps(log_tau_estimate(degenerate, 256)));
}

TEST_CASE("large n: digit count follows the a-priori estimate") {
  const ScaledCirculantFamily f(3, {1}, 50);
  const BigCount tau = tau_scaled_circulant(f);
  const double digits = estimated_log2_tau(f) * std::log10(2.0);
  CHECK(std::abs(static_cast<double>(tau.decimal_digits()) - digits) <= 1.5);
  CHECK(tau.value() == testing::tau_c1n_3n(50));
}

TEST_CASE("factors are positive and the division is exact") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t beta = 2 + rng() % 11;
    std::vector<std::uint64_t> gammas;
    const int len = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < len; ++j) gammas.push_back(1 + rng() % (beta / 2));
    const std::uint64_t n = 1 + rng() % 40;
    const ClosedFormResult r = evaluate_scaled_circulant(ScaledCirculantFamily(beta, gammas, n));
    CHECK(r.factors.size() == beta - 1);
    for (const FactorTerm& f : r.factors) {
      CHECK(f.factor.certainly_positive());
      CHECK(mpfr_sgn(f.theta.lo()) >= 0);
    }
    CHECK((r.tau.value() * beta) % n == 0);
    CHECK(r.tau.value() > 0);
  }
}

TEST_CASE("zero subgraph eigenvalues are accepted") {
  // C^{2,2}_4 is disconnected, so μ_2 = 0 for (β=4, γ=(2)).
  const ClosedFormResult r = evaluate_scaled_circulant(ScaledCirculantFamily(4, {2}, 3));
  CHECK(r.factors[1].mu.is_point());
  CHECK(r.factors[1].factor.contains(4.0));
  CHECK(r.tau == count_spanning_trees_oracle(build_multigraph(ScaledCirculantFamily(4, {2}, 3).instantiate())));
}

TEST_CASE("precision policy") {
  CHECK_THROWS_AS((PrecisionPolicy{40, 1000}.validate()), InvalidInput);
  CHECK_THROWS_AS((PrecisionPolicy{128, 64}.validate()), InvalidInput);
  EvalOptions low;
  low.precision = PrecisionPolicy{53, 53};
  CHECK(tau_scaled_circulant(ScaledCirculantFamily(7, {2, 3}, 30), low) ==
        tau_scaled_circulant(ScaledCirculantFamily(7, {2, 3}, 30)));

  EvalOptions blurred;
  blurred.precision = PrecisionPolicy{64, 512};
  blurred.factor_hook = [](std::size_t, Interval& f) { f = f.widened(1.0); };
  CHECK_THROWS_AS(tau_scaled_circulant(ScaledCirculantFamily(3, {1}, 4), blurred), PrecisionExhausted);
}

TEST_CASE("factor hook sees every factor") {
  std::size_t calls = 0;
  EvalOptions o;
  o.factor_hook = [&](std::size_t, Interval&) { ++calls; };
  tau_scaled_circulant(ScaledCirculantFamily(9, {2, 4}, 3), o);
  CHECK(calls == 8);
  calls = 0;
  tau_torus(TorusSpec({2, 3}, 3), o);
  CHECK(calls == 5);
}

TEST_CASE("exact mode refuses oversize results") {
  CHECK_THROWS_AS(tau_scaled_circulant(ScaledCirculantFamily(12, {2, 3}, 1000000000)), ResultTooLarge);
  CHECK(estimated_log2_tau(ScaledCirculantFamily(12, {2, 3}, 1000000000)) > kExactResultBitCap);
}

TEST_CASE("spectral path for fixed circulants") {
  CHECK(tau_from_spectrum(CirculantSpec(5, {1, 2})) == 125ul);
  CHECK(tau_from_spectrum(CirculantSpec(3, {1, 1})) == 12ul);
  CHECK_THROWS_AS(tau_from_spectrum(CirculantSpec(4, {2, 2})), DisconnectedGraph);
  for (std::uint64_t n = 3; n <= 30; ++n)
    CHECK(tau_from_spectrum(CirculantSpec(n, {1, 2})) == count_spanning_trees_oracle(build_multigraph(CirculantSpec(n, {1, 2}))));
}
