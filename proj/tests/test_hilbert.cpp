#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "nhwalk/coin.hpp"
#include "nhwalk/hilbert.hpp"
#include "nhwalk/walk.hpp"
#include "test_util.hpp"

using nhwalk::cplx;
using nhwalk::InitialStateKind;
using nhwalk::ShiftKind;
using nhwalk::WalkState;

TEST_CASE("fresh localized state") {
  WalkState s(InitialStateKind::Localized, 50);
  REQUIRE(s.amplitude(0, 0) == cplx(1.0));
  REQUIRE(s.amplitude(1, 0) == cplx(0.0));
  REQUIRE(s.amplitude(0, 7) == cplx(0.0));
  REQUIRE(s.steps_taken() == 0);
  REQUIRE(std::abs(s.norm2() - 1.0) <= 1e-15);
}

TEST_CASE("fresh symmetric state") {
  WalkState s(InitialStateKind::Symmetric, 50);
  const double r = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(s.amplitude(0, 0) - cplx(r)) < 1e-15);
  REQUIRE(std::abs(s.amplitude(1, 0) - cplx(0.0, r)) < 1e-15);
  REQUIRE(std::abs(s.norm2() - 1.0) <= 1e-15);
}

TEST_CASE("bound must be positive") {
  REQUIRE_THROWS_AS(WalkState(InitialStateKind::Localized, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(WalkState(InitialStateKind::Localized, -3), std::invalid_argument);
}

TEST_CASE("with_amplitudes validates indices and tracks the support radius") {
  using nhwalk::AmplitudeEntry;
  std::vector<AmplitudeEntry> entries{{0, -3, cplx(0.5)}, {1, 2, cplx(0.5)}};
  const WalkState s = WalkState::with_amplitudes(10, entries);
  REQUIRE(s.steps_taken() == 3);
  REQUIRE(s.amplitude(0, -3) == cplx(0.5));

  std::vector<AmplitudeEntry> bad_coin{{2, 0, cplx(1.0)}};
  REQUIRE_THROWS_AS(WalkState::with_amplitudes(10, bad_coin), std::invalid_argument);
  std::vector<AmplitudeEntry> bad_pos{{0, 11, cplx(1.0)}};
  REQUIRE_THROWS_AS(WalkState::with_amplitudes(10, bad_pos), std::invalid_argument);
}

TEST_CASE("norm after non-Hermitian steps follows the survival factor") {
  const auto coin = nhwalk::nonhermitian_coin(0.6, 0.3);
  REQUIRE(coin.norm_factor() == Approx(0.45).epsilon(0).margin(1e-15));

  WalkState s(InitialStateKind::Localized, 50);
  const auto trace = nhwalk::evolve(s, coin, ShiftKind::Generalized, 50);
  REQUIRE(trace.norms[0] == 1.0);
  REQUIRE(trace.norms[1] == Approx(0.45).epsilon(0).margin(1e-15));
  for (int m = 1; m <= 50; ++m)
    REQUIRE(trace.norms[static_cast<std::size_t>(m)] ==
            Approx(std::pow(0.45, m)).epsilon(1e-10));
}

TEST_CASE("position distribution: delta, one Hermitian step, two leaky steps") {
  WalkState fresh(InitialStateKind::Localized, 10);
  const auto d0 = nhwalk::position_distribution(fresh);
  REQUIRE(d0.min_pos == 0);
  REQUIRE(d0.p.size() == 1);
  REQUIRE(d0.at(0) == 1.0);

  // one Hermitian step: P(-1) = a^2/2, P(0) = a^2/2 + (1-a^2)/2, P(1) = (1-a^2)/2
  for (double a : {0.2, 0.5, 1.0 / std::sqrt(2.0), 0.9}) {
    WalkState s(InitialStateKind::Localized, 10);
    const auto d = nhwalk::position_distribution(nhwalk::step(s, nhwalk::hermitian_coin(a), ShiftKind::Generalized));
    REQUIRE(d.at(-1) == Approx(a * a / 2.0).epsilon(0).margin(1e-14));
    REQUIRE(d.at(0) == Approx(a * a / 2.0 + (1.0 - a * a) / 2.0).epsilon(0).margin(1e-14));
    REQUIRE(d.at(1) == Approx((1.0 - a * a) / 2.0).epsilon(0).margin(1e-14));
  }

  // two leaky steps: P(-2) = a1^4/4
  const double a1 = 0.7, a2 = 0.4;
  WalkState s(InitialStateKind::Localized, 10);
  const auto t = nhwalk::evolve(s, nhwalk::nonhermitian_coin(a1, a2), ShiftKind::Generalized, 2);
  const auto d2 = nhwalk::position_distribution(t.final);
  REQUIRE(d2.at(-2) == Approx(std::pow(a1, 4) / 4.0).epsilon(0).margin(1e-14));
}

TEST_CASE("position distribution sums to the squared norm") {
  std::mt19937 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto [a1, a2] = testutil::random_admissible_pair(rng);
    WalkState s(InitialStateKind::Localized, 20);
    const auto t = nhwalk::evolve(s, nhwalk::nonhermitian_coin(a1, a2), ShiftKind::Generalized, 20);
    REQUIRE(nhwalk::position_distribution(t.final).sum() ==
            Approx(t.final.norm2()).epsilon(0).margin(1e-12));
  }
}

TEST_CASE("light cone: exact zeros outside the reached radius") {
  WalkState s(InitialStateKind::Localized, 30);
  const auto coin = nhwalk::nonhermitian_coin(0.8, 0.5);
  WalkState cur = s;
  for (int n = 1; n <= 12; ++n) {
    cur = nhwalk::step(cur, coin, ShiftKind::Generalized);
    REQUIRE(cur.steps_taken() == n);
    for (int c = 0; c < 2; ++c)
      for (int m = n + 1; m <= 30; ++m) {
        REQUIRE(cur.amplitude(c, m) == cplx(0.0));
        REQUIRE(cur.amplitude(c, -m) == cplx(0.0));
      }
  }
}

TEST_CASE("spread_sigma basics") {
  nhwalk::PositionDistribution delta{0, {1.0}};
  REQUIRE(nhwalk::spread_sigma(delta) == 0.0);

  nhwalk::PositionDistribution pm1{-1, {0.5, 0.0, 0.5}};
  REQUIRE(nhwalk::spread_sigma(pm1) == Approx(1.0).epsilon(0).margin(1e-15));

  // unnormalized input is renormalized internally
  nhwalk::PositionDistribution scaled{-1, {0.2, 0.0, 0.2}};
  REQUIRE(nhwalk::spread_sigma(scaled) == Approx(1.0).epsilon(0).margin(1e-15));

  nhwalk::PositionDistribution zero{0, {0.0, 0.0}};
  REQUIRE_THROWS_AS(nhwalk::spread_sigma(zero), std::invalid_argument);
}

TEST_CASE("Hadamard walk spreads ballistically, unlike the classical walk") {
  WalkState s(InitialStateKind::Localized, 100);
  const auto coin = nhwalk::hermitian_coin(1.0 / std::sqrt(2.0));
  const auto to25 = nhwalk::evolve(s, coin, ShiftKind::Generalized, 25);
  const double sigma25 = nhwalk::spread_sigma(nhwalk::position_distribution(to25.final));
  const auto to100 = nhwalk::evolve(to25.final, coin, ShiftKind::Generalized, 75);
  const double sigma100 = nhwalk::spread_sigma(nhwalk::position_distribution(to100.final));
  REQUIRE(sigma100 / sigma25 > 3.0);
}
