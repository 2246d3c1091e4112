#include <catch2/catch.hpp>

#include <cmath>
#include <limits>

#include "nhwalk/coin.hpp"
#include "test_util.hpp"

using nhwalk::cplx;
using nhwalk::CoinKind;
using nhwalk::Mat2;

namespace {
nhwalk::CoinOp ep_form(double V, double lambda, double tau) {
  // limiting coefficients at lambda = 4V
  const double env = std::exp(-lambda * tau / 4.0);
  return nhwalk::CoinOp{Mat2{{cplx(env * (1.0 - lambda * tau / 4.0)), cplx(env * V * tau),
                              cplx(env * V * tau), cplx(-env * (1.0 - lambda * tau / 4.0))}},
                        CoinKind::NonHermitian};
}
}  // namespace

TEST_CASE("hermitian_coin special points") {
  const auto had = nhwalk::hermitian_coin(1.0 / std::sqrt(2.0));
  const double r = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(had.m(0, 0) - cplx(r)) < 1e-15);
  REQUIRE(std::abs(had.m(0, 1) - cplx(r)) < 1e-15);
  REQUIRE(std::abs(had.m(1, 1) + cplx(r)) < 1e-15);
  REQUIRE(had.kind == CoinKind::HermitianUnitary);

  const auto top = nhwalk::hermitian_coin(1.0);
  REQUIRE(top.m(0, 0) == cplx(1.0));
  REQUIRE(top.m(0, 1) == cplx(0.0));
  REQUIRE(top.m(1, 1) == cplx(-1.0));

  const auto swap = nhwalk::hermitian_coin(0.0);
  REQUIRE(swap.m(0, 0) == cplx(0.0));
  REQUIRE(swap.m(0, 1) == cplx(1.0));
  REQUIRE(swap.m(1, 1) == cplx(0.0));
}

TEST_CASE("hermitian_coin rejects out-of-range arguments") {
  REQUIRE_THROWS_AS(nhwalk::hermitian_coin(-0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(nhwalk::hermitian_coin(1.1), std::invalid_argument);
  REQUIRE_THROWS_AS(nhwalk::hermitian_coin(std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
}

TEST_CASE("hermitian_coin is an involution") {
  for (int i = 0; i <= 20; ++i) {
    const double a = i / 20.0;
    const auto c = nhwalk::hermitian_coin(a);
    REQUIRE(nhwalk::max_abs_diff(c.m * c.m, Mat2::identity()) < 1e-12);
  }
}

TEST_CASE("nonhermitian_coin construction and classification") {
  const auto c = nhwalk::nonhermitian_coin(0.6, 0.3);
  REQUIRE(c.m(0, 0) == cplx(0.6));
  REQUIRE(c.m(0, 1) == cplx(0.3));
  REQUIRE(c.m(1, 0) == cplx(0.3));
  REQUIRE(c.m(1, 1) == cplx(-0.6));
  REQUIRE(c.kind == CoinKind::NonHermitian);
  REQUIRE(c.norm_factor() == Approx(0.45).epsilon(0).margin(1e-15));

  // the unit-circle boundary is a genuine Hermitian unitary
  const double r = 1.0 / std::sqrt(2.0);
  REQUIRE(nhwalk::nonhermitian_coin(r, r).kind == CoinKind::HermitianUnitary);

  // real symmetric by construction
  REQUIRE(c.m(0, 1) == c.m(1, 0));
}

TEST_CASE("nonhermitian_coin rejects inadmissible pairs") {
  REQUIRE_THROWS_AS(nhwalk::nonhermitian_coin(0.9, 0.8), std::invalid_argument);
  REQUIRE_THROWS_AS(nhwalk::nonhermitian_coin(-0.1, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(nhwalk::nonhermitian_coin(0.5, -0.1), std::invalid_argument);
}

TEST_CASE("dimer_coin: zero waiting interval gives the no-transfer coin") {
  const auto c = nhwalk::dimer_coin(1.0, 0.0, 0.0);
  REQUIRE(c.m(0, 0) == cplx(1.0));
  REQUIRE(c.m(0, 1) == cplx(0.0));
}

TEST_CASE("dimer_coin: lossless limit oscillates at the bare tunneling frequency") {
  // lambda = 0, V = 1: a1 = cos(2 tau), a2 = sin(2 tau)/2
  for (double tau : {0.05, 0.3, 0.7, 1.3, 2.0}) {
    const auto c = nhwalk::dimer_coin(1.0, 0.0, tau);
    REQUIRE(c.m(0, 0).real() == Approx(std::cos(2.0 * tau)).epsilon(0).margin(1e-15));
    REQUIRE(c.m(0, 1).real() == Approx(0.5 * std::sin(2.0 * tau)).epsilon(0).margin(1e-15));
  }
  // note the pair is sub-normalized even without any leak
  const auto c = nhwalk::dimer_coin(1.0, 0.0, 0.4);
  REQUIRE(c.norm_factor() < 1.0);
}

TEST_CASE("dimer_coin: coalescence point uses the limiting form") {
  for (double tau : {0.1, 0.5, 1.0, 2.0}) {
    const auto c = nhwalk::dimer_coin(1.0, 4.0, tau);
    const double env = std::exp(-tau);
    REQUIRE(c.m(0, 0).real() == Approx(env * (1.0 - tau)).epsilon(0).margin(1e-15));
    REQUIRE(c.m(0, 1).real() == Approx(env * tau).epsilon(0).margin(1e-15));
  }
}

TEST_CASE("dimer_coin is continuous across the regime boundary") {
  for (double V : {0.5, 1.0, 2.0}) {
    for (double tau : {0.2, 1.0, 3.0}) {
      const auto limit = ep_form(V, 4.0 * V, tau);
      const auto below = nhwalk::dimer_coin(V, 4.0 * V - 1e-6, tau);
      const auto above = nhwalk::dimer_coin(V, 4.0 * V + 1e-6, tau);
      REQUIRE(nhwalk::max_abs_diff(below.m, limit.m) < 1e-5);
      REQUIRE(nhwalk::max_abs_diff(above.m, limit.m) < 1e-5);
    }
  }
}

TEST_CASE("dimer_coin coefficients stay inside the unit disc on the working domain") {
  // Scaled variables: the pair depends on (lambda/V, V*tau) only. The bound
  // holds for lambda/V up to ~4.6; beyond that the overdamped branch can
  // leave the disc at long tau, which is the error case tested below.
  for (double V : {0.5, 1.0, 2.0}) {
    for (int i = 0; i <= 45; ++i) {
      const double lambda = V * (4.5 * i / 45.0);
      for (int j = 0; j <= 60; ++j) {
        const double tau = (6.0 * j / 60.0) / V;
        const auto c = nhwalk::dimer_coin(V, lambda, tau);
        const double ss = c.norm_factor();
        REQUIRE(ss >= 0.0);
        REQUIRE(ss <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("dimer_coin signals when the overdamped pair leaves the unit disc") {
  REQUIRE_THROWS_AS(nhwalk::dimer_coin(1.0, 8.0, 2.0), std::logic_error);
}

TEST_CASE("dimer_coin may go negative past the first oscillation zero") {
  // lambda = 0, tau just past pi/4: a1 = cos(2 tau) < 0
  const auto c = nhwalk::dimer_coin(1.0, 0.0, 1.0);
  REQUIRE(c.m(0, 0).real() < 0.0);
  REQUIRE(c.norm_factor() <= 1.0 + 1e-12);
}

TEST_CASE("dimer_coin rejects bad arguments") {
  REQUIRE_THROWS_AS(nhwalk::dimer_coin(0.0, 1.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(nhwalk::dimer_coin(-1.0, 1.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(nhwalk::dimer_coin(1.0, -0.5, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(nhwalk::dimer_coin(1.0, 1.0, -0.5), std::invalid_argument);
}
