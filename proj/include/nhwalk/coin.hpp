#pragma once

// Coin operators acting on the walker's two-level internal space. Three
// families:
//   hermitian_coin    [[a, s],[s, -a]] with s = sqrt(1-a^2): Hermitian and
//                     unitary, so an involution.
//   nonhermitian_coin [[a1, a2],[a2, -a1]] real symmetric; when
//                     a1^2+a2^2 < 1 each application leaks occupation
//                     probability out of the walk.
//   dimer_coin        the non-Hermitian family with (a1, a2) given by the
//                     stay/transfer amplitudes of a leaky two-site system
//                     evolved for one waiting interval tau. Leak rate lambda
//                     sits on the destination site only; the source site is
//                     kept lossless.

#include <cmath>
#include <stdexcept>

#include "nhwalk/linalg.hpp"

namespace nhwalk {

enum class CoinKind { HermitianUnitary, NonHermitian };

struct CoinOp {
  Mat2 m;
  CoinKind kind;

  // Amplitude survival factor of one application for the real symmetric
  // family: a1^2 + a2^2.
  double norm_factor() const { return std::norm(m(0, 0)) + std::norm(m(0, 1)); }
};

inline CoinOp hermitian_coin(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("hermitian_coin: alpha must be in [0, 1]");
  const double s = std::sqrt(1.0 - alpha * alpha);
  return CoinOp{Mat2{{cplx(alpha), cplx(s), cplx(s), cplx(-alpha)}}, CoinKind::HermitianUnitary};
}

namespace detail {

// No sign or magnitude checks: dimer-derived coefficients may legitimately
// go negative once the oscillation passes its first zero.
inline CoinOp make_real_symmetric_coin(double a1, double a2) {
  const double ss = a1 * a1 + a2 * a2;
  const CoinKind kind = (std::abs(ss - 1.0) <= 1e-12) ? CoinKind::HermitianUnitary : CoinKind::NonHermitian;
  return CoinOp{Mat2{{cplx(a1), cplx(a2), cplx(a2), cplx(-a1)}}, kind};
}

}  // namespace detail

inline CoinOp nonhermitian_coin(double alpha1, double alpha2) {
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0))
    throw std::invalid_argument("nonhermitian_coin: coefficients must be non-negative");
  if (alpha1 * alpha1 + alpha2 * alpha2 > 1.0 + 1e-12)
    throw std::invalid_argument("nonhermitian_coin: alpha1^2 + alpha2^2 must not exceed 1");
  return detail::make_real_symmetric_coin(alpha1, alpha2);
}

// Coin coefficients from one waiting interval of a lossy two-site system at
// resonance (tunneling energy V, destination leak rate lambda, hbar = 1):
//
//   a1 = exp(-lambda*tau/4) * [cos(w*tau) - lambda/(4w) * sin(w*tau)]
//   a2 = exp(-lambda*tau/4) * (V/w) * sin(w*tau),   w = sqrt(4V^2 - lambda^2/4)
//
// For lambda > 4V the oscillation is overdamped: sin/cos become sinh/cosh and
// w = sqrt(lambda^2/4 - 4V^2). At lambda = 4V both frequencies vanish and the
// limiting forms a1 = exp(-lambda*tau/4)(1 - lambda*tau/4),
// a2 = exp(-lambda*tau/4) V tau apply; the branch stitch is a removable
// singularity, detected within |lambda - 4V| <= 1e-9 * max(1, 4V).
inline CoinOp dimer_coin(double V, double lambda, double tau) {
  if (!(V > 0.0)) throw std::invalid_argument("dimer_coin: V must be positive");
  if (!(lambda >= 0.0)) throw std::invalid_argument("dimer_coin: lambda must be non-negative");
  if (!(tau >= 0.0)) throw std::invalid_argument("dimer_coin: tau must be non-negative");

  const double env = std::exp(-lambda * tau / 4.0);
  const double disc = 4.0 * V * V - lambda * lambda / 4.0;
  double a1 = 0.0, a2 = 0.0;
  if (std::abs(lambda - 4.0 * V) <= 1e-9 * std::max(1.0, 4.0 * V)) {
    a1 = env * (1.0 - lambda * tau / 4.0);
    a2 = env * V * tau;
  } else if (disc > 0.0) {
    const double w = std::sqrt(disc);
    a1 = env * (std::cos(w * tau) - lambda / (4.0 * w) * std::sin(w * tau));
    a2 = env * (V / w) * std::sin(w * tau);
  } else {
    const double w = std::sqrt(-disc);
    a1 = env * (std::cosh(w * tau) - lambda / (4.0 * w) * std::sinh(w * tau));
    a2 = env * (V / w) * std::sinh(w * tau);
  }

  // Holds throughout the oscillatory regime and up to lambda ~ 4.6 V in the
  // overdamped one; deep overdamping at long tau can push the pair above the
  // unit disc, which no walk run may silently accept.
  if (a1 * a1 + a2 * a2 > 1.0 + 1e-9)
    throw std::logic_error("dimer_coin: amplitude pair left the unit disc (overdamped long-time regime)");
  return detail::make_real_symmetric_coin(a1, a2);
}

}  // namespace nhwalk
