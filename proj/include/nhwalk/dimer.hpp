#pragma once

// Two-site system with complex (leaky) site energies, hbar = 1:
//
//   H_eff = [[E_l - i*gamma_l/2,  V],
//            [V,                  E_m - i*gamma_m/2]]
//
// Closed-form transfer probabilities, regime classification around the
// point where the two eigenvalues coalesce, the energy-domain resolvent,
// and an independent matrix-exponential propagator used to cross-check the
// closed forms.
//
// Convention note: the closed forms transfer_prob_general and
// resonance_probs are kept verbatim in the full-frequency convention
// (Omega = sqrt(4V^2 + (E0 - i*gbar)^2), trig arguments Omega*t). The
// propagator built from H_eff oscillates at half that argument, so the two
// routes agree only to leading order at small t. Both are provided
// unmodified; see the tests that pin the discrepancy down so it cannot be
// "fixed" silently on one side.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "nhwalk/linalg.hpp"

namespace nhwalk {

struct DimerParams {
  double E_l, E_m;          // site energies
  double gamma_l, gamma_m;  // leak rates, >= 0
  double V;                 // tunneling energy, > 0

  // derived
  double E0;         // E_m - E_l
  double gamma_d;    // (gamma_l + gamma_m)/2
  double gamma_bar;  // (gamma_m - gamma_l)/2
  cplx Omega;        // principal sqrt(4V^2 + (E0 - i*gamma_bar)^2), Re >= 0
  std::optional<double> Omega0;  // sqrt(4V^2 - gamma_bar^2) on the oscillatory side

  DimerParams(double el, double em, double gl, double gm, double v)
      : E_l(el), E_m(em), gamma_l(gl), gamma_m(gm), V(v) {
    if (!(V > 0.0)) throw std::invalid_argument("DimerParams: V must be positive");
    if (!(gamma_l >= 0.0) || !(gamma_m >= 0.0))
      throw std::invalid_argument("DimerParams: leak rates must be non-negative");
    E0 = E_m - E_l;
    gamma_d = 0.5 * (gamma_l + gamma_m);
    gamma_bar = 0.5 * (gamma_m - gamma_l);
    const cplx z = cplx(E0, -gamma_bar);
    Omega = std::sqrt(4.0 * V * V + z * z);
    const double disc = 4.0 * V * V - gamma_bar * gamma_bar;
    if (disc >= 0.0) Omega0 = std::sqrt(disc);
  }
};

enum class Regime { Coherent, Exceptional, Incoherent };

// Resonant criterion: eigenvalues coalesce where V = gamma_bar/2.
inline Regime classify_regime(const DimerParams& p) {
  const double tol = 1e-9 * std::max(1.0, p.V);
  if (std::abs(p.V - p.gamma_bar / 2.0) <= tol) return Regime::Exceptional;
  return (p.V > p.gamma_bar / 2.0) ? Regime::Coherent : Regime::Incoherent;
}

// Inverse resolvent at energy E; eta > 0 keeps the inverse well defined on
// the real axis and never enters any time-domain expression.
inline Mat2 greens_inverse(double E, const DimerParams& p, double eta = 1e-9) {
  if (!(eta > 0.0)) throw std::invalid_argument("greens_inverse: eta must be positive");
  return Mat2{{cplx(E - p.E_l, eta + p.gamma_l / 2.0), cplx(-p.V),
               cplx(-p.V), cplx(E - p.E_m, eta + p.gamma_m / 2.0)}};
}

// Probability that an excitation starting on site l is found on site m at
// time t, off resonance included:
//   P(t) = 2V^2/|Omega|^2 * exp(-gamma_d t) * (cosh(Im Omega t) - cos(Re Omega t))
inline double transfer_prob_general(const DimerParams& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("transfer_prob_general: t must be non-negative");
  const double wr = p.Omega.real();
  const double wi = p.Omega.imag();
  return 2.0 * p.V * p.V / std::norm(p.Omega) * std::exp(-p.gamma_d * t) *
         (std::cosh(wi * t) - std::cos(wr * t));
}

struct ResonanceProbs {
  double p_ll;  // stay on the initial site
  double p_lm;  // transfer to the partner site
};

// Resonant (E_l = E_m) stay/transfer probabilities:
//   P_ll = exp(-gamma_d t) [cos(w t) - gbar/(2w) sin(w t)]^2
//   P_lm = exp(-gamma_d t) (V/w)^2 sin^2(w t),   w = sqrt(4V^2 - gbar^2)
// with sin/cos -> sinh/cosh and w = sqrt(gbar^2 - 4V^2) on the overdamped
// side, and the limiting forms (1 - gbar t/2)^2, (V t)^2 at the coalescence
// point.
inline ResonanceProbs resonance_probs(double V, double gamma_l, double gamma_m, double t) {
  if (!(V > 0.0)) throw std::invalid_argument("resonance_probs: V must be positive");
  if (!(gamma_l >= 0.0) || !(gamma_m >= 0.0))
    throw std::invalid_argument("resonance_probs: leak rates must be non-negative");
  if (!(t >= 0.0)) throw std::invalid_argument("resonance_probs: t must be non-negative");

  const double gd = 0.5 * (gamma_l + gamma_m);
  const double gbar = 0.5 * (gamma_m - gamma_l);
  const double env = std::exp(-gd * t);
  const double disc = 4.0 * V * V - gbar * gbar;

  double stay = 0.0, cross = 0.0;
  if (std::abs(V - gbar / 2.0) <= 1e-9 * std::max(1.0, V)) {
    stay = 1.0 - gbar * t / 2.0;
    cross = V * t;
  } else if (disc > 0.0) {
    const double w = std::sqrt(disc);
    stay = std::cos(w * t) - gbar / (2.0 * w) * std::sin(w * t);
    cross = (V / w) * std::sin(w * t);
  } else {
    const double w = std::sqrt(-disc);
    stay = std::cosh(w * t) - gbar / (2.0 * w) * std::sinh(w * t);
    cross = (V / w) * std::sinh(w * t);
  }
  return ResonanceProbs{env * stay * stay, env * cross * cross};
}

// exp(-i H_eff t) computed in closed form from the trace/deviator split of
// the 2x2 generator; the sinc form covers the defective (coalescing) case
// without a separate code path.
inline Mat2 propagator_oracle(const DimerParams& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("propagator_oracle: t must be non-negative");
  const cplx h00(p.E_l, -p.gamma_l / 2.0);
  const cplx h11(p.E_m, -p.gamma_m / 2.0);
  const cplx mean = 0.5 * (h00 + h11);
  const cplx d = 0.5 * (h00 - h11);  // deviator diagonal; off-diagonal is V
  const cplx s = std::sqrt(d * d + cplx(p.V * p.V));
  const cplx cos_st = std::cos(s * t);
  const cplx msin = cplx(0.0, -1.0) * t * sinc(s * t);  // -i sin(st)/s
  const cplx phase = std::exp(cplx(0.0, -1.0) * mean * t);
  Mat2 u;
  u(0, 0) = phase * (cos_st + msin * d);
  u(0, 1) = phase * (msin * cplx(p.V));
  u(1, 0) = phase * (msin * cplx(p.V));
  u(1, 1) = phase * (cos_st - msin * d);
  return u;
}

}  // namespace nhwalk
