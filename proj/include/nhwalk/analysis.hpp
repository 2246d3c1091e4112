#pragma once

// Reduced states and the observables built on them: partial traces over
// position or coin, an averaged site-occupation entropy, the trace distance
// between reduced states, a trace-distance memory witness over the waiting
// time, and the coin-then-position projective readout table.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhwalk/coin.hpp"
#include "nhwalk/hilbert.hpp"
#include "nhwalk/linalg.hpp"
#include "nhwalk/walk.hpp"

namespace nhwalk {

enum class BasisKind { Coin, Position };

// Hermitian reduced state. The trace equals the squared norm of the parent
// pure state: leaked amplitude shows up as a trace deficit, never as a
// renormalization.
class DensityMatrix {
 public:
  DensityMatrix(BasisKind basis, std::vector<int> labels, std::vector<cplx> entries)
      : basis_(basis), labels_(std::move(labels)), a_(std::move(entries)) {
    dim_ = static_cast<int>(labels_.size());
    if (dim_ < 1 || a_.size() != static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_))
      throw std::invalid_argument("DensityMatrix: entry buffer does not match labels");
    double scale = 0.0;
    for (const cplx& v : a_) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        if (std::abs(at(i, j) - std::conj(at(j, i))) > 1e-12 * std::max(1.0, scale))
          throw std::invalid_argument("DensityMatrix: entries are not Hermitian");
    // store the exactly Hermitian part
    for (int i = 0; i < dim_; ++i) {
      at(i, i) = cplx(at(i, i).real());
      for (int j = i + 1; j < dim_; ++j) {
        const cplx h = 0.5 * (at(i, j) + std::conj(at(j, i)));
        at(i, j) = h;
        at(j, i) = std::conj(h);
      }
    }
  }

  int dim() const { return dim_; }
  BasisKind basis() const { return basis_; }
  const std::vector<int>& labels() const { return labels_; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i).real();
    return t;
  }

  std::vector<double> eigenvalues() const { return hermitian_eigenvalues(a_, dim_); }

 private:
  cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

  BasisKind basis_;
  int dim_;
  std::vector<int> labels_;
  std::vector<cplx> a_;
};

// rho_c[i][j] = sum_m a(i, m) conj(a(j, m)); labels {0, 1}.
inline DensityMatrix reduced_coin_density(const WalkState& state) {
  const int r = state.steps_taken();
  std::vector<cplx> e(4, cplx(0.0));
  for (int m = -r; m <= r; ++m) {
    const cplx a0 = state.amplitude(0, m);
    const cplx a1 = state.amplitude(1, m);
    e[0] += a0 * std::conj(a0);
    e[1] += a0 * std::conj(a1);
    e[3] += a1 * std::conj(a1);
  }
  e[2] = std::conj(e[1]);
  return DensityMatrix(BasisKind::Coin, {0, 1}, std::move(e));
}

// rho_p[m][m'] = sum_c a(c, m) conj(a(c, m')); restricted to the light-cone
// support window, labels are the lattice positions.
inline DensityMatrix reduced_position_density(const WalkState& state) {
  const int r = state.steps_taken();
  const int n = 2 * r + 1;
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i - r;
  std::vector<cplx> e(static_cast<std::size_t>(n) * n, cplx(0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      cplx v(0.0);
      for (int c = 0; c < 2; ++c)
        v += state.amplitude(c, i - r) * std::conj(state.amplitude(c, j - r));
      e[static_cast<std::size_t>(i) * n + j] = v;
      e[static_cast<std::size_t>(j) * n + i] = std::conj(v);
    }
  }
  return DensityMatrix(BasisKind::Position, std::move(labels), std::move(e));
}

// Average over the walk length of the binary occupation entropy per site:
// each site contributes h(p) = -p ln p - (1-p) ln(1-p) with its raw
// (leak-included) occupation probability p, and the sum is divided by the
// number of steps. Renormalizing p first would cancel exactly the leak
// dependence this quantity is meant to expose.
inline double von_neumann_entropy_avg(const PositionDistribution& dist, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("von_neumann_entropy_avg: n_steps must be positive");
  double s = 0.0;
  for (double p : dist.p) {
    if (p > 1.0 + 1e-12) throw std::invalid_argument("von_neumann_entropy_avg: occupation probability above 1");
    if (p <= 0.0 || p >= 1.0) continue;
    s += -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
  }
  return s / n_steps;
}

// D = (1/2) sum_k |lambda_k(rho1 - rho2)| over the Hermitian difference.
// The difference is sign-canonicalized first: |eigenvalues| are invariant
// under negation, but the eigensolver's rounding path is not, and swapping
// the arguments must give bitwise the same distance.
inline double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  if (r1.dim() != r2.dim() || r1.basis() != r2.basis() || r1.labels() != r2.labels())
    throw std::invalid_argument("trace_distance: operands live on different bases");
  const int n = r1.dim();
  std::vector<cplx> diff(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) diff[static_cast<std::size_t>(i) * n + j] = r1(i, j) - r2(i, j);
  for (const cplx& v : diff) {
    if (v.real() != 0.0 || v.imag() != 0.0) {
      if (v.real() < 0.0 || (v.real() == 0.0 && v.imag() < 0.0))
        for (cplx& w : diff) w = -w;
      break;
    }
  }
  double d = 0.0;
  for (double ev : hermitian_eigenvalues(std::move(diff), n)) d += std::abs(ev);
  return 0.5 * d;
}

// One row of the coin-then-position readout table.
struct MeasurementRecord {
  int coin;
  int position;
  double probability;  // normalized by the surviving squared norm
  int sign;            // sign carried by the post-measurement product state
};

// Projective readout in the computational basis: one record per basis state
// carrying weight, probability |a|^2 / norm2, sorted by (coin, position).
// Basis states whose relative weight is below 1e-24 are treated as
// unoccupied.
inline std::vector<MeasurementRecord> measure(const WalkState& state) {
  const double n2 = state.norm2();
  if (!(n2 > 0.0)) throw std::invalid_argument("measure: state has zero norm");
  std::vector<MeasurementRecord> records;
  const int r = state.steps_taken();
  for (int c = 0; c < 2; ++c) {
    for (int m = -r; m <= r; ++m) {
      const cplx a = state.amplitude(c, m);
      const double w = std::norm(a);
      if (w <= 1e-24 * n2) continue;
      int sign = 1;
      if (a.real() < 0.0 || (a.real() == 0.0 && a.imag() < 0.0)) sign = -1;
      records.push_back(MeasurementRecord{c, m, w / n2, sign});
    }
  }
  return records;
}

// Trace-distance difference over the waiting time:
//
//   D(T, tau) = D[rho(tau'), rho(tau)] - D[rho(T+tau'), rho(T+tau)]
//
// where rho(x) is the position-reduced state of an n_steps walk run with
// coin_at(x) (generalized shift, localized start). Negative values witness
// information flowing back from the leaked environment.
inline double nm_witness(const std::function<CoinOp(double)>& coin_at, double T, double tau,
                         double tau_prime, int n_steps = 2) {
  if (!(tau_prime > 0.0)) throw std::invalid_argument("nm_witness: tau_prime must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("nm_witness: tau must be positive");
  if (!(T >= 0.0)) throw std::invalid_argument("nm_witness: T must be non-negative");
  if (n_steps < 1) throw std::invalid_argument("nm_witness: n_steps must be positive");

  auto rho = [&](double x) {
    WalkState s(InitialStateKind::Localized, n_steps);
    return reduced_position_density(evolve(s, coin_at(x), ShiftKind::Generalized, n_steps).final);
  };
  return trace_distance(rho(tau_prime), rho(tau)) - trace_distance(rho(T + tau_prime), rho(T + tau));
}

inline double nm_witness(double V, double lambda, double T, double tau, double tau_prime = 1e-5) {
  return nm_witness([&](double x) { return dimer_coin(V, lambda, x); }, T, tau, tau_prime, 2);
}

}  // namespace nhwalk
