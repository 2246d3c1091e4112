#pragma once

// State of a walker on the bounded 1-d lattice [-bound, +bound] with a
// two-level internal (coin) degree of freedom. Position index m and coin
// index c in {0,1} address one complex amplitude each; the squared norm is
// the total occupation probability and may drop below 1 when a leaky coin
// is applied.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

#include "nhwalk/linalg.hpp"

namespace nhwalk {

enum class InitialStateKind {
  Localized,  // |coin 0> at position 0
  Symmetric,  // (|coin 0> + i |coin 1>)/sqrt(2) at position 0
};

struct AmplitudeEntry {
  int coin;
  int position;
  cplx value;
};

class WalkState {
 public:
  // Fresh state at the origin. bound must cover every step that will be
  // taken; hitting the edge later is a hard error, not a wrap-around.
  WalkState(InitialStateKind kind, int bound) : bound_(bound), steps_(0) {
    if (bound < 1) throw std::invalid_argument("WalkState: bound must be >= 1");
    amp_.assign(2 * width(), cplx(0.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
      case InitialStateKind::Localized:
        amp_[idx(0, 0)] = 1.0;
        break;
      case InitialStateKind::Symmetric:
        amp_[idx(0, 0)] = inv_sqrt2;
        amp_[idx(1, 0)] = cplx(0.0, inv_sqrt2);
        break;
    }
  }

  // Raw construction from an explicit amplitude list. The support radius
  // (max |position| used) takes over the role of steps_taken so the light
  // cone bookkeeping stays meaningful for states not produced by a walk.
  static WalkState with_amplitudes(int bound, std::span<const AmplitudeEntry> entries) {
    if (bound < 1) throw std::invalid_argument("WalkState: bound must be >= 1");
    WalkState s(InitialStateKind::Localized, bound);
    s.amp_.assign(s.amp_.size(), cplx(0.0));
    int radius = 0;
    for (const auto& e : entries) {
      if (e.coin != 0 && e.coin != 1) throw std::invalid_argument("WalkState: coin index must be 0 or 1");
      if (e.position < -bound || e.position > bound)
        throw std::invalid_argument("WalkState: position outside lattice");
      s.amp_[s.idx(e.coin, e.position)] += e.value;
      radius = std::max(radius, std::abs(e.position));
    }
    s.steps_ = radius;
    return s;
  }

  int bound() const { return bound_; }
  int steps_taken() const { return steps_; }

  cplx amplitude(int coin, int position) const {
    if (coin != 0 && coin != 1) throw std::invalid_argument("WalkState: coin index must be 0 or 1");
    if (position < -bound_ || position > bound_) return cplx(0.0);
    return amp_[idx(coin, position)];
  }

  double norm2() const {
    double s = 0.0;
    for (const cplx& a : amp_) s += std::norm(a);
    return s;
  }

  // Used by the step operators; radius is the new support radius. Amplitudes
  // outside [-radius, radius] must be exactly zero (light cone).
  static WalkState assemble(int bound, int radius, std::vector<cplx> amplitudes) {
    if (radius > bound) throw std::invalid_argument("WalkState: support exceeds lattice bound");
    WalkState s(InitialStateKind::Localized, bound);
    if (amplitudes.size() != s.amp_.size()) throw std::invalid_argument("WalkState: bad amplitude buffer");
    s.amp_ = std::move(amplitudes);
    s.steps_ = radius;
    for (int c = 0; c < 2; ++c)
      for (int m = -bound; m < -radius; ++m)
        if (s.amp_[s.idx(c, m)] != cplx(0.0) || s.amp_[s.idx(c, -m)] != cplx(0.0))
          throw std::logic_error("WalkState: amplitude outside the light cone");
    return s;
  }

  std::size_t idx(int coin, int position) const {
    return static_cast<std::size_t>(coin) * width() + static_cast<std::size_t>(position + bound_);
  }

 private:
  std::size_t width() const { return static_cast<std::size_t>(2 * bound_ + 1); }

  int bound_;
  int steps_;
  std::vector<cplx> amp_;
};

// Occupation probabilities over a contiguous window of lattice sites.
// Entries are raw |amplitude|^2 sums: never renormalized, so the vector sums
// to the state's squared norm rather than to 1.
struct PositionDistribution {
  int min_pos = 0;
  std::vector<double> p;

  int max_pos() const { return min_pos + static_cast<int>(p.size()) - 1; }
  double at(int pos) const {
    if (pos < min_pos || pos > max_pos()) return 0.0;
    return p[static_cast<std::size_t>(pos - min_pos)];
  }
  double sum() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  }
};

inline PositionDistribution position_distribution(const WalkState& state) {
  const int r = state.steps_taken();
  PositionDistribution d;
  d.min_pos = -r;
  d.p.resize(static_cast<std::size_t>(2 * r + 1));
  for (int m = -r; m <= r; ++m)
    d.p[static_cast<std::size_t>(m + r)] = std::norm(state.amplitude(0, m)) + std::norm(state.amplitude(1, m));
  return d;
}

// Standard deviation of the position under the distribution renormalized to
// total weight 1.
inline double spread_sigma(const PositionDistribution& dist) {
  const double s = dist.sum();
  if (!(s > 0.0)) throw std::invalid_argument("spread_sigma: distribution has no weight");
  double mean = 0.0;
  for (int m = dist.min_pos; m <= dist.max_pos(); ++m) mean += m * dist.at(m);
  mean /= s;
  double var = 0.0;
  for (int m = dist.min_pos; m <= dist.max_pos(); ++m) {
    const double d = m - mean;
    var += d * d * dist.at(m);
  }
  return std::sqrt(var / s);
}

}  // namespace nhwalk
