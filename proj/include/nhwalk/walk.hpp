#pragma once

// One step of the walk is coin-then-shift: U = S (I_p x C). Two shifts are
// provided. The conditional shift moves coin 0 one site up and coin 1 one
// site down. The generalized shift displaces and mixes at once:
//
//   |0, m>  ->  (|0, m-1> + |1, m>)/sqrt(2)
//   |1, m>  ->  (-|0, m> + |1, m+1>)/sqrt(2)
//
// Both are exactly unitary; all norm loss comes from the coin.

#include <stdexcept>
#include <vector>

#include "nhwalk/coin.hpp"
#include "nhwalk/hilbert.hpp"

namespace nhwalk {

enum class ShiftKind { Conditional, Generalized };

class boundary_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline WalkState apply_coin(const WalkState& state, const CoinOp& coin) {
  const int b = state.bound();
  const int r = state.steps_taken();
  std::vector<cplx> out(2 * static_cast<std::size_t>(2 * b + 1), cplx(0.0));
  const cplx c00 = coin.m(0, 0), c01 = coin.m(0, 1), c10 = coin.m(1, 0), c11 = coin.m(1, 1);
  for (int m = -r; m <= r; ++m) {
    const cplx a0 = state.amplitude(0, m);
    const cplx a1 = state.amplitude(1, m);
    out[state.idx(0, m)] = c00 * a0 + c01 * a1;
    out[state.idx(1, m)] = c10 * a0 + c11 * a1;
  }
  return WalkState::assemble(b, r, std::move(out));
}

inline WalkState apply_shift(const WalkState& state, ShiftKind kind) {
  const int b = state.bound();
  const int r = state.steps_taken();
  if (r + 1 > b)
    throw boundary_error("apply_shift: walk support would leave the lattice (increase the bound)");

  auto in = [&](int c, int m) -> cplx { return state.amplitude(c, m); };  // zero outside lattice
  std::vector<cplx> out(2 * static_cast<std::size_t>(2 * b + 1), cplx(0.0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  switch (kind) {
    case ShiftKind::Conditional:
      for (int m = -(r + 1); m <= r + 1; ++m) {
        out[state.idx(0, m)] = in(0, m - 1);
        out[state.idx(1, m)] = in(1, m + 1);
      }
      break;
    case ShiftKind::Generalized:
      for (int m = -(r + 1); m <= r + 1; ++m) {
        out[state.idx(0, m)] = inv_sqrt2 * (in(0, m + 1) - in(1, m));
        out[state.idx(1, m)] = inv_sqrt2 * (in(0, m) + in(1, m - 1));
      }
      break;
  }
  return WalkState::assemble(b, r + 1, std::move(out));
}

inline WalkState step(const WalkState& state, const CoinOp& coin, ShiftKind kind) {
  return apply_shift(apply_coin(state, coin), kind);
}

struct EvolutionTrace {
  WalkState final;
  std::vector<double> norms;  // squared norm after each step, norms[0] = initial
};

inline EvolutionTrace evolve(const WalkState& start, const CoinOp& coin, ShiftKind kind, int n_steps) {
  if (n_steps < 0) throw std::invalid_argument("evolve: negative step count");
  if (start.steps_taken() + n_steps > start.bound())
    throw boundary_error("evolve: step count exceeds the lattice bound");
  EvolutionTrace trace{start, {}};
  trace.norms.reserve(static_cast<std::size_t>(n_steps) + 1);
  trace.norms.push_back(start.norm2());
  for (int i = 0; i < n_steps; ++i) {
    trace.final = step(trace.final, coin, kind);
    trace.norms.push_back(trace.final.norm2());
  }
  return trace;
}

}  // namespace nhwalk
