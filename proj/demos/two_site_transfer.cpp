// Minimal library tour: stay/transfer curves of the leaky two-site system,
// the coin they induce, and the walk statistics that coin produces.

#include <cstdio>

#include "nhwalk/analysis.hpp"
#include "nhwalk/coin.hpp"
#include "nhwalk/dimer.hpp"
#include "nhwalk/walk.hpp"

int main() {
  const double V = 1.0;
  const double lambda = 0.5;

  std::printf("# stay/transfer at V = %.1f, lambda = %.1f (destination-site leak)\n", V, lambda);
  std::printf("t,p_stay,p_transfer,oracle_transfer\n");
  const nhwalk::DimerParams params(0.0, 0.0, 0.0, lambda, V);
  for (int i = 0; i <= 20; ++i) {
    const double t = 0.25 * i;
    const auto pr = nhwalk::resonance_probs(V, 0.0, lambda, t);
    const auto u = nhwalk::propagator_oracle(params, t);
    std::printf("%.2f,%.6f,%.6f,%.6f\n", t, pr.p_ll, pr.p_lm, std::norm(u(1, 0)));
  }

  const double tau = 0.2;
  const auto coin = nhwalk::dimer_coin(V, lambda, tau);
  std::printf("\n# coin at tau = %.2f: a1 = %.6f, a2 = %.6f, survival %.6f per step\n", tau,
              coin.m(0, 0).real(), coin.m(0, 1).real(), coin.norm_factor());

  const int steps = 50;
  nhwalk::WalkState start(nhwalk::InitialStateKind::Localized, steps);
  const auto trace = nhwalk::evolve(start, coin, nhwalk::ShiftKind::Generalized, steps);
  const auto dist = nhwalk::position_distribution(trace.final);
  std::printf("# after %d steps: surviving norm %.3e, spread sigma %.3f, site entropy %.6f\n", steps,
              trace.norms.back(), nhwalk::spread_sigma(dist),
              nhwalk::von_neumann_entropy_avg(dist, steps));
  return 0;
}
