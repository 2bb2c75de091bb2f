#include "topowalk/discrete.hpp"

namespace topowalk {

Trajectory evolve_discrete(const WalkerState& state, const StepProfile& profile,
                           std::size_t n_steps, cplx frame_phase, std::size_t snapshot_every) {
  if (snapshot_every == 0) snapshot_every = 1;
  const BandedOperator w = step_operator(state.lattice, profile);
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(state);

  WalkerState cur = state;
  WalkerState next(state.lattice);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    w.apply(cur, next);
    std::swap(cur, next);
    if (n % 2 == 0 && frame_phase != cplx(1.0, 0.0)) {
      for (auto& a : cur.psi0) a *= frame_phase;
      for (auto& a : cur.psi1) a *= frame_phase;
    }
    if (n % snapshot_every == 0 || n == n_steps) {
      traj.times.push_back(static_cast<double>(n));
      traj.states.push_back(cur);
    }
  }
  return traj;
}

}  // namespace topowalk
