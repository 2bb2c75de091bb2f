#include <cmath>

#include "topowalk/continuous.hpp"
#include "topowalk/errors.hpp"
#include "topowalk/simd/kernels.hpp"

namespace topowalk {

double default_dt(const ContinuousRates& rates) {
  rates.validate();
  return 0.01 / rates.max_rate();
}

Trajectory evolve_continuous(const WalkerState& state, const Generator& generator, double dt,
                             double t_final, double snapshot_every) {
  return evolve_continuous(state, generator, dt, t_final, snapshot_every, simd::active_kernels());
}

Trajectory evolve_continuous(const WalkerState& state, const Generator& generator, double dt,
                             double t_final, double snapshot_every, const simd::KernelSet& k) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw DomainError("t_final must be >= 0");
  if (state.psi0.size() != generator.lattice().size())
    throw DomainError("state does not match generator lattice");

  const std::size_t n = state.psi0.size();
  const auto n_steps = static_cast<long long>(std::llround(t_final / dt));
  long long every = snapshot_every > 0.0 ? std::llround(snapshot_every / dt) : n_steps;
  if (every < 1) every = 1;

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(state);

  WalkerState y = state;
  WalkerState k1(state.lattice), k2(state.lattice), k3(state.lattice), k4(state.lattice),
      tmp(state.lattice);
  const double h = dt;
  auto stage = [&](const WalkerState& base, const WalkerState& slope, double scale) {
    k.axpy(n, scale, slope.psi0.data(), base.psi0.data(), tmp.psi0.data());
    k.axpy(n, scale, slope.psi1.data(), base.psi1.data(), tmp.psi1.data());
  };

  for (long long step = 1; step <= n_steps; ++step) {
    generator.apply(y, k1, k);
    stage(y, k1, h / 2);
    generator.apply(tmp, k2, k);
    stage(y, k2, h / 2);
    generator.apply(tmp, k3, k);
    stage(y, k3, h);
    generator.apply(tmp, k4, k);
    k.rk4_combine(n, h, k1.psi0.data(), k2.psi0.data(), k3.psi0.data(), k4.psi0.data(), y.psi0.data());
    k.rk4_combine(n, h, k1.psi1.data(), k2.psi1.data(), k3.psi1.data(), k4.psi1.data(), y.psi1.data());

    const bool snap = step % every == 0 || step == n_steps;
    if (snap || step % 64 == 0) {
      const double nrm = k.norm2(n, y.psi0.data()) + k.norm2(n, y.psi1.data());
      if (!std::isfinite(nrm))
        throw IntegrationFailure("non-finite amplitude during integration", static_cast<double>(step) * dt);
    }
    if (snap) {
      traj.times.push_back(static_cast<double>(step) * dt);
      traj.states.push_back(y);
    }
  }
  return traj;
}

}  // namespace topowalk
