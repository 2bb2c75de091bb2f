#include <cmath>

#include "topowalk/continuous.hpp"
#include "topowalk/errors.hpp"

namespace topowalk {
namespace {

const cplx kI(0.0, 1.0);

bool is_split(PhiVariant v) { return v == PhiVariant::split_III || v == PhiVariant::split_IV; }

// Offset of the Psi1 partner and the Psi0 weight carried by Phi+.
int partner_offset(PhiVariant v) {
  return (v == PhiVariant::simple || v == PhiVariant::split_III) ? -1 : 1;
}
cplx plus_weight(PhiVariant v) {
  switch (v) {
    case PhiVariant::simple: return 1.0;
    case PhiVariant::simple_other: return -1.0;
    default: return kI;
  }
}

std::size_t wrapped(const LatticeSpec& lat, std::size_t i, int d) {
  const auto n = static_cast<long long>(lat.size());
  long long j = (static_cast<long long>(i) + d) % n;
  if (j < 0) j += n;
  return static_cast<std::size_t>(j);
}

}  // namespace

DecoupledField phi_transform(const WalkerState& s, PhiVariant v) {
  const auto& lat = s.lattice;
  const int d = partner_offset(v);
  const cplx a = plus_weight(v);
  DecoupledField f{lat, std::vector<cplx>(lat.size()), std::vector<cplx>(lat.size())};
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const cplx p1 = s.psi1[wrapped(lat, i, d)];
    f.phi_plus[i] = a * s.psi0[i] + p1;
    f.phi_minus[i] = -a * s.psi0[i] + p1;
  }
  return f;
}

WalkerState phi_inverse(const DecoupledField& f, PhiVariant v) {
  const auto& lat = f.lattice;
  const int d = partner_offset(v);
  const cplx a = plus_weight(v);
  WalkerState s(lat);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    s.psi0[i] = (f.phi_plus[i] - f.phi_minus[i]) / (2.0 * a);
    s.psi1[wrapped(lat, i, d)] = (f.phi_plus[i] + f.phi_minus[i]) / 2.0;
  }
  return s;
}

DecoupledField decoupled_rhs(const DecoupledField& f, PhiVariant v, const ContinuousRates& r) {
  const auto& lat = f.lattice;
  DecoupledField out{lat, std::vector<cplx>(lat.size()), std::vector<cplx>(lat.size())};
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const std::size_t l = wrapped(lat, i, -1), rr = wrapped(lat, i, 1);
    for (int sign : {1, -1}) {
      const auto& phi = sign > 0 ? f.phi_plus : f.phi_minus;
      auto& dst = sign > 0 ? out.phi_plus : out.phi_minus;
      if (is_split(v))
        dst[i] = double(sign) * (2.0 * kI * r.gamma2 * phi[i] + kI * r.gamma1 * (phi[l] + phi[rr]));
      else
        dst[i] = double(sign) * r.gamma * (phi[rr] - phi[l]);
    }
  }
  return out;
}

double decoupled_residual(const Trajectory& traj, const ContinuousRates& rates, PhiVariant v) {
  if (traj.states.size() != traj.times.size()) throw DomainError("trajectory times and states differ in length");
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < traj.states.size(); ++j) {
    const double span = traj.times[j + 1] - traj.times[j - 1];
    if (!(span > 0.0)) throw DomainError("trajectory times must increase");
    const auto before = phi_transform(traj.states[j - 1], v);
    const auto after = phi_transform(traj.states[j + 1], v);
    const auto rhs = decoupled_rhs(phi_transform(traj.states[j], v), v, rates);
    for (std::size_t i = 0; i < rhs.phi_plus.size(); ++i) {
      worst = std::max(worst, std::abs((after.phi_plus[i] - before.phi_plus[i]) / span - rhs.phi_plus[i]));
      worst = std::max(worst, std::abs((after.phi_minus[i] - before.phi_minus[i]) / span - rhs.phi_minus[i]));
    }
  }
  return worst;
}

}  // namespace topowalk
