#include "topowalk/lattice.hpp"

#include <cmath>
#include <numbers>

#include "topowalk/errors.hpp"
#include "topowalk/simd/kernels.hpp"

namespace topowalk {

int LatticeSpec::wrap(int x) const noexcept {
  const int n = static_cast<int>(size());
  int r = (x - x_min) % n;
  if (r < 0) r += n;
  return x_min + r;
}

void LatticeSpec::validate() const {
  if (x_min >= x_max) throw DomainError("lattice needs x_min < x_max");
  if (size() < 8) throw DomainError("lattice needs at least 8 sites");
}

LatticeSpec make_lattice(int x_min, int x_max, Boundary boundary) {
  LatticeSpec lat{x_min, x_max, boundary};
  lat.validate();
  return lat;
}

double norm_squared(const WalkerState& state) {
  const auto& k = simd::active_kernels();
  return k.norm2(state.psi0.size(), state.psi0.data()) +
         k.norm2(state.psi1.size(), state.psi1.data());
}

WalkerState make_packet(const LatticeSpec& lattice, int center, double spread, cplx w0, cplx w1) {
  if (!lattice.contains(center)) throw DomainError("packet center outside lattice");
  if (!(spread >= 0.0) || !std::isfinite(spread)) throw DomainError("packet spread must be >= 0");
  WalkerState s(lattice);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const int x = lattice.site(i);
    double g = 0.0;
    if (spread == 0.0) {
      g = x == center ? 1.0 : 0.0;
    } else {
      const double d = x - center;
      g = std::exp(-d * d / (4.0 * spread * spread));
    }
    s.psi0[i] = g * w0;
    s.psi1[i] = g * w1;
  }
  const double n = norm_squared(s);
  if (!(n > 0.0)) throw DomainError("packet weights are zero");
  const double inv = 1.0 / std::sqrt(n);
  for (auto& a : s.psi0) a *= inv;
  for (auto& a : s.psi1) a *= inv;
  return s;
}

double region_probability(const WalkerState& state, int x_lo, int x_hi) {
  if (x_lo > x_hi) throw DomainError("region has x_lo > x_hi");
  const auto& lat = state.lattice;
  const int lo = std::max(x_lo, lat.x_min);
  const int hi = std::min(x_hi, lat.x_max);
  double p = 0.0;
  for (int x = lo; x <= hi; ++x) p += state.probability(x);
  return p;
}

double mean_position(const WalkerState& state) {
  double m = 0.0, n = 0.0;
  for (std::size_t i = 0; i < state.lattice.size(); ++i) {
    const double p = std::norm(state.psi0[i]) + std::norm(state.psi1[i]);
    m += p * state.lattice.site(i);
    n += p;
  }
  return n > 0.0 ? m / n : 0.0;
}

double position_spread(const WalkerState& state) {
  const double mu = mean_position(state);
  double v = 0.0, n = 0.0;
  for (std::size_t i = 0; i < state.lattice.size(); ++i) {
    const double p = std::norm(state.psi0[i]) + std::norm(state.psi1[i]);
    const double d = state.lattice.site(i) - mu;
    v += p * d * d;
    n += p;
  }
  return n > 0.0 ? std::sqrt(v / n) : 0.0;
}

void validate_profile(const StepProfile& profile) {
  auto ok = [](double a) { return std::isfinite(a) && std::abs(a) <= std::numbers::pi + 1e-12; };
  if (const auto* s = std::get_if<SimpleAngleProfile>(&profile)) {
    if (!ok(s->left) || !ok(s->right)) throw DomainError("simple-step angle must satisfy |theta| <= pi");
  } else {
    const auto& p = std::get<SplitAngleProfile>(profile);
    for (const auto& a : {p.left, p.right})
      if (!ok(a.theta1) || !ok(a.theta2))
        throw DomainError("split-step angles must satisfy |theta| <= pi");
  }
}

std::string to_string(PhaseName name) {
  switch (name) {
    case PhaseName::I: return "I";
    case PhaseName::II: return "II";
    case PhaseName::III: return "III";
    case PhaseName::IV: return "IV";
    case PhaseName::SimplePositive: return "SimplePositive";
    case PhaseName::SimpleNegative: return "SimpleNegative";
  }
  return "?";
}

PhaseLabel split_phase_from_windings(int nu0, int nu1) {
  PhaseName name = PhaseName::I;
  if (nu0 == 1 && nu1 == 1) name = PhaseName::I;
  else if (nu0 == 0 && nu1 == 0) name = PhaseName::II;
  else if (nu0 == 0 && nu1 == 1) name = PhaseName::III;
  else if (nu0 == 1 && nu1 == 0) name = PhaseName::IV;
  else throw DomainError("winding pair outside {0,1}^2");
  return {nu0, nu1, name};
}

}  // namespace topowalk
