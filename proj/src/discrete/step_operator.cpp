#include <cmath>
#include <numbers>

#include "topowalk/discrete.hpp"
#include "topowalk/errors.hpp"

namespace topowalk {

Eigen::Matrix2cd coin_matrix(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix2cd m;
  m << c, s, s, -c;
  return m;
}

Eigen::Matrix2d rot_y(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Eigen::Matrix2d m;
  m << c, -s, s, c;
  return m;
}

namespace {

constexpr double kQuarter = std::numbers::pi / 4.0;

const Eigen::Matrix2d& pauli_z() {
  static const Eigen::Matrix2d z = (Eigen::Matrix2d() << 1, 0, 0, -1).finished();
  return z;
}

}  // namespace

// W = R A Z S A R^T with A = exp(-i theta/2 Y), R = exp(i pi/4 Y). Writing
// B = A R^T (applied before the shift) and C = R A Z (after it):
//   new psi_t(x) = C(x)[t,0] (B(x-1) psi(x-1))_0 + C(x)[t,1] (B(x+1) psi(x+1))_1
BandedOperator simple_step_operator(const LatticeSpec& lattice, const SimpleAngleProfile& profile) {
  validate_profile(profile);
  BandedOperator op(lattice, 1);
  const bool periodic = lattice.boundary == Boundary::periodic;
  for (int x = lattice.x_min; x <= lattice.x_max; ++x) {
    const Eigen::Matrix2d c = rot_y(-kQuarter) * rot_y(profile.theta(x) / 2.0) * pauli_z();
    for (int d : {-1, 1}) {
      int y = x + d;
      if (!lattice.contains(y)) {
        if (!periodic) continue;
        y = lattice.wrap(y);
      }
      const Eigen::Matrix2d b = rot_y(profile.theta(y) / 2.0) * rot_y(kQuarter);
      const int via = d < 0 ? 0 : 1;  // component 0 arrives from the left
      for (int t = 0; t < 2; ++t)
        for (int s = 0; s < 2; ++s) op.set(x, t, s, d, c(t, via) * b(via, s));
    }
  }
  return op;
}

// W = R A1 Z S- B2 Z S+ A1 R^T with A1 = exp(-i theta1/2 Y), B2 = exp(-i theta2 Y).
// P = A1 R^T, Q = B2 Z, C = R A1 Z:
//   offset -1: C(x)[t,0] Q(x)[0,0] P(x-1)[0,s]
//   offset  0: C(x)[t,0] Q(x)[0,1] P(x)[1,s] + C(x)[t,1] Q(x+1)[1,0] P(x)[0,s]
//   offset +1: C(x)[t,1] Q(x+1)[1,1] P(x+1)[1,s]
BandedOperator split_step_operator(const LatticeSpec& lattice, const SplitAngleProfile& profile) {
  validate_profile(profile);
  BandedOperator op(lattice, 1);
  const bool periodic = lattice.boundary == Boundary::periodic;
  auto p_at = [&](int y) { return Eigen::Matrix2d(rot_y(profile.at(y).theta1 / 2.0) * rot_y(kQuarter)); };
  auto q_at = [&](int y) { return Eigen::Matrix2d(rot_y(profile.at(y).theta2) * pauli_z()); };
  // Neighbour y = x + d, or nothing if it falls off an open edge.
  auto neighbour = [&](int x, int d, int& y) {
    y = x + d;
    if (lattice.contains(y)) return true;
    if (!periodic) return false;
    y = lattice.wrap(y);
    return true;
  };
  for (int x = lattice.x_min; x <= lattice.x_max; ++x) {
    const Eigen::Matrix2d c = rot_y(-kQuarter) * rot_y(profile.at(x).theta1 / 2.0) * pauli_z();
    const Eigen::Matrix2d qx = q_at(x);
    const Eigen::Matrix2d px = p_at(x);
    int yl = 0, yr = 0;
    const bool has_l = neighbour(x, -1, yl);
    const bool has_r = neighbour(x, 1, yr);
    // On an open edge S- has nothing to pull from x+1, so every Q(x+1) term drops.
    for (int t = 0; t < 2; ++t) {
      for (int s = 0; s < 2; ++s) {
        if (has_l) op.set(x, t, s, -1, c(t, 0) * qx(0, 0) * p_at(yl)(0, s));
        double mid = c(t, 0) * qx(0, 1) * px(1, s);
        if (has_r) {
          const Eigen::Matrix2d qr = q_at(yr);
          mid += c(t, 1) * qr(1, 0) * px(0, s);
          op.set(x, t, s, 1, c(t, 1) * qr(1, 1) * p_at(yr)(1, s));
        }
        op.set(x, t, s, 0, mid);
      }
    }
  }
  return op;
}

BandedOperator step_operator(const LatticeSpec& lattice, const StepProfile& profile) {
  if (const auto* s = std::get_if<SimpleAngleProfile>(&profile)) return simple_step_operator(lattice, *s);
  return split_step_operator(lattice, std::get<SplitAngleProfile>(profile));
}

WalkerState step_simple(const WalkerState& state, const SimpleAngleProfile& profile) {
  WalkerState out;
  simple_step_operator(state.lattice, profile).apply(state, out);
  return out;
}

WalkerState step_split(const WalkerState& state, const SplitAngleProfile& profile) {
  WalkerState out;
  split_step_operator(state.lattice, profile).apply(state, out);
  return out;
}

}  // namespace topowalk
