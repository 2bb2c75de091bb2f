// Dense 2N x 2N matrices built directly from coins and shifts. Slow, but each
// factor is written exactly as defined, so it checks the stencils.

#include <numbers>

#include "topowalk/discrete.hpp"
#include "topowalk/errors.hpp"

namespace topowalk {
namespace {

using Mat = Eigen::MatrixXcd;
constexpr double kQuarter = std::numbers::pi / 4.0;

template <class Fn>
Mat site_op(const LatticeSpec& lat, Fn fn) {
  const auto n = static_cast<Eigen::Index>(lat.size());
  Mat m = Mat::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) m.block<2, 2>(2 * j, 2 * j) = fn(lat.site(static_cast<std::size_t>(j)));
  return m;
}

// Component c moves by shift_c sites.
Mat shift(const LatticeSpec& lat, int shift0, int shift1) {
  const auto n = static_cast<Eigen::Index>(lat.size());
  Mat m = Mat::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const int x = lat.site(static_cast<std::size_t>(j));
    const auto to0 = static_cast<Eigen::Index>(lat.index(lat.wrap(x + shift0)));
    const auto to1 = static_cast<Eigen::Index>(lat.index(lat.wrap(x + shift1)));
    m(2 * to0, 2 * j) = 1.0;
    m(2 * to1 + 1, 2 * j + 1) = 1.0;
  }
  return m;
}

Eigen::Matrix2cd ry(double phi) { return rot_y(phi).cast<cplx>(); }

Eigen::Matrix2cd pauli(char which) {
  Eigen::Matrix2cd m;
  if (which == 'X') m << 0, 1, 1, 0;
  else m << 1, 0, 0, -1;
  return m;
}

void check_oracle_lattice(const LatticeSpec& lat) {
  lat.validate();
  if (lat.boundary != Boundary::periodic)
    throw DomainError("dense oracle is defined for periodic lattices only");
  if (lat.size() > kMaxDenseSites) throw DomainError("dense oracle is capped at 64 sites");
}

}  // namespace

Mat build_dense_operator(const LatticeSpec& lat, const StepProfile& profile, DenseForm form) {
  check_oracle_lattice(lat);
  validate_profile(profile);
  const Mat S = shift(lat, 1, -1);
  const Mat Sp = shift(lat, 1, 0);
  const Mat Sm = shift(lat, 0, -1);
  const Mat Zc = site_op(lat, [](int) { return pauli('Z'); });
  const Mat Xc = site_op(lat, [](int) { return pauli('X'); });

  if (const auto* p = std::get_if<SimpleAngleProfile>(&profile)) {
    const Mat A = site_op(lat, [&](int x) { return ry(p->theta(x) / 2.0); });
    if (form == DenseForm::composed) return A * Zc * S * A;
    const cplx e(std::cos(kQuarter), -std::sin(kQuarter));
    const Mat D = site_op(lat, [&](int) {
      Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
      d(0, 0) = e;
      d(1, 1) = std::conj(e);
      return d;
    });
    const Mat F = A * D * Sm;
    // F is a product of unitaries, so F^-1 = F^dagger.
    return cplx(0.0, 1.0) * F * Xc * F.adjoint() * Xc;
  }
  const auto& p = std::get<SplitAngleProfile>(profile);
  const Mat A1 = site_op(lat, [&](int x) { return ry(p.at(x).theta1 / 2.0); });
  if (form == DenseForm::composed) {
    const Mat B2 = site_op(lat, [&](int x) { return ry(p.at(x).theta2); });
    return A1 * Zc * Sm * B2 * Zc * Sp * A1;
  }
  const Mat Bh = site_op(lat, [&](int x) { return ry(p.at(x).theta2 / 2.0); });
  const Mat F = A1 * Zc * Sm * Bh;
  return -F * Xc * F.adjoint() * Xc;
}

Mat chiral_frame(const Mat& u_prime) {
  const Eigen::Index n2 = u_prime.rows();
  Mat R = Mat::Zero(n2, n2);
  for (Eigen::Index j = 0; j < n2; j += 2) R.block<2, 2>(j, j) = ry(-kQuarter);
  return R * u_prime * R.adjoint();
}

Mat dense_step_matrix(const LatticeSpec& lattice, const StepProfile& profile) {
  return chiral_frame(build_dense_operator(lattice, profile, DenseForm::composed));
}

Eigen::VectorXcd to_vector(const WalkerState& state) {
  const auto n = static_cast<Eigen::Index>(state.lattice.size());
  Eigen::VectorXcd v(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    v(2 * j) = state.psi0[static_cast<std::size_t>(j)];
    v(2 * j + 1) = state.psi1[static_cast<std::size_t>(j)];
  }
  return v;
}

WalkerState from_vector(const LatticeSpec& lattice, const Eigen::VectorXcd& v) {
  WalkerState s(lattice);
  if (v.size() != static_cast<Eigen::Index>(2 * lattice.size()))
    throw DomainError("vector length does not match lattice");
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    s.psi0[j] = v(static_cast<Eigen::Index>(2 * j));
    s.psi1[j] = v(static_cast<Eigen::Index>(2 * j + 1));
  }
  return s;
}

}  // namespace topowalk
