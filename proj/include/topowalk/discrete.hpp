#pragma once
// Discrete-time simple-step and split-step walks in the chiral frame.

#include <Eigen/Dense>

#include "topowalk/banded_operator.hpp"
#include "topowalk/lattice.hpp"

namespace topowalk {

// [[cos t, sin t], [sin t, -cos t]]
Eigen::Matrix2cd coin_matrix(double theta);
// exp(-i phi Y) = [[cos phi, -sin phi], [sin phi, cos phi]]
Eigen::Matrix2d rot_y(double phi);

// One step W as a banded stencil (half-width 1). Inhomogeneous profiles take
// each coin angle from the site the coin acts on.
BandedOperator simple_step_operator(const LatticeSpec& lattice, const SimpleAngleProfile& profile);
BandedOperator split_step_operator(const LatticeSpec& lattice, const SplitAngleProfile& profile);
BandedOperator step_operator(const LatticeSpec& lattice, const StepProfile& profile);

WalkerState step_simple(const WalkerState& state, const SimpleAngleProfile& profile);
WalkerState step_split(const WalkerState& state, const SplitAngleProfile& profile);

// Dense oracle, periodic lattices with at most 64 sites. Ordering is
// site-major, component-minor: index 2*(x - x_min) + c.
//   composed: U' built factor by factor from coins and shifts
//   chiral:   iF X F^-1 X (simple), -F X F^-1 X (split)
enum class DenseForm { composed, chiral };
constexpr std::size_t kMaxDenseSites = 64;

Eigen::MatrixXcd build_dense_operator(const LatticeSpec& lattice, const StepProfile& profile,
                                      DenseForm form);
// W = exp(i pi/4 Y) U' exp(-i pi/4 Y), applied site by site.
Eigen::MatrixXcd chiral_frame(const Eigen::MatrixXcd& u_prime);
// Dense W, the matrix of step_operator().
Eigen::MatrixXcd dense_step_matrix(const LatticeSpec& lattice, const StepProfile& profile);

Eigen::VectorXcd to_vector(const WalkerState& state);
WalkerState from_vector(const LatticeSpec& lattice, const Eigen::VectorXcd& v);

// Applies W n_steps times. frame_phase multiplies the state once per
// completed two-step block. Snapshots at step 0, every `snapshot_every`
// steps, and the final step; times hold step counts.
Trajectory evolve_discrete(const WalkerState& state, const StepProfile& profile,
                           std::size_t n_steps, cplx frame_phase = 1.0,
                           std::size_t snapshot_every = 1);

}  // namespace topowalk
