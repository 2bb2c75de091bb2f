#pragma once
// Continuous-time limits: generators dPsi/dt = G Psi, an RK4 integrator,
// the decoupled Phi fields and a discrete-walk oracle for the generators.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topowalk/banded_operator.hpp"
#include "topowalk/lattice.hpp"

namespace topowalk {

struct ContinuousRates {
  double gamma = 0.0;   // simple step
  double gamma1 = 0.0;  // split step
  double gamma2 = 0.0;

  double max_rate() const;
  // Throws DomainError on non-finite rates or when all are zero.
  void validate() const;
};

// Generators are banded with half-width 2.
using Generator = BandedOperator;
constexpr int kGeneratorHalfWidth = 2;

Eigen::MatrixXd generator_to_dense(const Generator& g);
// max |G + G^T| entry, honouring the lattice boundary condition.
double anti_hermitian_defect(const Generator& g);

enum class SimplePhase { theta_positive, theta_negative };

Generator bulk_generator_simple(SimplePhase phase, double gamma, const LatticeSpec& lattice);
// phase.name must be I, II, III or IV. I and II give the same generator.
Generator bulk_generator_split(PhaseName phase, double gamma1, double gamma2,
                               const LatticeSpec& lattice);

// Two-phase generators with the seam between x = -1 and x = 0. Lattice must
// span [-8, 8].
Generator boundary_generator_simple(double gamma, const LatticeSpec& lattice);
enum class BoundaryPair { III_IV, I_III };
Generator boundary_generator_split(BoundaryPair pair, double gamma1, double gamma2,
                                   const LatticeSpec& lattice);

// Classic fixed-step RK4. Snapshot times are multiples of dt: the cadence is
// rounded to a whole number of steps. Throws IntegrationFailure on NaN/Inf.
Trajectory evolve_continuous(const WalkerState& state, const Generator& generator, double dt,
                             double t_final, double snapshot_every);
Trajectory evolve_continuous(const WalkerState& state, const Generator& generator, double dt,
                             double t_final, double snapshot_every, const simd::KernelSet& kernels);
double default_dt(const ContinuousRates& rates);

// Phi fields:
//   simple        Phi+- (x) =  +-Psi0(x) + Psi1(x-1)
//   simple_other  Phi+- (x) =  -+Psi0(x) + Psi1(x+1)
//   split_III     Phi+- (x) = +-iPsi0(x) + Psi1(x-1)
//   split_IV      Phi+- (x) = +-iPsi0(x) + Psi1(x+1)
// Neighbour indices always wrap around the window so the map is invertible.
enum class PhiVariant { simple, simple_other, split_III, split_IV };

struct DecoupledField {
  LatticeSpec lattice;
  std::vector<cplx> phi_plus;
  std::vector<cplx> phi_minus;
};

DecoupledField phi_transform(const WalkerState& state, PhiVariant variant);
WalkerState phi_inverse(const DecoupledField& field, PhiVariant variant);

// Right-hand side of the decoupled equations:
//   simple variants: dPhi+-/dt = +-gamma [Phi(x+1) - Phi(x-1)]
//   split variants:  dPhi+-/dt = +-2i g2 Phi(x) +- i g1 [Phi(x-1) + Phi(x+1)]
DecoupledField decoupled_rhs(const DecoupledField& field, PhiVariant variant,
                             const ContinuousRates& rates);

// max over interior snapshots and sites of |central difference - rhs|.
double decoupled_residual(const Trajectory& trajectory, const ContinuousRates& rates,
                          PhiVariant variant);

// Discrete-walk cases with a continuum limit.
enum class ContinuumCase {
  simple_positive,
  simple_negative,
  simple_boundary,
  split_I,
  split_II,
  split_III,
  split_IV,
  split_III_IV,
  split_I_III,
};

std::string to_string(ContinuumCase c);
bool is_boundary_case(ContinuumCase c);

// Angles at step size dt: the pole coordinate becomes pole - gamma dt, the zero
// coordinate becomes +gamma dt. Seams sit between x = -1 and x = 0.
StepProfile scaling_profile(ContinuumCase c, const ContinuousRates& rates, double dt);
// Steps per block: 2 in the bulk, 4 at a seam.
int block_steps(ContinuumCase c);
// Phase applied once per block: -1 for split bulk blocks, otherwise +1.
double block_phase(ContinuumCase c);
Generator analytic_generator(ContinuumCase c, const ContinuousRates& rates,
                             const LatticeSpec& lattice);

struct OracleReport {
  std::vector<double> dts;
  std::vector<double> errors;        // max row error of each raw estimate
  Eigen::MatrixXd estimate;          // extrapolated to dt = 0
  Eigen::MatrixXd analytic;
  std::vector<int> compared_rows;    // dense row indices inside the window
  double max_error = 0.0;            // extrapolated vs analytic, compared rows
  double observed_order = 0.0;       // +inf when the estimates do not move
  bool flagged = false;              // order < 0.5 or non-finite
  std::string note;

  // Extrapolated vs analytic for one row.
  double row_error(int x, int component, const LatticeSpec& lattice) const;
  double estimate_entry(int x, int c, int source_x, int source_c, const LatticeSpec& lattice) const;
};

// Estimates (B(dt) - I) / ((m/2) dt) with B = phase * W^m on the dense
// periodic lattice, extrapolates to dt -> 0 and compares with
// analytic_generator. Boundary cases compare only rows at least `margin`
// sites away from the periodic wrap, which closes a second seam.
OracleReport extract_generator_oracle(ContinuumCase c, const ContinuousRates& rates,
                                      const LatticeSpec& lattice, const std::vector<double>& dts,
                                      int margin = 6);

}  // namespace topowalk
