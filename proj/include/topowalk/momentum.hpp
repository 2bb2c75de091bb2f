#pragma once
// Momentum-space coin matrices, dispersion and winding-number invariants.

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "topowalk/lattice.hpp"

namespace topowalk {

struct SimpleParams {
  double theta = 0.0;
};
struct SplitParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
};
using WalkParams = std::variant<SimpleParams, SplitParams>;

// Bloch matrix of one step W at momentum k (unitary).
Eigen::Matrix2cd wc_matrix(const WalkParams& params, double k);

// Split-step W_c = [[b0, b1], [-conj(b1), b0]].
struct SplitWcEntries {
  double beta0 = 0.0;
  cplx beta1;
};
SplitWcEntries split_wc_entries(double theta1, double theta2, double k);

struct DispersionPoint {
  double k = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
};
// omega in (-pi, pi] from the closed-form eigenvalues e^{-i omega}.
DispersionPoint dispersion(const WalkParams& params, double k);
// Grid k_j = -pi + 2 pi (j + 1) / n_k, j = 0..n_k-1, so the last point is pi.
std::vector<DispersionPoint> dispersion_band(const WalkParams& params, int n_k);

// G_c = exp(i pi/4 Y) F(k) exp(-i pi/4 Y), F the chiral-frame factor of W.
Eigen::Matrix2cd gc_matrix(const WalkParams& params, double k);

// Closed-form split-step entries g0, g1 (G_c prefactor e^{-ik/2} dropped).
struct SplitGcEntries {
  cplx g0;
  cplx g1;
};
SplitGcEntries split_gc_entries(double theta1, double theta2, double k);

struct WindingResult {
  int value = 0;
  double raw = 0.0;        // before rounding
  double residual = 0.0;   // |raw - value|
  double min_magnitude = 0.0;
};

constexpr double kBoundaryTolerance = 1e-9;

// nu_alpha from the phase winding of <alpha|G_c(k)|0> over a uniform k grid
// of n_k intervals. Throws OnPhaseBoundary if the integrand magnitude drops
// to 1e-9 or below, DomainError if n_k < 256.
WindingResult winding_number(int alpha, const WalkParams& params, int n_k = 1024);

// Both invariants plus the label.
PhaseLabel classify_by_winding(const WalkParams& params, int n_k = 1024);

// z0, z1 as numerator/denominator pairs so |z| = inf is representable.
struct ZValues {
  double num0 = 0.0, den0 = 0.0, num1 = 0.0, den1 = 0.0;
  double abs_z0() const;
  double abs_z1() const;
};
ZValues z_values(double theta1, double theta2);

// nu_a = 1 iff |z_a| < 1. Throws OnPhaseBoundary if | |z_a| - 1 | <= 1e-9.
PhaseLabel classify_split(double theta1, double theta2);

struct PhaseGrid {
  double t1_min = -3.14159, t1_max = 3.14159;
  double t2_min = -3.14159, t2_max = 3.14159;
  int res1 = 2;
  int res2 = 2;
};
struct PhaseCell {
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::optional<PhaseLabel> label;  // empty on a phase boundary
};
// Grid points theta = min + (max - min) * i / (res - 1), theta2 fastest.
std::vector<PhaseCell> phase_diagram(const PhaseGrid& grid);
// Same labelling for an explicit list of (theta1, theta2) points.
std::vector<PhaseCell> phase_points(const std::vector<std::pair<double, double>>& points);
// (0, pi/2), (0, -pi/2), (pi/2, 0), (-pi/2, 0): one point inside each of I..IV.
std::vector<std::pair<double, double>> phase_corners();

}  // namespace topowalk
