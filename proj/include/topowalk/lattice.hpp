#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace topowalk {

using cplx = std::complex<double>;

enum class Boundary { periodic, open };

// Finite window [x_min, x_max] of the integer line.
struct LatticeSpec {
  int x_min = -8;
  int x_max = 7;
  Boundary boundary = Boundary::periodic;

  std::size_t size() const noexcept { return static_cast<std::size_t>(x_max - x_min + 1); }
  bool contains(int x) const noexcept { return x >= x_min && x <= x_max; }
  std::size_t index(int x) const noexcept { return static_cast<std::size_t>(x - x_min); }
  int site(std::size_t i) const noexcept { return x_min + static_cast<int>(i); }
  // Periodic image of x inside the window.
  int wrap(int x) const noexcept;

  // Throws DomainError unless x_min < x_max and there are at least 8 sites.
  void validate() const;
};

LatticeSpec make_lattice(int x_min, int x_max, Boundary boundary = Boundary::periodic);

// Two-component amplitude field. psi0[i], psi1[i] belong to site x_min + i.
struct WalkerState {
  LatticeSpec lattice;
  std::vector<cplx> psi0;
  std::vector<cplx> psi1;

  WalkerState() = default;
  explicit WalkerState(const LatticeSpec& lat)
      : lattice(lat), psi0(lat.size()), psi1(lat.size()) {}

  cplx& amp(int component, int x) {
    return (component == 0 ? psi0 : psi1)[lattice.index(x)];
  }
  const cplx& amp(int component, int x) const {
    return (component == 0 ? psi0 : psi1)[lattice.index(x)];
  }
  double probability(int x) const { return std::norm(psi0[lattice.index(x)]) + std::norm(psi1[lattice.index(x)]); }
};

double norm_squared(const WalkerState& state);

// Gaussian amplitude exp(-(x-c)^2 / (4 s^2)) on both components, weighted by
// (w0, w1), normalized to 1. spread == 0 gives a single site.
WalkerState make_packet(const LatticeSpec& lattice, int center, double spread, cplx w0, cplx w1);

// Probability in [x_lo, x_hi]; throws DomainError for an inverted range.
// The range is clipped to the lattice.
double region_probability(const WalkerState& state, int x_lo, int x_hi);

double mean_position(const WalkerState& state);
double position_spread(const WalkerState& state);

// Piecewise-constant angles: `right` on x >= boundary_site, `left` below.
struct SimpleAngleProfile {
  double right = 0.0;
  double left = 0.0;
  int boundary_site = 0;

  static SimpleAngleProfile uniform(double theta) { return {theta, theta, 0}; }
  double theta(int x) const noexcept { return x >= boundary_site ? right : left; }
};

struct SplitAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

struct SplitAngleProfile {
  SplitAngles right;
  SplitAngles left;
  int boundary_site = 0;

  static SplitAngleProfile uniform(double t1, double t2) { return {{t1, t2}, {t1, t2}, 0}; }
  const SplitAngles& at(int x) const noexcept { return x >= boundary_site ? right : left; }
};

using StepProfile = std::variant<SimpleAngleProfile, SplitAngleProfile>;

// Throws DomainError if any angle exceeds pi in magnitude.
void validate_profile(const StepProfile& profile);

enum class PhaseName { I, II, III, IV, SimplePositive, SimpleNegative };

struct PhaseLabel {
  int nu0 = 0;
  int nu1 = 0;
  PhaseName name = PhaseName::I;

  bool operator==(const PhaseLabel&) const = default;
};

std::string to_string(PhaseName name);
// Split-step label from a winding pair: I=(1,1), II=(0,0), III=(0,1), IV=(1,0).
PhaseLabel split_phase_from_windings(int nu0, int nu1);

// Sampled evolution. `times` are continuous times, or step counts for
// discrete runs.
struct Trajectory {
  std::vector<double> times;
  std::vector<WalkerState> states;
};

}  // namespace topowalk
