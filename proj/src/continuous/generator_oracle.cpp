// Generator estimates from the discrete walk: near the degenerate coin angles
// a block of m steps is I + (m/2) dt G + O(dt^2).

#include <cmath>
#include <limits>
#include <numbers>

#include "topowalk/continuous.hpp"
#include "topowalk/discrete.hpp"
#include "topowalk/errors.hpp"

namespace topowalk {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Pole coordinate p becomes p - rate*dt, zero coordinate becomes +rate*dt.
SplitAngles corner(PhaseName phase, const ContinuousRates& r, double dt) {
  const double e1 = r.gamma1 * dt, e2 = r.gamma2 * dt;
  switch (phase) {
    case PhaseName::I: return {e1, kHalfPi - e2};
    case PhaseName::II: return {e1, -kHalfPi - e2};
    case PhaseName::III: return {kHalfPi - e1, e2};
    case PhaseName::IV: return {-kHalfPi - e1, e2};
    default: throw DomainError("not a split-step phase");
  }
}

bool is_simple(ContinuumCase c) {
  return c == ContinuumCase::simple_positive || c == ContinuumCase::simple_negative ||
         c == ContinuumCase::simple_boundary;
}

// Rows whose printed form differs from the discrete limit; reported but not
// part of max_error.
std::vector<std::pair<int, int>> known_mismatches(ContinuumCase c) {
  if (c == ContinuumCase::split_I_III) return {{0, 0}, {0, 1}};
  return {};
}

// Neville's scheme evaluated at dt = 0.
Eigen::MatrixXd extrapolate(const std::vector<double>& h, std::vector<Eigen::MatrixXd> p) {
  const std::size_t n = p.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i + k < n; ++i)
      p[i] = (h[i] * p[i + 1] - h[i + k] * p[i]) / (h[i] - h[i + k]);
  return p[0];
}

// Order p with (h0^p - h1^p) / (h1^p - h2^p) = d0 / d1.
double solve_order(double h0, double h1, double h2, double d0, double d1) {
  auto ratio = [&](double p) {
    return (std::pow(h0, p) - std::pow(h1, p)) / (std::pow(h1, p) - std::pow(h2, p));
  };
  const double target = d0 / d1;
  double lo = 1e-3, hi = 20.0;
  if (target <= ratio(lo)) return 0.0;
  if (target >= ratio(hi)) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string to_string(ContinuumCase c) {
  switch (c) {
    case ContinuumCase::simple_positive: return "simple_positive";
    case ContinuumCase::simple_negative: return "simple_negative";
    case ContinuumCase::simple_boundary: return "simple_boundary";
    case ContinuumCase::split_I: return "split_I";
    case ContinuumCase::split_II: return "split_II";
    case ContinuumCase::split_III: return "split_III";
    case ContinuumCase::split_IV: return "split_IV";
    case ContinuumCase::split_III_IV: return "split_III_IV";
    case ContinuumCase::split_I_III: return "split_I_III";
  }
  return "?";
}

bool is_boundary_case(ContinuumCase c) {
  return c == ContinuumCase::simple_boundary || c == ContinuumCase::split_III_IV ||
         c == ContinuumCase::split_I_III;
}

StepProfile scaling_profile(ContinuumCase c, const ContinuousRates& r, double dt) {
  const double pos = kHalfPi - r.gamma * dt, neg = -kHalfPi - r.gamma * dt;
  switch (c) {
    case ContinuumCase::simple_positive: return SimpleAngleProfile::uniform(pos);
    case ContinuumCase::simple_negative: return SimpleAngleProfile::uniform(neg);
    case ContinuumCase::simple_boundary: return SimpleAngleProfile{pos, neg, 0};
    case ContinuumCase::split_I: return SplitAngleProfile{corner(PhaseName::I, r, dt), corner(PhaseName::I, r, dt), 0};
    case ContinuumCase::split_II: return SplitAngleProfile{corner(PhaseName::II, r, dt), corner(PhaseName::II, r, dt), 0};
    case ContinuumCase::split_III: return SplitAngleProfile{corner(PhaseName::III, r, dt), corner(PhaseName::III, r, dt), 0};
    case ContinuumCase::split_IV: return SplitAngleProfile{corner(PhaseName::IV, r, dt), corner(PhaseName::IV, r, dt), 0};
    case ContinuumCase::split_III_IV: return SplitAngleProfile{corner(PhaseName::III, r, dt), corner(PhaseName::IV, r, dt), 0};
    case ContinuumCase::split_I_III: return SplitAngleProfile{corner(PhaseName::I, r, dt), corner(PhaseName::III, r, dt), 0};
  }
  throw DomainError("unknown continuum case");
}

int block_steps(ContinuumCase c) { return is_boundary_case(c) ? 4 : 2; }

double block_phase(ContinuumCase c) {
  // W^2 -> -I at every split-step corner; W^4 -> I at the seams.
  return (!is_simple(c) && !is_boundary_case(c)) ? -1.0 : 1.0;
}

Generator analytic_generator(ContinuumCase c, const ContinuousRates& r, const LatticeSpec& lat) {
  switch (c) {
    case ContinuumCase::simple_positive: return bulk_generator_simple(SimplePhase::theta_positive, r.gamma, lat);
    case ContinuumCase::simple_negative: return bulk_generator_simple(SimplePhase::theta_negative, r.gamma, lat);
    case ContinuumCase::simple_boundary: return boundary_generator_simple(r.gamma, lat);
    case ContinuumCase::split_I: return bulk_generator_split(PhaseName::I, r.gamma1, r.gamma2, lat);
    case ContinuumCase::split_II: return bulk_generator_split(PhaseName::II, r.gamma1, r.gamma2, lat);
    case ContinuumCase::split_III: return bulk_generator_split(PhaseName::III, r.gamma1, r.gamma2, lat);
    case ContinuumCase::split_IV: return bulk_generator_split(PhaseName::IV, r.gamma1, r.gamma2, lat);
    case ContinuumCase::split_III_IV: return boundary_generator_split(BoundaryPair::III_IV, r.gamma1, r.gamma2, lat);
    case ContinuumCase::split_I_III: return boundary_generator_split(BoundaryPair::I_III, r.gamma1, r.gamma2, lat);
  }
  throw DomainError("unknown continuum case");
}

double OracleReport::row_error(int x, int component, const LatticeSpec& lat) const {
  const auto row = static_cast<Eigen::Index>(2 * lat.index(x)) + component;
  return (estimate.row(row) - analytic.row(row)).cwiseAbs().maxCoeff();
}

double OracleReport::estimate_entry(int x, int c, int sx, int sc, const LatticeSpec& lat) const {
  return estimate(static_cast<Eigen::Index>(2 * lat.index(x)) + c,
                  static_cast<Eigen::Index>(2 * lat.index(lat.wrap(sx))) + sc);
}

OracleReport extract_generator_oracle(ContinuumCase c, const ContinuousRates& rates,
                                      const LatticeSpec& lat, const std::vector<double>& dts,
                                      int margin) {
  if (dts.size() < 3) throw DomainError("oracle needs at least three step sizes");
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0)) throw DomainError("oracle step sizes must be positive");
    if (i > 0 && !(dts[i] < dts[i - 1])) throw DomainError("oracle step sizes must strictly decrease");
  }
  rates.validate();

  OracleReport rep;
  rep.dts = dts;
  rep.analytic = generator_to_dense(analytic_generator(c, rates, lat));

  const auto dim = static_cast<Eigen::Index>(2 * lat.size());
  const auto mismatches = known_mismatches(c);
  for (int x = lat.x_min; x <= lat.x_max; ++x) {
    if (is_boundary_case(c) && (x < lat.x_min + margin || x > lat.x_max - margin)) continue;
    for (int comp = 0; comp < 2; ++comp) {
      bool skip = false;
      for (const auto& [mx, mc] : mismatches) skip = skip || (mx == x && mc == comp);
      if (!skip) rep.compared_rows.push_back(static_cast<int>(2 * lat.index(x)) + comp);
    }
  }
  auto window_max = [&](const Eigen::MatrixXd& m) {
    double worst = 0.0;
    for (int r : rep.compared_rows) worst = std::max(worst, m.row(r).cwiseAbs().maxCoeff());
    return worst;
  };

  const int m = block_steps(c);
  const double phase = block_phase(c);
  std::vector<Eigen::MatrixXd> est;
  for (double dt : dts) {
    const Eigen::MatrixXcd w = dense_step_matrix(lat, scaling_profile(c, rates, dt));
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(dim, dim);
    for (int k = 0; k < m; ++k) b = w * b;
    b *= phase;
    const Eigen::MatrixXcd e = (b - Eigen::MatrixXcd::Identity(dim, dim)) / ((m / 2.0) * dt);
    est.push_back(e.real());
    rep.errors.push_back(window_max(est.back() - rep.analytic));
  }
  rep.estimate = extrapolate(dts, est);
  rep.max_error = window_max(rep.estimate - rep.analytic);

  const std::size_t n = est.size();
  const double d0 = window_max(est[n - 2] - est[n - 3]);
  const double d1 = window_max(est[n - 1] - est[n - 2]);
  if (d0 < 1e-13 && d1 < 1e-13) {
    rep.observed_order = std::numeric_limits<double>::infinity();
    rep.note = "estimates independent of dt";
  } else if (d1 == 0.0) {
    rep.observed_order = 20.0;
  } else {
    rep.observed_order = solve_order(dts[n - 3], dts[n - 2], dts[n - 1], d0, d1);
  }
  rep.flagged = std::isnan(rep.observed_order) || rep.observed_order < 0.5 || !std::isfinite(rep.max_error);
  if (rep.flagged && rep.note.empty()) rep.note = "estimates do not converge as dt -> 0";
  return rep;
}

}  // namespace topowalk
