#include <cmath>
#include <numbers>

#include "topowalk/errors.hpp"
#include "topowalk/momentum.hpp"

namespace topowalk {

WindingResult winding_number(int alpha, const WalkParams& params, int n_k) {
  if (alpha != 0 && alpha != 1) throw DomainError("alpha must be 0 or 1");
  if (n_k < 256) throw DomainError("winding needs n_k >= 256");
  constexpr double pi = std::numbers::pi;
  auto f = [&](double k) { return gc_matrix(params, k)(alpha, 0); };

  cplx prev = f(-pi);
  double min_mag = std::abs(prev);
  double total = 0.0;
  for (int j = 1; j <= n_k; ++j) {
    const cplx cur = f(-pi + 2.0 * pi * j / n_k);
    min_mag = std::min(min_mag, std::abs(cur));
    if (min_mag <= kBoundaryTolerance)
      throw OnPhaseBoundary("winding integrand vanishes: parameters sit on a phase boundary");
    total += std::arg(cur / prev);
    prev = cur;
  }
  const double w = total / (2.0 * pi);
  // Raw windings are 0 or -1. The two walks orient the chiral frame
  // differently, hence the different offsets.
  const double raw = std::holds_alternative<SimpleParams>(params) ? 1.0 + w : -w;
  WindingResult r;
  r.raw = raw;
  r.value = static_cast<int>(std::lround(raw));
  r.residual = std::abs(raw - r.value);
  r.min_magnitude = min_mag;
  return r;
}

PhaseLabel classify_by_winding(const WalkParams& params, int n_k) {
  const int nu0 = winding_number(0, params, n_k).value;
  const int nu1 = winding_number(1, params, n_k).value;
  if (std::holds_alternative<SimpleParams>(params)) {
    if (nu0 == 1 && nu1 == 0) return {1, 0, PhaseName::SimplePositive};
    if (nu0 == 0 && nu1 == 1) return {0, 1, PhaseName::SimpleNegative};
    throw DomainError("unexpected simple-step winding pair");
  }
  return split_phase_from_windings(nu0, nu1);
}

double ZValues::abs_z0() const { return std::abs(num0) / std::abs(den0); }
double ZValues::abs_z1() const { return std::abs(num1) / std::abs(den1); }

ZValues z_values(double t1, double t2) {
  const double tp = t1 + t2, tm = t1 - t2;
  ZValues z;
  z.num0 = std::cos(tp / 2) + std::sin(tm / 2);
  z.den0 = std::cos(tp / 2) - std::sin(tm / 2);
  z.num1 = std::cos(tm / 2) - std::sin(tp / 2);
  z.den1 = std::cos(tm / 2) + std::sin(tp / 2);
  return z;
}

namespace {

// 1 if |num/den| < 1, 0 if > 1; throws within kBoundaryTolerance of 1.
int invariant_from(double num, double den) {
  const double a = std::abs(num), b = std::abs(den);
  if (std::abs(a - b) <= kBoundaryTolerance * b || (a == 0.0 && b == 0.0))
    throw OnPhaseBoundary("|z| = 1: parameters sit on a phase boundary");
  return a < b ? 1 : 0;
}

}  // namespace

PhaseLabel classify_split(double t1, double t2) {
  const ZValues z = z_values(t1, t2);
  return split_phase_from_windings(invariant_from(z.num0, z.den0), invariant_from(z.num1, z.den1));
}

namespace {

PhaseCell label_point(double t1, double t2) {
  PhaseCell c{t1, t2, std::nullopt};
  try {
    c.label = classify_split(t1, t2);
  } catch (const OnPhaseBoundary&) {
  }
  return c;
}

}  // namespace

std::vector<PhaseCell> phase_points(const std::vector<std::pair<double, double>>& points) {
  std::vector<PhaseCell> cells;
  cells.reserve(points.size());
  for (const auto& [t1, t2] : points) cells.push_back(label_point(t1, t2));
  return cells;
}

std::vector<std::pair<double, double>> phase_corners() {
  constexpr double h = std::numbers::pi / 2.0;
  return {{0.0, h}, {0.0, -h}, {h, 0.0}, {-h, 0.0}};
}

std::vector<PhaseCell> phase_diagram(const PhaseGrid& g) {
  if (g.res1 < 2 || g.res2 < 2) throw DomainError("phase diagram needs resolution >= 2 per axis");
  std::vector<PhaseCell> cells;
  cells.reserve(static_cast<std::size_t>(g.res1) * static_cast<std::size_t>(g.res2));
  for (int i = 0; i < g.res1; ++i) {
    const double t1 = g.t1_min + (g.t1_max - g.t1_min) * i / (g.res1 - 1);
    for (int j = 0; j < g.res2; ++j) {
      const double t2 = g.t2_min + (g.t2_max - g.t2_min) * j / (g.res2 - 1);
      cells.push_back(label_point(t1, t2));
    }
  }
  return cells;
}

}  // namespace topowalk
