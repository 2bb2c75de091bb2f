#include <cmath>
#include <numbers>

#include "topowalk/discrete.hpp"
#include "topowalk/errors.hpp"
#include "topowalk/momentum.hpp"

namespace topowalk {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

Eigen::Matrix2cd ry(double phi) { return rot_y(phi).cast<cplx>(); }

Eigen::Matrix2cd diag(cplx a, cplx b) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// -arg(lambda) folded into (-pi, pi].
double omega_of(cplx lambda) {
  double w = -std::arg(lambda);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace

SplitWcEntries split_wc_entries(double t1, double t2, double k) {
  const double b0 = std::cos(k) * std::cos(t1) * std::cos(t2) + std::sin(t1) * std::sin(t2);
  const cplx b1 = -(kI * std::sin(k) + std::cos(k) * std::sin(t1)) * std::cos(t2) +
                  std::cos(t1) * std::sin(t2);
  return {b0, b1};
}

Eigen::Matrix2cd wc_matrix(const WalkParams& params, double k) {
  Eigen::Matrix2cd m;
  if (const auto* s = std::get_if<SimpleParams>(&params)) {
    const double c = std::cos(s->theta), sn = std::sin(s->theta);
    const double sk = std::sin(k), ck = std::cos(k);
    m << kI * sk * c, -ck - kI * sk * sn, -ck + kI * sk * sn, kI * sk * c;
    return m;
  }
  const auto& p = std::get<SplitParams>(params);
  const auto e = split_wc_entries(p.theta1, p.theta2, k);
  m << e.beta0, e.beta1, -std::conj(e.beta1), e.beta0;
  return m;
}

DispersionPoint dispersion(const WalkParams& params, double k) {
  cplx plus, minus;
  if (const auto* s = std::get_if<SimpleParams>(&params)) {
    const double a = std::cos(s->theta) * std::sin(k);
    const double r = std::sqrt(std::max(0.0, 1.0 - a * a));
    plus = cplx(-r, a);
    minus = cplx(r, a);
  } else {
    const auto& p = std::get<SplitParams>(params);
    const double b0 = split_wc_entries(p.theta1, p.theta2, k).beta0;
    const double r = std::sqrt(std::max(0.0, 1.0 - b0 * b0));
    plus = cplx(b0, -r);
    minus = cplx(b0, r);
  }
  return {k, omega_of(plus), omega_of(minus)};
}

std::vector<DispersionPoint> dispersion_band(const WalkParams& params, int n_k) {
  if (n_k < 1) throw DomainError("n_k must be positive");
  std::vector<DispersionPoint> out;
  out.reserve(static_cast<std::size_t>(n_k));
  for (int j = 0; j < n_k; ++j) out.push_back(dispersion(params, -kPi + 2.0 * kPi * (j + 1) / n_k));
  return out;
}

Eigen::Matrix2cd gc_matrix(const WalkParams& params, double k) {
  const Eigen::Matrix2cd r = ry(-kPi / 4.0);
  const Eigen::Matrix2cd sm = diag(1.0, std::exp(-kI * k));
  Eigen::Matrix2cd f;
  if (const auto* s = std::get_if<SimpleParams>(&params)) {
    f = ry(s->theta / 2.0) * diag(std::exp(-kI * kPi / 4.0), std::exp(kI * kPi / 4.0)) * sm;
  } else {
    const auto& p = std::get<SplitParams>(params);
    f = ry(p.theta1 / 2.0) * diag(1.0, -1.0) * sm * ry(p.theta2 / 2.0);
  }
  return r * f * r.adjoint();
}

SplitGcEntries split_gc_entries(double t1, double t2, double k) {
  const double tp = t1 + t2, tm = t1 - t2;
  const cplx g0 = std::cos(k / 2) * std::cos(tm / 2) + kI * std::sin(k / 2) * std::cos(tp / 2);
  const cplx g1 = std::cos(k / 2) * std::sin(tm / 2) - kI * std::sin(k / 2) * std::cos(tp / 2);
  return {g0, g1};
}

}  // namespace topowalk
