#pragma once

#include <cmath>
#include <random>

#include "topowalk/lattice.hpp"

namespace testutil {

inline topowalk::WalkerState random_state(const topowalk::LatticeSpec& lat, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  topowalk::WalkerState s(lat);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    s.psi0[i] = {g(rng), g(rng)};
    s.psi1[i] = {g(rng), g(rng)};
  }
  const double inv = 1.0 / std::sqrt(topowalk::norm_squared(s));
  for (auto& a : s.psi0) a *= inv;
  for (auto& a : s.psi1) a *= inv;
  return s;
}

inline double max_diff(const topowalk::WalkerState& a, const topowalk::WalkerState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.psi0.size(); ++i) {
    m = std::max(m, std::abs(a.psi0[i] - b.psi0[i]));
    m = std::max(m, std::abs(a.psi1[i] - b.psi1[i]));
  }
  return m;
}

}  // namespace testutil
