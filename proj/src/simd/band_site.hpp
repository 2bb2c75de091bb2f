#pragma once
// Per-site band evaluation shared by every kernel variant. The wide variants
// use it for the edge sites where the stencil wraps or leaves the lattice, so
// the summation order matches the scalar reference exactly.

#include "topowalk/simd/kernels.hpp"

namespace topowalk::simd::detail {

inline cplx band_site(const BandView& band, const cplx* in, std::size_t i, int target,
                      const cplx* in1) {
  const auto n = static_cast<std::ptrdiff_t>(band.n);
  const int w = band.half_width;
  cplx acc{0.0, 0.0};
  for (int d = -w; d <= w; ++d) {
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + d;
    if (j < 0 || j >= n) {
      if (!band.periodic) continue;
      j = ((j % n) + n) % n;
    }
    for (int s = 0; s < 2; ++s) {
      const std::size_t block = static_cast<std::size_t>((d + w) * 4 + target * 2 + s);
      if (!band.active[block]) continue;
      const cplx* src = s == 0 ? in : in1;
      acc += band.coef[block * band.n + i] * src[j];
    }
  }
  return acc;
}

}  // namespace topowalk::simd::detail
