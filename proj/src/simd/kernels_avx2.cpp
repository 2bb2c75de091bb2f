// AVX2 variants. Built with -mavx2 (no FMA) and only reached after a runtime
// CPU check. Each __m256d holds two interleaved complex amplitudes.

#include <immintrin.h>

#include "band_site.hpp"

namespace topowalk::simd {
namespace {

inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

// [c(i), c(i), c(i+1), c(i+1)]
inline __m256d load_pair_coef(const double* c) {
  const __m128d two = _mm_loadu_pd(c);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(two), 0x50);
}

void band_apply_avx2(const BandView& band, const cplx* in0, const cplx* in1, cplx* out0,
                     cplx* out1) {
  const std::size_t n = band.n;
  const int w = band.half_width;
  const auto uw = static_cast<std::size_t>(w);
  const cplx* src[2] = {in0, in1};
  cplx* dst[2] = {out0, out1};

  std::size_t i = uw;
  if (n >= 2 * uw + 2) {
    for (; i + 1 < n - uw; i += 2) {
      for (int t = 0; t < 2; ++t) {
        __m256d acc = _mm256_setzero_pd();
        for (int d = -w; d <= w; ++d) {
          for (int s = 0; s < 2; ++s) {
            const std::size_t block = static_cast<std::size_t>((d + w) * 4 + t * 2 + s);
            if (!band.active[block]) continue;
            const __m256d c = load_pair_coef(band.coef + block * n + i);
            const __m256d v = _mm256_loadu_pd(as_doubles(src[s] + (static_cast<std::ptrdiff_t>(i) + d)));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(c, v));
          }
        }
        _mm256_storeu_pd(as_doubles(dst[t] + i), acc);
      }
    }
  } else {
    i = 0;
  }

  // Edge sites, plus the odd site left over after pairing.
  const std::size_t lead = std::min(uw, n);
  for (std::size_t e = 0; e < lead && e < i; ++e) {
    out0[e] = detail::band_site(band, in0, e, 0, in1);
    out1[e] = detail::band_site(band, in0, e, 1, in1);
  }
  for (std::size_t e = (i == 0 ? 0 : i); e < n; ++e) {
    out0[e] = detail::band_site(band, in0, e, 0, in1);
    out1[e] = detail::band_site(band, in0, e, 1, in1);
  }
}

void axpy_avx2(std::size_t n, double h, const cplx* x, const cplx* y, cplx* out) {
  const __m256d hv = _mm256_set1_pd(h);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(as_doubles(x + i));
    const __m256d yv = _mm256_loadu_pd(as_doubles(y + i));
    _mm256_storeu_pd(as_doubles(out + i), _mm256_add_pd(yv, _mm256_mul_pd(hv, xv)));
  }
  for (; i < n; ++i) out[i] = y[i] + h * x[i];
}

void rk4_combine_avx2(std::size_t n, double h, const cplx* k1, const cplx* k2, const cplx* k3,
                      const cplx* k4, cplx* y) {
  const double w = h / 6.0;
  const __m256d wv = _mm256_set1_pd(w);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(as_doubles(k1 + i)),
                              _mm256_mul_pd(two, _mm256_loadu_pd(as_doubles(k2 + i))));
    s = _mm256_add_pd(s, _mm256_mul_pd(two, _mm256_loadu_pd(as_doubles(k3 + i))));
    s = _mm256_add_pd(s, _mm256_loadu_pd(as_doubles(k4 + i)));
    const __m256d yv = _mm256_loadu_pd(as_doubles(y + i));
    _mm256_storeu_pd(as_doubles(y + i), _mm256_add_pd(yv, _mm256_mul_pd(wv, s)));
  }
  for (; i < n; ++i) {
    cplx s = k1[i] + 2.0 * k2[i];
    s = s + 2.0 * k3[i];
    s = s + k4[i];
    y[i] = y[i] + w * s;
  }
}

double norm2_avx2(std::size_t n, const cplx* a) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(as_doubles(a + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) total += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return total;
}

}  // namespace

namespace detail {
const KernelSet& avx2_kernel_set() noexcept {
  static const KernelSet set{"avx2", band_apply_avx2, axpy_avx2, rk4_combine_avx2, norm2_avx2};
  return set;
}
}  // namespace detail

}  // namespace topowalk::simd
