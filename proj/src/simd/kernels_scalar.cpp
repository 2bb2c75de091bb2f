#include "band_site.hpp"

namespace topowalk::simd {
namespace {

void band_apply_scalar(const BandView& band, const cplx* in0, const cplx* in1, cplx* out0,
                       cplx* out1) {
  for (std::size_t i = 0; i < band.n; ++i) {
    out0[i] = detail::band_site(band, in0, i, 0, in1);
    out1[i] = detail::band_site(band, in0, i, 1, in1);
  }
}

void axpy_scalar(std::size_t n, double h, const cplx* x, const cplx* y, cplx* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + h * x[i];
}

void rk4_combine_scalar(std::size_t n, double h, const cplx* k1, const cplx* k2,
                        const cplx* k3, const cplx* k4, cplx* y) {
  const double w = h / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = k1[i] + 2.0 * k2[i];
    s = s + 2.0 * k3[i];
    s = s + k4[i];
    y[i] = y[i] + w * s;
  }
}

double norm2_scalar(std::size_t n, const cplx* a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return acc;
}

}  // namespace

const KernelSet& scalar_kernels() noexcept {
  static const KernelSet set{"scalar", band_apply_scalar, axpy_scalar, rk4_combine_scalar,
                             norm2_scalar};
  return set;
}

}  // namespace topowalk::simd
