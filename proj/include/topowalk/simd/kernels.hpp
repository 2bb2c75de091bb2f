#pragma once
// Data-parallel inner loops shared by the discrete and continuous walks.
//
// Every kernel has a scalar reference implementation. Wider variants are
// compiled into separate translation units and picked at runtime; they must
// agree with the reference (tests/test_simd_kernels.cpp).

#include <complex>
#include <cstddef>
#include <string_view>

namespace topowalk::simd {

using cplx = std::complex<double>;

// Site-dependent 2x2 real blocks on a banded stencil:
//   out_t[i] = sum_{d=-w..w} sum_{s=0,1} coef(d, t, s)[i] * in_s[i + d]
// Coefficients are laid out block-major: coef[block * n + i] with
// block = (d + w) * 4 + t * 2 + s. Blocks whose `active` flag is zero are
// skipped. Sources outside [0, n) wrap when `periodic`, else contribute 0.
struct BandView {
  std::size_t n = 0;
  int half_width = 0;
  bool periodic = true;
  const double* coef = nullptr;
  const unsigned char* active = nullptr;
};

using BandApplyFn = void (*)(const BandView& band, const cplx* in0, const cplx* in1,
                             cplx* out0, cplx* out1);
// out = y + h * x
using AxpyFn = void (*)(std::size_t n, double h, const cplx* x, const cplx* y, cplx* out);
// y += h/6 * (k1 + 2 k2 + 2 k3 + k4)
using Rk4CombineFn = void (*)(std::size_t n, double h, const cplx* k1, const cplx* k2,
                              const cplx* k3, const cplx* k4, cplx* y);
// sum |a_i|^2
using Norm2Fn = double (*)(std::size_t n, const cplx* a);

struct KernelSet {
  std::string_view name;
  BandApplyFn band_apply;
  AxpyFn axpy;
  Rk4CombineFn rk4_combine;
  Norm2Fn norm2;
};

const KernelSet& scalar_kernels() noexcept;

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelSet* avx2_kernels() noexcept;

// Kernel set used by the library. Chosen once: TOPOWALK_SIMD=scalar|avx2
// forces a variant, otherwise the widest supported one wins.
const KernelSet& active_kernels() noexcept;

}  // namespace topowalk::simd
