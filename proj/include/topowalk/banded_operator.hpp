#pragma once
// Real banded operator on a two-component lattice field. Row (x, t) holds
// coefficients for source components s at offsets d in [-w, w].

#include <array>
#include <vector>

#include "topowalk/lattice.hpp"
#include "topowalk/simd/kernels.hpp"

namespace topowalk {

struct BandTerm {
  int source = 0;
  int offset = 0;
  double coef = 0.0;
};

class BandedOperator {
 public:
  BandedOperator() = default;
  BandedOperator(const LatticeSpec& lattice, int half_width);

  const LatticeSpec& lattice() const noexcept { return lattice_; }
  int half_width() const noexcept { return w_; }

  void set(int x, int target, int source, int offset, double value);
  void add(int x, int target, int source, int offset, double value);
  double get(int x, int target, int source, int offset) const;
  void clear_row(int x, int target);

  bool row_is_zero(int x, int target) const;
  std::vector<BandTerm> row_terms(int x, int target) const;

  void apply(const WalkerState& in, WalkerState& out) const;
  void apply(const WalkerState& in, WalkerState& out, const simd::KernelSet& kernels) const;
  void apply_raw(const cplx* in0, const cplx* in1, cplx* out0, cplx* out1,
                 const simd::KernelSet& kernels) const;

  // Every coefficient multiplied by s.
  BandedOperator scaled(double s) const;

  simd::BandView view() const;

 private:
  std::size_t block(int offset, int target, int source) const noexcept {
    return static_cast<std::size_t>((offset + w_) * 4 + target * 2 + source);
  }
  void check(int x, int target, int source, int offset) const;

  LatticeSpec lattice_{};
  int w_ = 0;
  std::vector<double> coef_;
  std::vector<unsigned char> active_;
};

}  // namespace topowalk
