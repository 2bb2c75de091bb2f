#include "topowalk/banded_operator.hpp"

#include "topowalk/errors.hpp"

namespace topowalk {

BandedOperator::BandedOperator(const LatticeSpec& lattice, int half_width)
    : lattice_(lattice), w_(half_width) {
  lattice_.validate();
  if (half_width < 0 || static_cast<std::size_t>(2 * half_width + 1) > lattice.size())
    throw DomainError("band half-width does not fit the lattice");
  const std::size_t blocks = static_cast<std::size_t>(2 * w_ + 1) * 4;
  coef_.assign(blocks * lattice_.size(), 0.0);
  active_.assign(blocks, 0);
}

void BandedOperator::check(int x, int target, int source, int offset) const {
  if (!lattice_.contains(x)) throw DomainError("row site outside lattice");
  if (target < 0 || target > 1 || source < 0 || source > 1)
    throw DomainError("component index must be 0 or 1");
  if (offset < -w_ || offset > w_) throw DomainError("offset exceeds band half-width");
}

void BandedOperator::set(int x, int target, int source, int offset, double value) {
  check(x, target, source, offset);
  const std::size_t b = block(offset, target, source);
  coef_[b * lattice_.size() + lattice_.index(x)] = value;
  if (value != 0.0) active_[b] = 1;
}

void BandedOperator::add(int x, int target, int source, int offset, double value) {
  set(x, target, source, offset, get(x, target, source, offset) + value);
}

double BandedOperator::get(int x, int target, int source, int offset) const {
  check(x, target, source, offset);
  return coef_[block(offset, target, source) * lattice_.size() + lattice_.index(x)];
}

void BandedOperator::clear_row(int x, int target) {
  for (int d = -w_; d <= w_; ++d)
    for (int s = 0; s < 2; ++s) set(x, target, s, d, 0.0);
}

bool BandedOperator::row_is_zero(int x, int target) const {
  for (int d = -w_; d <= w_; ++d)
    for (int s = 0; s < 2; ++s)
      if (get(x, target, s, d) != 0.0) return false;
  return true;
}

std::vector<BandTerm> BandedOperator::row_terms(int x, int target) const {
  std::vector<BandTerm> terms;
  for (int d = -w_; d <= w_; ++d)
    for (int s = 0; s < 2; ++s)
      if (const double c = get(x, target, s, d); c != 0.0) terms.push_back({s, d, c});
  return terms;
}

simd::BandView BandedOperator::view() const {
  return {lattice_.size(), w_, lattice_.boundary == Boundary::periodic, coef_.data(),
          active_.data()};
}

void BandedOperator::apply_raw(const cplx* in0, const cplx* in1, cplx* out0, cplx* out1,
                               const simd::KernelSet& kernels) const {
  kernels.band_apply(view(), in0, in1, out0, out1);
}

void BandedOperator::apply(const WalkerState& in, WalkerState& out,
                           const simd::KernelSet& kernels) const {
  if (in.psi0.size() != lattice_.size() || in.psi1.size() != lattice_.size())
    throw DomainError("state does not match operator lattice");
  if (&in == &out) throw DomainError("apply needs distinct input and output");
  out.lattice = lattice_;
  out.psi0.resize(lattice_.size());
  out.psi1.resize(lattice_.size());
  apply_raw(in.psi0.data(), in.psi1.data(), out.psi0.data(), out.psi1.data(), kernels);
}

void BandedOperator::apply(const WalkerState& in, WalkerState& out) const {
  apply(in, out, simd::active_kernels());
}

BandedOperator BandedOperator::scaled(double s) const {
  BandedOperator r = *this;
  for (auto& c : r.coef_) c *= s;
  return r;
}

}  // namespace topowalk
