#include "nsc/bigint.hpp"

#include <bit>

#include "nsc/errors.hpp"

namespace nsc {

BigUint::BigUint(uint64_t v) {
  if (v) w_.push_back(v);
}

void BigUint::trim() {
  while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

size_t BigUint::bit_length() const {
  if (w_.empty()) return 0;
  return 64 * (w_.size() - 1) + (64 - static_cast<size_t>(std::countl_zero(w_.back())));
}

void BigUint::add(const BigUint& o) {
  if (o.w_.size() > w_.size()) w_.resize(o.w_.size(), 0);
  unsigned __int128 carry = 0;
  for (size_t i = 0; i < w_.size(); ++i) {
    carry += w_[i];
    if (i < o.w_.size()) carry += o.w_[i];
    w_[i] = static_cast<uint64_t>(carry);
    carry >>= 64;
  }
  if (carry) w_.push_back(static_cast<uint64_t>(carry));
}

void BigUint::sub(const BigUint& o) {
  if (cmp(o) < 0) throw ArgumentError("BigUint::sub: would underflow");
  unsigned __int128 borrow = 0;
  for (size_t i = 0; i < w_.size(); ++i) {
    unsigned __int128 sub = borrow;
    if (i < o.w_.size()) sub += o.w_[i];
    if (w_[i] >= sub) {
      w_[i] -= static_cast<uint64_t>(sub);
      borrow = 0;
    } else {
      const unsigned __int128 one = 1;
      w_[i] = static_cast<uint64_t>((one << 64) + w_[i] - sub);
      borrow = 1;
    }
  }
  trim();
}

void BigUint::mul_small(uint64_t f) {
  if (f == 0) {
    w_.clear();
    return;
  }
  unsigned __int128 carry = 0;
  for (auto& limb : w_) {
    carry += static_cast<unsigned __int128>(limb) * f;
    limb = static_cast<uint64_t>(carry);
    carry >>= 64;
  }
  while (carry) {
    w_.push_back(static_cast<uint64_t>(carry));
    carry >>= 64;
  }
}

void BigUint::div_small(uint64_t f) {
  if (f == 0) throw ArgumentError("BigUint::div_small: division by zero");
  unsigned __int128 rem = 0;
  for (size_t i = w_.size(); i-- > 0;) {
    rem = (rem << 64) | w_[i];
    w_[i] = static_cast<uint64_t>(rem / f);
    rem %= f;
  }
  trim();
}

int BigUint::cmp(const BigUint& o) const {
  if (w_.size() != o.w_.size()) return w_.size() < o.w_.size() ? -1 : 1;
  for (size_t i = w_.size(); i-- > 0;)
    if (w_[i] != o.w_[i]) return w_[i] < o.w_[i] ? -1 : 1;
  return 0;
}

BigUint BigUint::binomial(uint64_t n, uint64_t k) {
  if (k > n) return BigUint{};
  if (k > n - k) k = n - k;
  BigUint r(1);
  for (uint64_t i = 1; i <= k; ++i) {
    r.mul_small(n - k + i);
    r.div_small(i);  // exact at every step
  }
  return r;
}

BigUint BigUint::pow2(size_t e) {
  BigUint r;
  r.w_.assign(e / 64 + 1, 0);
  r.w_[e / 64] = uint64_t{1} << (e % 64);
  return r;
}

BitString BigUint::to_bits(size_t t) const {
  if (bit_length() > t) throw ArgumentError("BigUint::to_bits: value too large");
  BitString b(t);
  for (size_t i = 0; i < t; ++i) {
    const size_t bitpos = t - 1 - i;  // bit i of the string is weight 2^(t-1-i)
    const size_t limb = bitpos / 64, off = bitpos % 64;
    if (limb < w_.size() && ((w_[limb] >> off) & 1)) b.set(i, true);
  }
  return b;
}

BigUint BigUint::from_bits(const BitString& b) {
  BigUint r;
  r.w_.assign(b.size() / 64 + 1, 0);
  for (size_t i = 0; i < b.size(); ++i) {
    if (!b.get(i)) continue;
    const size_t bitpos = b.size() - 1 - i;
    r.w_[bitpos / 64] |= uint64_t{1} << (bitpos % 64);
  }
  r.trim();
  return r;
}

}  // namespace nsc
