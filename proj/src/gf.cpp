#include "nsc/gf.hpp"

#include "nsc/errors.hpp"

namespace nsc {

uint32_t GfField::primitive_modulus(size_t m) {
  // x^m + ... + 1, primitive over GF(2).
  static constexpr uint32_t table[17] = {
      0,      0,      0x7,    0xB,    0x13,   0x25,   0x43,   0x89,  0x11D,
      0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};
  if (m < 2 || m > 16) throw ArgumentError("GfField: m must be in [2, 16]");
  return table[m];
}

GfField::GfField(size_t m) : m_(m), modulus_(primitive_modulus(m)) {
  const uint32_t size = uint32_t{1} << m_;
  exp_.assign(2 * (size - 1), 0);
  log_.assign(size, -1);
  uint32_t x = 1;
  for (uint32_t i = 0; i < size - 1; ++i) {
    exp_[i] = x;
    log_[x] = static_cast<int32_t>(i);
    x <<= 1;
    if (x & size) x ^= modulus_;
  }
  for (uint32_t i = 0; i < size - 1; ++i) exp_[size - 1 + i] = exp_[i];
}

uint32_t GfField::mul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[static_cast<size_t>(log_[a]) + static_cast<size_t>(log_[b])];
}

uint32_t GfField::div(uint32_t a, uint32_t b) const {
  if (b == 0) throw ArgumentError("GfField: division by zero");
  if (a == 0) return 0;
  return exp_[static_cast<size_t>(log_[a]) + order() - static_cast<size_t>(log_[b])];
}

uint32_t GfField::inv(uint32_t a) const { return div(1, a); }

uint32_t GfField::alpha_pow(int64_t e) const {
  const int64_t ord = order();
  int64_t r = e % ord;
  if (r < 0) r += ord;
  return exp_[static_cast<size_t>(r)];
}

}  // namespace nsc
