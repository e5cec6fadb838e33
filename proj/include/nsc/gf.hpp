#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nsc {

// GF(2^m) arithmetic via log/antilog tables, 2 <= m <= 16, with a fixed table
// of primitive moduli.  Elements are bit patterns in the polynomial basis.
class GfField {
 public:
  explicit GfField(size_t m);

  size_t m() const { return m_; }
  uint32_t modulus() const { return modulus_; }
  uint32_t order() const { return (uint32_t{1} << m_) - 1; }  // size of the unit group

  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t div(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t alpha_pow(int64_t e) const;  // generator power, exponent mod order

  static uint32_t primitive_modulus(size_t m);

 private:
  size_t m_;
  uint32_t modulus_;
  std::vector<uint32_t> exp_;  // alpha^i, doubled for overflow-free addition
  std::vector<int32_t> log_;
};

}  // namespace nsc
