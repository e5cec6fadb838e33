#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "nsc/bitstring.hpp"

namespace nsc {

// Unsigned big integer, just enough for exact binomial coefficients up to
// C(10^4, 2500) and colexicographic subset (un)ranking.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(uint64_t v);

  bool is_zero() const { return w_.empty(); }
  size_t bit_length() const;  // 0 for zero

  void add(const BigUint& o);
  void sub(const BigUint& o);  // requires *this >= o
  void mul_small(uint64_t f);
  void div_small(uint64_t f);  // requires exact or truncating division
  int cmp(const BigUint& o) const;

  bool operator<(const BigUint& o) const { return cmp(o) < 0; }
  bool operator<=(const BigUint& o) const { return cmp(o) <= 0; }
  bool operator==(const BigUint& o) const { return cmp(o) == 0; }

  static BigUint binomial(uint64_t n, uint64_t k);
  static BigUint pow2(size_t e);

  // Value as a t-bit string, bit 0 most significant; requires bit_length() <= t.
  BitString to_bits(size_t t) const;
  static BigUint from_bits(const BitString& b);

 private:
  void trim();
  std::vector<uint64_t> w_;  // little-endian 64-bit limbs
};

}  // namespace nsc
