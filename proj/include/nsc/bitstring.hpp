#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "nsc/rng.hpp"

namespace nsc {

// Packed bit string.  Bit 0 is the first transmitted / most significant bit:
// comparisons are lexicographic in that order and as_u64() reads the string
// as a big-endian integer.  Wire packing is little-endian within bytes
// (bit i goes to byte i/8, bit position i%8).
class BitString {
 public:
  BitString() = default;
  explicit BitString(size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static BitString random(size_t n, Rng& rng);
  static BitString from_string(const std::string& zeros_and_ones);
  // Low `n` bits of value, bit 0 of the string = most significant of value.
  static BitString from_u64(uint64_t value, size_t n);

  size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    const uint64_t m = uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }
  void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

  void push_back(bool v) {
    if ((n_ & 63) == 0) words_.push_back(0);
    ++n_;
    set(n_ - 1, v);
  }

  size_t popcount() const;
  bool any() const;

  BitString operator^(const BitString& o) const;
  BitString& operator^=(const BitString& o);
  bool operator==(const BitString& o) const;
  bool operator!=(const BitString& o) const { return !(*this == o); }
  // Lexicographic with bit 0 most significant.
  bool operator<(const BitString& o) const;

  // GF(2) inner product (parity of AND); sizes must match.
  bool dot(const BitString& o) const;

  // Parity of AND over windows a[ai..ai+len) and b[bi..bi+len).
  static bool window_parity(const BitString& a, size_t ai, const BitString& b, size_t bi,
                            size_t len);

  BitString slice(size_t from, size_t len) const;
  // Restriction to the given positions, in the given order.
  BitString gather(const std::vector<uint32_t>& positions) const;

  uint64_t as_u64() const;  // size() <= 64

  std::vector<uint8_t> pack() const;
  static BitString unpack(const uint8_t* bytes, size_t nbytes, size_t nbits);

  std::string to_string() const;

 private:
  uint64_t word_at(size_t bitpos) const;  // 64 bits starting at bitpos, zero padded

  size_t n_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace nsc
