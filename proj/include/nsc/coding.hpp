#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nsc/bitstring.hpp"
#include "nsc/gf.hpp"
#include "nsc/rng.hpp"

namespace nsc {

// Binary linear code with a syndrome map.  Two backings:
//  - Reed-Solomon over GF(2^m) on an evaluation set of `symbols` points,
//    expanded to bits in the polynomial basis (n = symbols*m,
//    n-k = (d-1)*m, distance >= d); nearest-coset queries use
//    bounded-distance decoding (symbol errors < d/2).
//  - explicit binary parity checks (toy codes, n <= 24), where codewords are
//    enumerated and coset queries are exact.
class BinaryCode {
 public:
  // Full-length Reed-Solomon expansion: (2^m - 1, 2^m - d, d) over GF(2^m)
  // mapped to binary ((2^m - 1) m, (2^m - d) m, d).
  static BinaryCode rs(size_t m, size_t d);
  // Same construction on the first `symbols` locators (1 <= symbols <= 2^m - 1).
  static BinaryCode rs_shortened(size_t m, size_t d, size_t symbols);
  // Bit-exact length: freeze the first symbols*m - n_bits bits to zero.
  static BinaryCode rs_for_length(size_t m, size_t d, size_t n_bits);
  static BinaryCode hamming7();
  static BinaryCode from_parity_checks(size_t n, std::vector<BitString> rows, size_t dmin);

  // Named toy instances with exhaustive oracles: "hamming7", "rs3_2" (21,18,2),
  // "rs3_3" (21,15,3), "rs4_5s" (24,8,5).
  static BinaryCode toy(const std::string& name);
  static std::vector<std::string> toy_names();

  size_t n() const { return n_; }
  size_t k() const { return k_; }
  size_t dmin() const { return dmin_; }
  std::string describe() const;

  BitString syndrome(const BitString& x) const;

  // Nearest string (Hamming) with the given syndrome; ties broken by the
  // lexicographically smallest error pattern.  Exact for toy codes; the
  // Reed-Solomon path throws DecodingRadiusError beyond (d-1)/2 symbol errors.
  BitString nearest_in_coset(const BitString& xhat, const BitString& w) const;

  bool is_toy() const { return !toy_codewords_.empty(); }
  // All codewords as bit masks (bit i = position i), toy codes only.
  const std::vector<uint32_t>& toy_codewords() const;

  // Uniformly random codeword (either backing).
  BitString random_codeword(Rng& rng) const;

  // JSON descriptor {"family","m","d","symbols","modulus","n","k"}.
  std::string descriptor_json() const;

 private:
  BinaryCode() = default;
  void enumerate_toy_codewords();
  BitString rs_syndrome(const BitString& x) const;
  std::vector<uint32_t> to_symbols(const BitString& x) const;

  size_t n_ = 0, k_ = 0, dmin_ = 0;

  // Reed-Solomon backing
  std::shared_ptr<GfField> field_;
  size_t rs_d_ = 0, rs_symbols_ = 0;
  size_t bit_pad_ = 0;  // zero-frozen prefix bits of the bit-shortened code

  // binary parity backing (also derived for RS toys)
  std::vector<BitString> parity_rows_;
  std::vector<uint32_t> toy_codewords_;
};

}  // namespace nsc
