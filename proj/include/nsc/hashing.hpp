#pragma once

#include <cstddef>
#include <utility>

#include "nsc/bitstring.hpp"
#include "nsc/rng.hpp"

namespace nsc {

// Seed of an ell x n Toeplitz matrix over GF(2), n + ell - 1 bits laid out
// first-row-then-first-column:
//   T[i][j] = bits[j - i]           for j >= i   (first row, n bits)
//   T[i][j] = bits[n - 1 + (i - j)] for i > j    (rest of first column)
// The all-but-first-zero seed is the identity when ell = n.  This layout is
// normative for wire messages (packed little-endian within bytes).
struct ToeplitzSeed {
  BitString bits;
  size_t n = 0;
  size_t ell = 0;

  static ToeplitzSeed random(size_t n, size_t ell, Rng& rng);
  static ToeplitzSeed from_bits(BitString bits, size_t n, size_t ell);
};

// Toeplitz matrix-vector product over GF(2); output length seed.ell.
BitString ext(const BitString& x, const ToeplitzSeed& seed);

// Privacy amplification step: draw a uniform seed, hash, hand both back.
std::pair<BitString, ToeplitzSeed> extract_key(const BitString& x, size_t ell, Rng& rng);

}  // namespace nsc
