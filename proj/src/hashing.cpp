#include "nsc/hashing.hpp"

#include "nsc/errors.hpp"

namespace nsc {

ToeplitzSeed ToeplitzSeed::random(size_t n, size_t ell, Rng& rng) {
  return from_bits(BitString::random(n + ell - 1, rng), n, ell);
}

ToeplitzSeed ToeplitzSeed::from_bits(BitString bits, size_t n, size_t ell) {
  if (ell < 1 || ell > n) throw ArgumentError("ToeplitzSeed: need 1 <= ell <= n");
  if (bits.size() != n + ell - 1) throw ArgumentError("ToeplitzSeed: seed length != n + ell - 1");
  return ToeplitzSeed{std::move(bits), n, ell};
}

BitString ext(const BitString& x, const ToeplitzSeed& seed) {
  if (x.size() != seed.n) throw ArgumentError("ext: input length != seed.n");
  const size_t n = seed.n, ell = seed.ell;
  // Reversed copy of x turns the first-column terms into a contiguous window,
  // so every output bit costs two word-packed dot products.
  BitString xr(n);
  for (size_t j = 0; j < n; ++j) xr.set(j, x.get(n - 1 - j));
  BitString y(ell);
  for (size_t i = 0; i < ell; ++i) {
    bool acc = BitString::window_parity(seed.bits, 0, x, i, n - i);
    if (i > 0) acc ^= BitString::window_parity(seed.bits, n, xr, n - i, i);
    y.set(i, acc);
  }
  return y;
}

std::pair<BitString, ToeplitzSeed> extract_key(const BitString& x, size_t ell, Rng& rng) {
  if (ell < 1 || ell > x.size()) throw ArgumentError("extract_key: ell out of range");
  ToeplitzSeed seed = ToeplitzSeed::random(x.size(), ell, rng);
  BitString key = ext(x, seed);
  return {std::move(key), std::move(seed)};
}

}  // namespace nsc
