#include "doctest.h"

#include <cmath>
#include <vector>

#include "nsc/errors.hpp"
#include "nsc/hashing.hpp"

using namespace nsc;

namespace {

// All-zero-but-first seed is the identity matrix when ell = n.
ToeplitzSeed identity_seed(size_t n) {
  BitString bits(2 * n - 1);
  bits.set(0, true);
  return ToeplitzSeed::from_bits(std::move(bits), n, n);
}

}  // namespace

TEST_CASE("ext basics") {
  Rng rng(10);
  const ToeplitzSeed seed = ToeplitzSeed::random(16, 5, rng);
  CHECK(ext(BitString(16), seed) == BitString(5));  // zero in, zero out

  const BitString x = BitString::random(12, rng);
  CHECK(ext(x, identity_seed(12)) == x);

  CHECK_THROWS_AS(ext(BitString(8), seed), ArgumentError);
  CHECK_THROWS_AS(ToeplitzSeed::from_bits(BitString(7), 4, 3), ArgumentError);
}

TEST_CASE("ext is GF(2)-linear") {
  Rng rng(11);
  for (int it = 0; it < 10000; ++it) {
    const size_t n = 2 + rng.below(40);
    const size_t ell = 1 + rng.below(n);
    const ToeplitzSeed seed = ToeplitzSeed::random(n, ell, rng);
    const BitString a = BitString::random(n, rng);
    const BitString b = BitString::random(n, rng);
    CHECK(ext(a ^ b, seed) == (ext(a, seed) ^ ext(b, seed)));
  }
}

TEST_CASE("exact 2-universality by full seed enumeration") {
  // By linearity a collision for x != x' means T(x ^ x') = 0, so scanning
  // nonzero difference vectors covers all pairs.
  for (auto [n, ell] : std::vector<std::pair<size_t, size_t>>{{5, 2}, {6, 3}, {8, 4}}) {
    const size_t seed_bits = n + ell - 1;
    double worst = 0;
    for (uint64_t z = 1; z < (uint64_t{1} << n); ++z) {
      const BitString zb = BitString::from_u64(z, n);
      size_t collisions = 0;
      for (uint64_t sv = 0; sv < (uint64_t{1} << seed_bits); ++sv) {
        const ToeplitzSeed seed =
            ToeplitzSeed::from_bits(BitString::from_u64(sv, seed_bits), n, ell);
        if (!ext(zb, seed).any()) ++collisions;
      }
      worst = std::max(worst,
                       static_cast<double>(collisions) / std::exp2(double(seed_bits)));
    }
    CHECK(worst <= std::exp2(-double(ell)) + 1e-12);
  }
}

TEST_CASE("leftover hash: exhaustive statistical distance for flat sources") {
  // Flat source on all of {0,1}^8 (min-entropy 8), ell = 2, classical side
  // information trivial: the extracted pair (key, seed) must be within
  // 2^{-(8-2)/2 - 1} = 2^{-4} of uniform.
  const size_t n = 8, ell = 2;
  const size_t seed_bits = n + ell - 1;
  const double keys = std::exp2(double(ell));
  double distance = 0;
  for (uint64_t sv = 0; sv < (uint64_t{1} << seed_bits); ++sv) {
    const ToeplitzSeed seed =
        ToeplitzSeed::from_bits(BitString::from_u64(sv, seed_bits), n, ell);
    std::vector<double> hist(static_cast<size_t>(keys), 0.0);
    for (uint64_t xv = 0; xv < (uint64_t{1} << n); ++xv)
      hist[ext(BitString::from_u64(xv, n), seed).as_u64()] += 1.0 / std::exp2(double(n));
    for (double h : hist) distance += 0.5 * std::abs(h - 1.0 / keys) / std::exp2(double(seed_bits));
  }
  CHECK(distance <= std::exp2(-4.0));
}

TEST_CASE("leftover hash bound holds for random flat sources on <= 2^8 points") {
  Rng rng(12);
  const size_t n = 8;
  for (int it = 0; it < 20; ++it) {
    const size_t h = 2 + rng.below(7);  // min-entropy of the flat source
    const size_t ell = 1 + rng.below(std::min<size_t>(h - 1, 3));
    // random support of size 2^h
    std::vector<uint64_t> support;
    for (uint64_t v = 0; v < 256; ++v) support.push_back(v);
    rng.shuffle(support);
    support.resize(size_t{1} << h);

    const size_t seed_bits = n + ell - 1;
    const double keys = std::exp2(double(ell));
    double distance = 0;
    for (uint64_t sv = 0; sv < (uint64_t{1} << seed_bits); ++sv) {
      const ToeplitzSeed seed =
          ToeplitzSeed::from_bits(BitString::from_u64(sv, seed_bits), n, ell);
      std::vector<double> hist(static_cast<size_t>(keys), 0.0);
      for (uint64_t xv : support)
        hist[ext(BitString::from_u64(xv, n), seed).as_u64()] += 1.0 / std::exp2(double(h));
      for (double hh : hist)
        distance += 0.5 * std::abs(hh - 1.0 / keys) / std::exp2(double(seed_bits));
    }
    CHECK(distance <= std::exp2(-0.5 * (double(h) - double(ell)) - 1.0) + 1e-12);
  }
}

TEST_CASE("extract_key determinism and shape") {
  const BitString x = BitString::from_string("1011001110100101");
  Rng r1(99), r2(99);
  const auto [k1, s1] = extract_key(x, 6, r1);
  const auto [k2, s2] = extract_key(x, 6, r2);
  CHECK(k1 == k2);
  CHECK(s1.bits == s2.bits);
  CHECK(k1.size() == 6);
  CHECK(ext(x, s1) == k1);
  CHECK_THROWS_AS(extract_key(x, 0, r1), ArgumentError);
  CHECK_THROWS_AS(extract_key(x, 17, r1), ArgumentError);
}
