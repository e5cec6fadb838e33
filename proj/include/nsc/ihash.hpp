#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nsc/bitstring.hpp"
#include "nsc/rng.hpp"

namespace nsc {

// Injective encoding of t-bit strings into subsets of [m] of size m/4 by
// colexicographic unranking, with t = floor(log2 C(m, m/4)) so that
// 2^t <= C(m, m/4) <= 2*2^t.  Subset elements are 1-based.
class SubsetEncoding {
 public:
  explicit SubsetEncoding(size_t m);

  size_t m() const { return m_; }
  size_t s() const { return m_ / 4; }
  size_t t() const { return t_; }

  std::vector<uint32_t> enc(const BitString& w) const;
  // Rank of the subset if it is inside the image, otherwise nullopt
  // ("unencoded": at most half of all subsets).
  std::optional<BitString> enc_inverse(const std::vector<uint32_t>& subset) const;

 private:
  size_t m_, t_;
};

// Round-by-round interactive hashing: t-1 rounds of random linearly
// independent GF(2) queries; afterwards the constraint system has exactly two
// solutions, output in lexicographic order.
class IhAlice {
 public:
  IhAlice(size_t t, Rng& rng);

  bool done() const { return round_ == rounds_; }
  size_t rounds() const { return rounds_; }
  BitString next_query();
  void on_answer(bool bit);

  // Both solutions, lexicographically sorted; valid once done().
  std::pair<BitString, BitString> outputs() const;

 private:
  size_t t_, rounds_, round_ = 0;
  Rng* rng_;
  std::vector<BitString> queries_;
  std::vector<bool> answers_;
};

class IhBob {
 public:
  IhBob(size_t t, BitString input);

  // Answer one query.  A zero or linearly dependent query is replaced by the
  // default valid message: the lowest-index unit vector independent of the
  // prior queries.  Returns <q_i, w> for the effective query.
  bool answer(const BitString& query);
  bool query_was_replaced() const { return replaced_last_; }

  bool done() const { return queries_.size() == rounds_; }
  std::pair<BitString, BitString> outputs() const;
  // Index c with outputs()[c] == input.
  int chosen_index() const;

 private:
  size_t t_, rounds_;
  BitString w_;
  std::vector<BitString> queries_;
  std::vector<bool> answers_;
  bool replaced_last_ = false;
};

// Solution pair of the full-rank-minus-one system {<q_i, w> = b_i}; helper
// shared by both roles and the tests.
std::pair<BitString, BitString> ih_solve(size_t t, const std::vector<BitString>& queries,
                                         const std::vector<bool>& answers);

// True if adding `candidate` keeps the query set linearly independent.
bool gf2_independent(const std::vector<BitString>& rows, const BitString& candidate);

}  // namespace nsc
