#include "nsc/ihash.hpp"

#include <algorithm>
#include <map>

#include "nsc/bigint.hpp"
#include "nsc/errors.hpp"

namespace nsc {

SubsetEncoding::SubsetEncoding(size_t m) : m_(m) {
  if (m < 4 || m % 4 != 0) throw ArgumentError("SubsetEncoding: m must be a multiple of 4");
  const BigUint total = BigUint::binomial(m, m / 4);
  t_ = total.bit_length() - 1;  // 2^t <= C(m, m/4) < 2^{t+1}
}

std::vector<uint32_t> SubsetEncoding::enc(const BitString& w) const {
  if (w.size() != t_) throw ArgumentError("SubsetEncoding::enc: wrong input length");
  BigUint rank = BigUint::from_bits(w);
  const size_t s = m_ / 4;
  std::vector<uint32_t> subset(s);
  // Colex unranking: for i = s..1 pick the largest a with C(a-1, i) <= rank,
  // then subtract.  The binomial is carried across steps with small-factor
  // updates, so the whole unranking is O(m) big-integer operations.
  size_t a = m_;
  BigUint binom = BigUint::binomial(a - 1, s);
  for (size_t i = s; i >= 1; --i) {
    while (binom.cmp(rank) > 0) {
      // C(a-2, i) = C(a-1, i) (a-1-i) / (a-1)
      binom.mul_small(a - 1 - i);
      binom.div_small(a - 1);
      --a;
    }
    subset[i - 1] = static_cast<uint32_t>(a);
    rank.sub(binom);
    if (i > 1) {
      // C(a-2, i-1) = C(a-1, i) i / (a-1), exactly divisible
      binom.mul_small(i);
      binom.div_small(a - 1);
      --a;
    }
  }
  return subset;
}

std::optional<BitString> SubsetEncoding::enc_inverse(const std::vector<uint32_t>& subset) const {
  const size_t s = m_ / 4;
  if (subset.size() != s) throw ArgumentError("enc_inverse: wrong subset size");
  std::vector<uint32_t> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i <= s; ++i) {
    if (sorted[i - 1] < i || sorted[i - 1] > m_) throw ArgumentError("enc_inverse: bad element");
    if (i > 1 && sorted[i - 1] == sorted[i - 2]) throw ArgumentError("enc_inverse: duplicate");
  }
  // rank = sum_i C(a_i - 1, i), accumulated with incremental binomials.
  BigUint rank;
  BigUint binom(1);  // C(x, i) with x tracked below
  size_t x = 0, lower = 0;
  for (size_t i = 1; i <= s; ++i) {
    // raise lower index: C(x, i) = C(x, i-1) (x - i + 1) / i
    ++lower;
    if (x + 1 >= lower) {
      binom.mul_small(x - lower + 1);
      binom.div_small(lower);
    }
    // raise upper index to a_i - 1: C(x+1, i) = C(x, i) (x+1) / (x+1-i)
    const size_t target = sorted[i - 1] - 1;
    while (x < target) {
      ++x;
      if (x == lower) {
        binom = BigUint(1);  // C(i, i)
      } else if (x > lower) {
        binom.mul_small(x);
        binom.div_small(x - lower);
      }
    }
    rank.add(binom);
  }
  if (rank.bit_length() > t_) return std::nullopt;  // outside the encoded half
  return rank.to_bits(t_);
}

namespace {

// Echelon rows keyed by leading bit index; ascending-order reduction is then
// a single pass.
using Echelon = std::map<size_t, BitString>;

size_t lead_of(const BitString& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v.get(i)) return i;
  return v.size();
}

BitString reduce(const Echelon& rows, BitString v) {
  for (const auto& [lead, row] : rows)
    if (lead < v.size() && v.get(lead)) v ^= row;
  return v;
}

bool echelon_insert(Echelon& rows, BitString v) {
  v = reduce(rows, v);
  if (!v.any()) return false;
  rows.emplace(lead_of(v), std::move(v));
  return true;
}

Echelon build_echelon(const std::vector<BitString>& queries) {
  Echelon rows;
  for (const auto& q : queries) (void)echelon_insert(rows, q);
  return rows;
}

}  // namespace

bool gf2_independent(const std::vector<BitString>& rows, const BitString& candidate) {
  Echelon ech = build_echelon(rows);
  return reduce(ech, candidate).any();
}

std::pair<BitString, BitString> ih_solve(size_t t, const std::vector<BitString>& queries,
                                         const std::vector<bool>& answers) {
  if (queries.size() != t - 1 || answers.size() != t - 1)
    throw ArgumentError("ih_solve: need exactly t-1 constraints");

  // Gauss-Jordan on the augmented system.
  std::vector<BitString> rows = queries;
  std::vector<bool> rhs = answers;
  std::vector<int> pivot_of_col(t, -1);
  size_t rank = 0;
  for (size_t c = 0; c < t && rank < rows.size(); ++c) {
    size_t p = rank;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    std::swap(rhs[rank], rhs[p]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && rows[i].get(c)) {
        rows[i] ^= rows[rank];
        rhs[i] = rhs[i] != rhs[rank];
      }
    }
    pivot_of_col[c] = static_cast<int>(rank);
    ++rank;
  }
  if (rank != queries.size()) throw ArgumentError("ih_solve: dependent constraint system");

  size_t free_col = t;
  for (size_t c = 0; c < t; ++c)
    if (pivot_of_col[c] == -1) {
      free_col = c;
      break;
    }

  BitString base(t), null_vec(t);
  null_vec.set(free_col, true);
  for (size_t c = 0; c < t; ++c) {
    const int r = pivot_of_col[c];
    if (r == -1) continue;
    base.set(c, rhs[static_cast<size_t>(r)]);
    if (rows[static_cast<size_t>(r)].get(free_col)) null_vec.set(c, true);
  }
  BitString other = base ^ null_vec;
  if (other < base) std::swap(base, other);
  return {base, other};
}

IhAlice::IhAlice(size_t t, Rng& rng) : t_(t), rounds_(t - 1), rng_(&rng) {
  if (t < 1) throw ArgumentError("IhAlice: t must be >= 1");
}

BitString IhAlice::next_query() {
  if (done() || queries_.size() != answers_.size())
    throw ArgumentError("IhAlice: next_query out of turn");
  BitString q;
  do {
    q = BitString::random(t_, *rng_);
  } while (!q.any() || !gf2_independent(queries_, q));
  queries_.push_back(q);
  return q;
}

void IhAlice::on_answer(bool bit) {
  if (done() || queries_.size() != answers_.size() + 1)
    throw ArgumentError("IhAlice: on_answer out of turn");
  answers_.push_back(bit);
  ++round_;
}

std::pair<BitString, BitString> IhAlice::outputs() const {
  if (!done()) throw ArgumentError("IhAlice: protocol not finished");
  return ih_solve(t_, queries_, answers_);
}

IhBob::IhBob(size_t t, BitString input) : t_(t), rounds_(t - 1), w_(std::move(input)) {
  if (t < 1) throw ArgumentError("IhBob: t must be >= 1");
  if (w_.size() != t) throw ArgumentError("IhBob: input length != t");
}

bool IhBob::answer(const BitString& query) {
  if (done()) throw ArgumentError("IhBob: protocol finished");
  BitString effective = query;
  replaced_last_ = false;
  if (query.size() != t_ || !query.any() || !gf2_independent(queries_, query)) {
    // Default valid message: lowest-index unit vector independent of priors.
    for (size_t i = 0; i < t_; ++i) {
      BitString unit(t_);
      unit.set(i, true);
      if (gf2_independent(queries_, unit)) {
        effective = unit;
        break;
      }
    }
    replaced_last_ = true;
  }
  queries_.push_back(effective);
  const bool b = effective.dot(w_);
  answers_.push_back(b);
  return b;
}

std::pair<BitString, BitString> IhBob::outputs() const {
  if (!done()) throw ArgumentError("IhBob: protocol not finished");
  return ih_solve(t_, queries_, answers_);
}

int IhBob::chosen_index() const {
  const auto [w0, w1] = outputs();
  if (w_ == w0) return 0;
  if (w_ == w1) return 1;
  throw ArgumentError("IhBob: input not among outputs");
}

}  // namespace nsc
