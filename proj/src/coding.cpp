#include "nsc/coding.hpp"

#include <algorithm>
#include <bit>

#include "nsc/errors.hpp"

namespace nsc {

namespace {

constexpr size_t kToyMaxN = 24;

// Lexicographic order on error patterns, position 0 most significant.
bool mask_lex_less(uint32_t a, uint32_t b) {
  if (a == b) return false;
  const int pos = std::countr_zero(a ^ b);
  return ((a >> pos) & 1) == 0;
}

uint32_t mask_of(const BitString& x) {
  uint32_t v = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (x.get(i)) v |= uint32_t{1} << i;
  return v;
}

BitString mask_to_bits(uint32_t v, size_t n) {
  BitString b(n);
  for (size_t i = 0; i < n; ++i)
    if ((v >> i) & 1) b.set(i, true);
  return b;
}

// Solve H * x = s over GF(2) for one solution; H given as row masks.
uint32_t solve_particular(std::vector<uint32_t> rows, std::vector<bool> rhs, size_t n) {
  size_t r = 0;
  std::vector<int> pivot_col(rows.size(), -1);
  for (size_t c = 0; c < n && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && !((rows[p] >> c) & 1)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    std::swap(rhs[r], rhs[p]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i != r && ((rows[i] >> c) & 1)) {
        rows[i] ^= rows[r];
        rhs[i] = rhs[i] != rhs[r];
      }
    }
    pivot_col[r] = static_cast<int>(c);
    ++r;
  }
  for (size_t i = r; i < rows.size(); ++i)
    if (rhs[i]) throw ArgumentError("inconsistent syndrome system");
  uint32_t x = 0;
  for (size_t i = 0; i < r; ++i)
    if (rhs[i]) x |= uint32_t{1} << pivot_col[i];
  return x;
}

}  // namespace

BinaryCode BinaryCode::rs(size_t m, size_t d) {
  return rs_shortened(m, d, (size_t{1} << m) - 1);
}

BinaryCode BinaryCode::rs_shortened(size_t m, size_t d, size_t symbols) {
  if (m < 3 || m > 16) throw ArgumentError("rs: m must be in [3, 16]");
  const size_t full = (size_t{1} << m) - 1;
  if (d < 2 || d > full) throw ArgumentError("rs: d must be in [2, 2^m - 1]");
  if (symbols < 1 || symbols > full) throw ArgumentError("rs: bad symbol count");
  if ((d - 1) * m >= symbols * m) throw ArgumentError("rs: no message symbols left");

  BinaryCode code;
  code.field_ = std::make_shared<GfField>(m);
  code.rs_d_ = d;
  code.rs_symbols_ = symbols;
  code.n_ = symbols * m;
  code.k_ = (symbols - (d - 1)) * m;
  code.dmin_ = d;
  if (code.n_ <= kToyMaxN) {
    // Materialize binary parity checks so the exhaustive oracles apply.
    const GfField& f = *code.field_;
    for (size_t z = 1; z < d; ++z) {
      for (size_t r = 0; r < m; ++r) {
        BitString row(code.n_);
        for (size_t j = 0; j < symbols; ++j) {
          const uint32_t loc = f.alpha_pow(static_cast<int64_t>(z * j));
          for (size_t c = 0; c < m; ++c) {
            const uint32_t prod = f.mul(loc, uint32_t{1} << c);
            if ((prod >> r) & 1) row.set(j * m + c, true);
          }
        }
        code.parity_rows_.push_back(std::move(row));
      }
    }
    code.enumerate_toy_codewords();
  }
  return code;
}

BinaryCode BinaryCode::rs_for_length(size_t m, size_t d, size_t n_bits) {
  const size_t symbols = (n_bits + m - 1) / m;
  BinaryCode code = rs_shortened(m, d, symbols);
  if (code.bit_pad_ == symbols * m - n_bits) return code;  // already exact
  code.bit_pad_ = symbols * m - n_bits;
  if (n_bits <= (d - 1) * m) throw ArgumentError("rs_for_length: nothing left after pad");
  code.n_ = n_bits;
  code.k_ = n_bits - (d - 1) * m;
  if (n_bits <= kToyMaxN) {
    // Restricting the parity rows to the unfrozen suffix describes exactly
    // the words whose zero-padded extension is a full codeword.
    std::vector<BitString> rows;
    for (const auto& full : code.parity_rows_)
      rows.push_back(full.slice(code.bit_pad_, n_bits));
    code.parity_rows_ = std::move(rows);
    code.toy_codewords_.clear();
    code.enumerate_toy_codewords();
  }
  return code;
}

BinaryCode BinaryCode::hamming7() {
  std::vector<BitString> rows = {
      BitString::from_string("1010101"),
      BitString::from_string("0110011"),
      BitString::from_string("0001111"),
  };
  return from_parity_checks(7, std::move(rows), 3);
}

BinaryCode BinaryCode::from_parity_checks(size_t n, std::vector<BitString> rows, size_t dmin) {
  if (n > kToyMaxN) throw ArgumentError("from_parity_checks: only toy sizes (n <= 24)");
  for (const auto& r : rows)
    if (r.size() != n) throw ArgumentError("from_parity_checks: row length mismatch");
  BinaryCode code;
  code.n_ = n;
  code.k_ = n - rows.size();
  code.dmin_ = dmin;
  code.parity_rows_ = std::move(rows);
  code.enumerate_toy_codewords();
  return code;
}

BinaryCode BinaryCode::toy(const std::string& name) {
  if (name == "hamming7") return hamming7();
  if (name == "rs3_2") return rs_shortened(3, 2, 7);
  if (name == "rs3_3") return rs_shortened(3, 3, 7);
  if (name == "rs4_5s") return rs_shortened(4, 5, 6);
  throw ArgumentError("unknown toy code: " + name);
}

std::vector<std::string> BinaryCode::toy_names() {
  return {"hamming7", "rs3_2", "rs3_3", "rs4_5s"};
}

std::string BinaryCode::describe() const {
  return "(" + std::to_string(n_) + "," + std::to_string(k_) + "," + std::to_string(dmin_) +
         ")";
}

void BinaryCode::enumerate_toy_codewords() {
  // Null-space basis of the parity rows, then all 2^k combinations.
  std::vector<uint32_t> rows;
  rows.reserve(parity_rows_.size());
  for (const auto& r : parity_rows_) rows.push_back(mask_of(r));

  size_t rank = 0;
  std::vector<int> pivot_of_col(n_, -1);
  for (size_t c = 0; c < n_ && rank < rows.size(); ++c) {
    size_t p = rank;
    while (p < rows.size() && !((rows[p] >> c) & 1)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != rank && ((rows[i] >> c) & 1)) rows[i] ^= rows[rank];
    pivot_of_col[c] = static_cast<int>(rank);
    ++rank;
  }
  k_ = n_ - rank;

  std::vector<uint32_t> basis;
  for (size_t c = 0; c < n_; ++c) {
    if (pivot_of_col[c] != -1) continue;
    uint32_t v = uint32_t{1} << c;
    for (size_t pc = 0; pc < n_; ++pc) {
      const int pr = pivot_of_col[pc];
      if (pr != -1 && ((rows[static_cast<size_t>(pr)] >> c) & 1)) v |= uint32_t{1} << pc;
    }
    basis.push_back(v);
  }

  toy_codewords_.assign(size_t{1} << k_, 0);
  for (size_t idx = 1; idx < toy_codewords_.size(); ++idx) {
    const int low = std::countr_zero(idx);
    toy_codewords_[idx] = toy_codewords_[idx ^ (size_t{1} << low)] ^ basis[static_cast<size_t>(low)];
  }
}

std::vector<uint32_t> BinaryCode::to_symbols(const BitString& x) const {
  // x covers full bit positions [bit_pad_, symbols*m); the frozen prefix is 0.
  const size_t m = field_->m();
  std::vector<uint32_t> sym(rs_symbols_, 0);
  for (size_t b = bit_pad_; b < rs_symbols_ * m; ++b)
    if (x.get(b - bit_pad_)) sym[b / m] |= uint32_t{1} << (b % m);
  return sym;
}

BitString BinaryCode::rs_syndrome(const BitString& x) const {
  const GfField& f = *field_;
  const size_t m = f.m();
  const auto sym = to_symbols(x);
  BitString out((rs_d_ - 1) * m);
  for (size_t z = 1; z < rs_d_; ++z) {
    // S_z = sum_j sym_j alpha^{z j}, Horner from the top locator down.
    const uint32_t step = f.alpha_pow(static_cast<int64_t>(z));
    uint32_t acc = 0;
    for (size_t j = rs_symbols_; j-- > 0;) acc = f.mul(acc, step) ^ sym[j];
    for (size_t r = 0; r < m; ++r)
      if ((acc >> r) & 1) out.set((z - 1) * m + r, true);
  }
  return out;
}

BitString BinaryCode::syndrome(const BitString& x) const {
  if (x.size() != n_) throw ArgumentError("syndrome: length mismatch");
  if (field_) return rs_syndrome(x);
  BitString out(parity_rows_.size());
  for (size_t i = 0; i < parity_rows_.size(); ++i) out.set(i, parity_rows_[i].dot(x));
  return out;
}

const std::vector<uint32_t>& BinaryCode::toy_codewords() const {
  if (toy_codewords_.empty()) throw ArgumentError("toy_codewords: not a toy code");
  return toy_codewords_;
}

BitString BinaryCode::nearest_in_coset(const BitString& xhat, const BitString& w) const {
  if (xhat.size() != n_) throw ArgumentError("nearest_in_coset: length mismatch");
  if (w.size() != n_ - k_) throw ArgumentError("nearest_in_coset: syndrome length mismatch");

  if (is_toy()) {
    // Exact coset scan: xbar = x0 + c over all codewords c.
    std::vector<uint32_t> rows;
    std::vector<bool> rhs;
    for (size_t i = 0; i < parity_rows_.size(); ++i) {
      rows.push_back(mask_of(parity_rows_[i]));
      rhs.push_back(w.get(i));
    }
    const uint32_t x0 = solve_particular(rows, rhs, n_);
    const uint32_t xh = mask_of(xhat);
    uint32_t best_err = 0;
    size_t best_wt = n_ + 1;
    bool first = true;
    for (uint32_t c : toy_codewords_) {
      const uint32_t err = xh ^ x0 ^ c;
      const size_t wt = static_cast<size_t>(std::popcount(err));
      if (first || wt < best_wt || (wt == best_wt && mask_lex_less(err, best_err))) {
        best_err = err;
        best_wt = wt;
        first = false;
      }
    }
    return mask_to_bits(xh ^ best_err, n_);
  }

  // Bounded-distance Reed-Solomon decoding of the syndrome difference.
  const GfField& f = *field_;
  const size_t m = f.m();
  const size_t nsyn = rs_d_ - 1;

  const BitString have = rs_syndrome(xhat);
  std::vector<uint32_t> syn(nsyn, 0);
  bool all_zero = true;
  for (size_t z = 0; z < nsyn; ++z) {
    for (size_t r = 0; r < m; ++r)
      if (have.get(z * m + r) != w.get(z * m + r)) syn[z] |= uint32_t{1} << r;
    if (syn[z]) all_zero = false;
  }
  if (all_zero) return xhat;

  // Berlekamp-Massey: error locator sigma(x) with sigma(0) = 1.
  std::vector<uint32_t> sigma{1}, prev{1};
  size_t L = 0, shift = 1;
  uint32_t prev_disc = 1;
  for (size_t i = 0; i < nsyn; ++i) {
    uint32_t disc = 0;
    for (size_t j = 0; j <= L && j < sigma.size(); ++j)
      if (sigma[j]) disc ^= f.mul(sigma[j], j <= i ? syn[i - j] : 0);
    if (disc == 0) {
      ++shift;
      continue;
    }
    std::vector<uint32_t> next = sigma;
    const uint32_t scale = f.div(disc, prev_disc);
    if (next.size() < prev.size() + shift) next.resize(prev.size() + shift, 0);
    for (size_t j = 0; j < prev.size(); ++j)
      if (prev[j]) next[j + shift] ^= f.mul(scale, prev[j]);
    if (2 * L <= i) {
      prev = sigma;
      prev_disc = disc;
      L = i + 1 - L;
      shift = 1;
    } else {
      ++shift;
    }
    sigma = std::move(next);
  }
  while (!sigma.empty() && sigma.back() == 0) sigma.pop_back();
  const size_t degree = sigma.size() - 1;
  if (degree > (rs_d_ - 1) / 2)
    throw DecodingRadiusError("syndrome difference outside bounded-distance radius");

  // Chien search over the evaluation set.
  std::vector<size_t> error_pos;
  for (size_t j = 0; j < rs_symbols_ && error_pos.size() < degree; ++j) {
    uint32_t v = 0;
    const uint32_t xinv = f.alpha_pow(-static_cast<int64_t>(j));
    uint32_t p = 1;
    for (size_t c = 0; c < sigma.size(); ++c) {
      if (sigma[c]) v ^= f.mul(sigma[c], p);
      p = f.mul(p, xinv);
    }
    if (v == 0) error_pos.push_back(j);
  }
  if (error_pos.size() != degree)
    throw DecodingRadiusError("error locator has roots outside the evaluation set");

  // Forney error values with omega(x) = S(x) sigma(x) mod x^{d-1}.
  std::vector<uint32_t> omega(nsyn, 0);
  for (size_t a = 0; a < sigma.size(); ++a)
    for (size_t b = 0; a + b < nsyn && b < nsyn; ++b)
      if (sigma[a] && syn[b]) omega[a + b] ^= f.mul(sigma[a], syn[b]);

  BitString xbar = xhat;
  for (size_t pos : error_pos) {
    const uint32_t xinv = f.alpha_pow(-static_cast<int64_t>(pos));
    uint32_t om = 0, p = 1;
    for (size_t c = 0; c < omega.size(); ++c) {
      if (omega[c]) om ^= f.mul(omega[c], p);
      p = f.mul(p, xinv);
    }
    // sigma'(x): odd-degree terms only in characteristic 2.
    uint32_t dsig = 0;
    p = 1;
    for (size_t c = 1; c < sigma.size(); c += 2) {
      if (sigma[c]) dsig ^= f.mul(sigma[c], p);
      p = f.mul(p, f.mul(xinv, xinv));
    }
    if (dsig == 0) throw DecodingRadiusError("Forney derivative vanished");
    const uint32_t magnitude = f.div(om, dsig);
    for (size_t r = 0; r < m; ++r) {
      if (!((magnitude >> r) & 1)) continue;
      const size_t full_bit = pos * m + r;
      if (full_bit < bit_pad_)
        throw DecodingRadiusError("correction lands on a frozen prefix bit");
      xbar.flip(full_bit - bit_pad_);
    }
  }
  if (rs_syndrome(xbar) != w)
    throw DecodingRadiusError("decoded word does not match the target syndrome");
  return xbar;
}

BitString BinaryCode::random_codeword(Rng& rng) const {
  if (is_toy()) {
    const uint32_t c = toy_codewords_[static_cast<size_t>(rng.below(toy_codewords_.size()))];
    return mask_to_bits(c, n_);
  }
  // Random word, then cancel its syndrome with a correction supported on the
  // last d-1 symbol positions (a Vandermonde system over the field; the tail
  // symbols are never bit-frozen).
  const GfField& f = *field_;
  const size_t m = f.m();
  const size_t nsyn = rs_d_ - 1;
  BitString v = BitString::random(n_, rng);
  const BitString syn_bits = rs_syndrome(v);

  std::vector<std::vector<uint32_t>> a(nsyn, std::vector<uint32_t>(nsyn + 1, 0));
  for (size_t z = 1; z <= nsyn; ++z) {
    for (size_t j = 0; j < nsyn; ++j)
      a[z - 1][j] = f.alpha_pow(static_cast<int64_t>(z * (rs_symbols_ - nsyn + j)));
    uint32_t s = 0;
    for (size_t r = 0; r < m; ++r)
      if (syn_bits.get((z - 1) * m + r)) s |= uint32_t{1} << r;
    a[z - 1][nsyn] = s;
  }
  // Gaussian elimination over GF(2^m).
  for (size_t col = 0; col < nsyn; ++col) {
    size_t piv = col;
    while (piv < nsyn && a[piv][col] == 0) ++piv;
    std::swap(a[col], a[piv]);
    const uint32_t inv = f.inv(a[col][col]);
    for (size_t j = col; j <= nsyn; ++j) a[col][j] = f.mul(a[col][j], inv);
    for (size_t rr = 0; rr < nsyn; ++rr) {
      if (rr == col || a[rr][col] == 0) continue;
      const uint32_t factor = a[rr][col];
      for (size_t j = col; j <= nsyn; ++j) a[rr][j] ^= f.mul(factor, a[col][j]);
    }
  }
  for (size_t j = 0; j < nsyn; ++j) {
    const uint32_t p = a[j][nsyn];
    for (size_t r = 0; r < m; ++r)
      if ((p >> r) & 1) v.flip((rs_symbols_ - nsyn + j) * m + r - bit_pad_);
  }
  return v;
}

std::string BinaryCode::descriptor_json() const {
  std::string s = "{";
  if (field_) {
    s += "\"family\":\"reed_solomon\",\"m\":" + std::to_string(field_->m()) +
         ",\"d\":" + std::to_string(rs_d_) + ",\"symbols\":" + std::to_string(rs_symbols_) +
         ",\"modulus\":" + std::to_string(field_->modulus()) + ",";
  } else {
    s += "\"family\":\"parity\",";
  }
  s += "\"n\":" + std::to_string(n_) + ",\"k\":" + std::to_string(k_) + "}";
  return s;
}

}  // namespace nsc
