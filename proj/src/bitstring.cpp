#include "nsc/bitstring.hpp"

#include <algorithm>
#include <bit>

#include "nsc/errors.hpp"

namespace nsc {

namespace {
uint64_t tail_mask(size_t n) {
  const size_t r = n & 63;
  return r == 0 ? ~uint64_t{0} : (uint64_t{1} << r) - 1;
}
}  // namespace

BitString BitString::random(size_t n, Rng& rng) {
  BitString b(n);
  for (auto& w : b.words_) w = rng.next();
  if (!b.words_.empty()) b.words_.back() &= tail_mask(n);
  return b;
}

BitString BitString::from_string(const std::string& s) {
  BitString b(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw ArgumentError("BitString::from_string: invalid char");
    b.set(i, s[i] == '1');
  }
  return b;
}

BitString BitString::from_u64(uint64_t value, size_t n) {
  if (n > 64) throw ArgumentError("BitString::from_u64: n > 64");
  BitString b(n);
  for (size_t i = 0; i < n; ++i) b.set(i, (value >> (n - 1 - i)) & 1);
  return b;
}

size_t BitString::popcount() const {
  size_t c = 0;
  for (auto w : words_) c += static_cast<size_t>(std::popcount(w));
  return c;
}

bool BitString::any() const {
  for (auto w : words_)
    if (w) return true;
  return false;
}

BitString BitString::operator^(const BitString& o) const {
  BitString r = *this;
  r ^= o;
  return r;
}

BitString& BitString::operator^=(const BitString& o) {
  if (n_ != o.n_) throw ArgumentError("BitString xor: length mismatch");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

bool BitString::operator==(const BitString& o) const {
  return n_ == o.n_ && words_ == o.words_;
}

bool BitString::operator<(const BitString& o) const {
  const size_t n = std::min(n_, o.n_);
  const size_t full = n / 64;
  for (size_t i = 0; i < full; ++i) {
    if (words_[i] != o.words_[i]) {
      // First differing bit decides; bits within a word are stored LSB-first.
      const int bitpos = std::countr_zero(words_[i] ^ o.words_[i]);
      return ((o.words_[i] >> bitpos) & 1) != 0;
    }
  }
  for (size_t i = full * 64; i < n; ++i) {
    const bool a = get(i), b = o.get(i);
    if (a != b) return b;
  }
  return n_ < o.n_;
}

bool BitString::dot(const BitString& o) const {
  if (n_ != o.n_) throw ArgumentError("BitString dot: length mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
  return (std::popcount(acc) & 1) != 0;
}

uint64_t BitString::word_at(size_t bitpos) const {
  const size_t wi = bitpos >> 6, off = bitpos & 63;
  uint64_t lo = wi < words_.size() ? words_[wi] : 0;
  if (off == 0) return lo;
  uint64_t hi = wi + 1 < words_.size() ? words_[wi + 1] : 0;
  return (lo >> off) | (hi << (64 - off));
}

bool BitString::window_parity(const BitString& a, size_t ai, const BitString& b, size_t bi,
                              size_t len) {
  uint64_t acc = 0;
  size_t done = 0;
  while (done < len) {
    const size_t chunk = std::min<size_t>(64, len - done);
    uint64_t wa = a.word_at(ai + done);
    uint64_t wb = b.word_at(bi + done);
    if (chunk < 64) {
      const uint64_t m = (uint64_t{1} << chunk) - 1;
      wa &= m;
      wb &= m;
    }
    acc ^= wa & wb;
    done += chunk;
  }
  return (std::popcount(acc) & 1) != 0;
}

BitString BitString::slice(size_t from, size_t len) const {
  if (from + len > n_) throw ArgumentError("BitString::slice: out of range");
  BitString r(len);
  for (size_t i = 0; i < len; i += 64) {
    uint64_t w = word_at(from + i);
    if (len - i < 64) w &= (uint64_t{1} << (len - i)) - 1;
    r.words_[i >> 6] = w;
  }
  return r;
}

BitString BitString::gather(const std::vector<uint32_t>& positions) const {
  BitString r(positions.size());
  for (size_t i = 0; i < positions.size(); ++i) r.set(i, get(positions[i]));
  return r;
}

uint64_t BitString::as_u64() const {
  if (n_ > 64) throw ArgumentError("BitString::as_u64: too long");
  uint64_t v = 0;
  for (size_t i = 0; i < n_; ++i) v = (v << 1) | (get(i) ? 1 : 0);
  return v;
}

std::vector<uint8_t> BitString::pack() const {
  std::vector<uint8_t> out((n_ + 7) / 8, 0);
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) out[i >> 3] |= uint8_t(1u << (i & 7));
  return out;
}

BitString BitString::unpack(const uint8_t* bytes, size_t nbytes, size_t nbits) {
  BitString b(nbits);
  for (size_t i = 0; i < nbits; ++i) {
    if ((i >> 3) >= nbytes) break;
    b.set(i, (bytes[i >> 3] >> (i & 7)) & 1);
  }
  return b;
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

}  // namespace nsc
