#include "nsc/protocols.hpp"

#include <algorithm>
#include <numeric>

#include "nsc/errors.hpp"
#include "nsc/ihash.hpp"

namespace nsc {

namespace {

// Receive a bit-string payload; anything of the wrong length (including the
// all-zeros substitute injected by the transport) becomes the protocol
// default, the zero string of the expected length.
BitString recv_bits(Transport& t, Direction dir, MsgType type, size_t expect_bits) {
  Frame f = t.recv(dir, type, Transport::bits_wire_size(expect_bits));
  size_t at = 0;
  BitString b = Transport::get_bits(f.payload, at);
  if (b.size() != expect_bits) return BitString(expect_bits);
  return b;
}

void send_bits(Transport& t, Direction dir, MsgType type, const BitString& b) {
  std::vector<uint8_t> payload;
  Transport::put_bits(payload, b);
  t.send(dir, type, std::move(payload));
}

}  // namespace

WseOutcome wse_run(size_t n, Transport& transport, Rng& alice_rng, Rng& bob_rng,
                   WseReceiverHook* bob_hook) {
  if (n < 1) throw ArgumentError("wse_run: n must be >= 1");

  // Step 1: Alice encodes x^n in random bases and sends the qubits.
  const BitString x = BitString::random(n, alice_rng);
  const BitString theta = BitString::random(n, alice_rng);
  const Bb84Register reg = prepare_bb84(x, theta);
  {
    std::vector<uint8_t> payload;
    BitString interleaved(2 * n);  // (data, basis) pairs, 2 bits per qubit
    for (size_t i = 0; i < n; ++i) {
      interleaved.set(2 * i, reg.data.get(i));
      interleaved.set(2 * i + 1, reg.basis.get(i));
    }
    Transport::put_bits(payload, interleaved);
    transport.send(Direction::AliceToBob, MsgType::Qubits, std::move(payload));
  }

  // Step 2: Bob measures on reception (or the hook takes the register).
  const BitString qubit_bits = recv_bits(transport, Direction::AliceToBob, MsgType::Qubits, 2 * n);
  BitString rx_data(n), rx_basis(n);
  for (size_t i = 0; i < n; ++i) {
    rx_data.set(i, qubit_bits.get(2 * i));
    rx_basis.set(i, qubit_bits.get(2 * i + 1));
  }
  const Bb84Register received{rx_data, rx_basis};

  BitString theta_tilde, x_tilde;
  if (bob_hook) {
    bob_hook->on_qubits(received, bob_rng);
  } else {
    theta_tilde = BitString::random(n, bob_rng);
    x_tilde = measure_bb84(received, theta_tilde, bob_rng);
  }

  // Both parties wait; this is where adversarial storage degrades.
  transport.barrier();
  if (bob_hook) bob_hook->on_barrier(bob_rng);

  // Step 3: Alice reveals the bases.
  send_bits(transport, Direction::AliceToBob, MsgType::Bases, theta);
  const BitString theta_msg = recv_bits(transport, Direction::AliceToBob, MsgType::Bases, n);

  WseOutcome out;
  out.x = x;
  if (bob_hook) {
    out.bob_guess = bob_hook->on_bases(theta_msg, bob_rng);
    return out;
  }

  // Step 4: Bob keeps the positions measured in the matching basis.
  for (size_t i = 0; i < n; ++i)
    if (theta_msg.get(i) == theta_tilde.get(i)) out.index_set.push_back(static_cast<uint32_t>(i));
  out.x_substring = x_tilde.gather(out.index_set);
  return out;
}

CommitRecord commit_run(const WseOutcome& wse, std::shared_ptr<const BinaryCode> code,
                        size_t ell, Transport& transport, Rng& alice_rng) {
  const size_t n = wse.x.size();
  if (code->n() != n) throw ArgumentError("commit_run: code length != n");
  if (ell < 1 || ell > n) throw ArgumentError("commit_run: ell out of range");

  CommitRecord rec;
  rec.n = n;
  rec.ell = ell;
  rec.alice_x = wse.x;

  const ToeplitzSeed alice_seed = ToeplitzSeed::random(n, ell, alice_rng);
  send_bits(transport, Direction::AliceToBob, MsgType::HashSeed, alice_seed.bits);
  send_bits(transport, Direction::AliceToBob, MsgType::Syndrome, code->syndrome(wse.x));
  rec.commitment = ext(wse.x, alice_seed);

  // Bob's stored view (equals what Alice sent unless a message was faulted).
  const BitString seed_msg =
      recv_bits(transport, Direction::AliceToBob, MsgType::HashSeed, n + ell - 1);
  rec.seed = ToeplitzSeed::from_bits(seed_msg, n, ell);
  rec.syndrome = recv_bits(transport, Direction::AliceToBob, MsgType::Syndrome, n - code->k());
  rec.index_set = wse.index_set;
  rec.substring = wse.x_substring;
  rec.code = std::move(code);
  return rec;
}

CommitRecord commit_run(const WseOutcome& wse, const BinaryCode& code, size_t ell,
                        Transport& transport, Rng& alice_rng) {
  return commit_run(wse, std::make_shared<BinaryCode>(code), ell, transport, alice_rng);
}

OpenResult open_run(const CommitRecord& record, const BitString& claimed_x,
                    Transport& transport) {
  if (claimed_x.size() != record.n) throw ArgumentError("open_run: length mismatch");
  send_bits(transport, Direction::AliceToBob, MsgType::Reveal, claimed_x);
  const BitString revealed =
      recv_bits(transport, Direction::AliceToBob, MsgType::Reveal, record.n);

  OpenResult out;
  const bool substring_ok = revealed.gather(record.index_set) == record.substring;
  const bool syndrome_ok = record.code->syndrome(revealed) == record.syndrome;
  out.accept = substring_ok && syndrome_ok;
  out.c_tilde = BitString(record.ell);
  if (out.accept) out.c_tilde = ext(revealed, record.seed);
  return out;
}

BitString commit_derandomize(const CommitRecord& record, const BitString& y,
                             Transport& transport) {
  if (y.size() != record.ell) throw ArgumentError("commit_derandomize: length mismatch");
  send_bits(transport, Direction::AliceToBob, MsgType::DerandMask, y ^ record.commitment);
  // Bob stores the mask he received and applies it after a successful open.
  return recv_bits(transport, Direction::AliceToBob, MsgType::DerandMask, record.ell);
}

std::optional<BitString> commit_derandomize_receive(const OpenResult& open,
                                                    const BitString& mask) {
  if (!open.accept) return std::nullopt;
  if (mask.size() != open.c_tilde.size())
    throw ArgumentError("commit_derandomize_receive: length mismatch");
  return open.c_tilde ^ mask;
}

FrotOutcome frot_run(const FrotConfig& config, Transport& transport, Rng& alice_rng,
                     Rng& bob_rng) {
  const size_t n = config.n, beta = config.beta;
  if (beta == 0 || n % beta != 0) throw ArgumentError("frot_run: n must be divisible by beta");
  const size_t m = n / beta;
  if (m % 4 != 0) throw ArgumentError("frot_run: m = n/beta must be divisible by 4");
  const size_t quarter = n / 4;  // = (m/4) * beta

  FrotOutcome out;
  if (config.toy_mode) {
    out.ell = config.ell_override ? config.ell_override : std::max<size_t>(1, n / 8);
    out.covered_by_bound = false;
  } else {
    out.params = ot_params(config.storage, n, config.delta, config.omega, beta);
    out.ell = out.params->ell;
    out.covered_by_bound = true;
  }
  if (out.ell < 1 || out.ell > quarter)
    throw FeasibilityError("1 <= ell <= n/4",
                           "extractor output length " + std::to_string(out.ell));

  // Step 1: weak string erasure, then Bob forces |I| = n/4.
  const WseOutcome wse = wse_run(n, transport, alice_rng, bob_rng);

  std::vector<uint32_t> known = wse.index_set;
  BitString known_values = wse.x_substring;
  if (known.size() >= quarter) {
    std::vector<size_t> order(known.size());
    std::iota(order.begin(), order.end(), size_t{0});
    bob_rng.shuffle(order);
    order.resize(quarter);
    std::sort(order.begin(), order.end());
    std::vector<uint32_t> kept;
    BitString vals(quarter);
    for (size_t i = 0; i < quarter; ++i) {
      kept.push_back(known[order[i]]);
      vals.set(i, known_values.get(order[i]));
    }
    known = std::move(kept);
    known_values = std::move(vals);
  } else {
    out.padded = true;
    std::vector<uint32_t> rest;
    size_t next = 0;
    for (uint32_t i = 0; i < n; ++i) {
      if (next < known.size() && known[next] == i) {
        ++next;
        continue;
      }
      rest.push_back(i);
    }
    bob_rng.shuffle(rest);
    std::vector<std::pair<uint32_t, bool>> merged;
    merged.reserve(quarter);
    for (size_t i = 0; i < known.size(); ++i) merged.emplace_back(known[i], known_values.get(i));
    for (size_t i = 0; merged.size() < quarter; ++i) merged.emplace_back(rest[i], false);
    std::sort(merged.begin(), merged.end());
    known.clear();
    known_values = BitString(quarter);
    for (size_t i = 0; i < quarter; ++i) {
      known.push_back(merged[i].first);
      known_values.set(i, merged[i].second);
    }
  }

  // Step 2: Bob picks the row subset (resampling until the encoding covers
  // it), builds a uniform permutation mapping known cells into those rows,
  // and announces it.
  const SubsetEncoding encoding(m);
  std::vector<uint32_t> rows_j;
  for (;;) {
    std::vector<uint32_t> all(m);
    std::iota(all.begin(), all.end(), uint32_t{1});  // 1-based rows
    bob_rng.shuffle(all);
    all.resize(m / 4);
    std::sort(all.begin(), all.end());
    auto w_opt = encoding.enc_inverse(all);
    if (w_opt) {
      rows_j = std::move(all);
      out.w = std::move(*w_opt);
      break;
    }
  }

  std::vector<char> row_in_j(m + 1, 0);
  for (uint32_t j : rows_j) row_in_j[j] = 1;
  std::vector<uint32_t> j_cells, other_cells;
  j_cells.reserve(quarter);
  other_cells.reserve(n - quarter);
  for (size_t cell = 0; cell < n; ++cell) {
    const size_t row = cell / beta + 1;
    (row_in_j[row] ? j_cells : other_cells).push_back(static_cast<uint32_t>(cell));
  }
  bob_rng.shuffle(j_cells);
  bob_rng.shuffle(other_cells);

  out.perm.assign(n, 0);
  std::vector<char> is_known(n, 0);
  for (uint32_t p : known) is_known[p] = 1;
  {
    size_t ji = 0, oi = 0;
    for (uint32_t src = 0; src < n; ++src)
      out.perm[src] = is_known[src] ? j_cells[ji++] : other_cells[oi++];
  }
  {
    std::vector<uint8_t> payload;
    Transport::put_u32(payload, static_cast<uint32_t>(n));
    for (uint32_t v : out.perm) Transport::put_u32(payload, v);
    transport.send(Direction::BobToAlice, MsgType::Permutation, std::move(payload));
  }

  // Alice decodes the permutation; a malformed payload degrades to identity.
  std::vector<uint32_t> perm_alice(n);
  {
    Frame f = transport.recv(Direction::BobToAlice, MsgType::Permutation, 4 + 4 * n);
    bool valid = Transport::get_u32(f.payload, 0) == n && f.payload.size() == 4 + 4 * n;
    std::vector<char> seen(n, 0);
    if (valid) {
      for (size_t i = 0; i < n; ++i) {
        const uint32_t v = Transport::get_u32(f.payload, 4 + 4 * i);
        if (v >= n || seen[v]) {
          valid = false;
          break;
        }
        seen[v] = 1;
        perm_alice[i] = v;
      }
    }
    if (!valid) std::iota(perm_alice.begin(), perm_alice.end(), uint32_t{0});
  }

  // Step 3: interactive hashing on w^t.
  const size_t t = encoding.t();
  IhAlice ih_alice(t, alice_rng);
  IhBob ih_bob(t, out.w);
  for (size_t round = 0; round < t - 1; ++round) {
    const BitString q = ih_alice.next_query();
    std::vector<uint8_t> payload;
    Transport::put_u16(payload, static_cast<uint16_t>(round));
    Transport::put_bits(payload, q);
    transport.send(Direction::AliceToBob, MsgType::IhQuery, std::move(payload));

    Frame qf = transport.recv(Direction::AliceToBob, MsgType::IhQuery,
                              2 + Transport::bits_wire_size(t));
    size_t at = 2;
    const bool b = ih_bob.answer(Transport::get_bits(qf.payload, at));

    std::vector<uint8_t> reply;
    Transport::put_u16(reply, static_cast<uint16_t>(round));
    BitString bit(1);
    bit.set(0, b);
    Transport::put_bits(reply, bit);
    transport.send(Direction::BobToAlice, MsgType::IhAnswer, std::move(reply));

    Frame af = transport.recv(Direction::BobToAlice, MsgType::IhAnswer,
                              2 + Transport::bits_wire_size(1));
    at = 2;
    const BitString ab = Transport::get_bits(af.payload, at);
    ih_alice.on_answer(ab.size() == 1 && ab.get(0));
  }
  {
    const auto [w0, w1] = ih_alice.outputs();
    out.w0 = w0;
    out.w1 = w1;
  }
  const auto bob_pair = ih_bob.outputs();

  // Step 4: Alice draws the two extractor seeds.
  out.r0 = ToeplitzSeed::random(quarter, out.ell, alice_rng);
  out.r1 = ToeplitzSeed::random(quarter, out.ell, alice_rng);
  {
    std::vector<uint8_t> payload;
    Transport::put_bits(payload, out.r0.bits);
    Transport::put_bits(payload, out.r1.bits);
    transport.send(Direction::AliceToBob, MsgType::OtSeeds, std::move(payload));
  }
  Frame sf = transport.recv(Direction::AliceToBob, MsgType::OtSeeds,
                            2 * Transport::bits_wire_size(quarter + out.ell - 1));
  size_t at = 0;
  BitString sb0 = Transport::get_bits(sf.payload, at);
  BitString sb1 = Transport::get_bits(sf.payload, at);
  if (sb0.size() != quarter + out.ell - 1) sb0 = BitString(quarter + out.ell - 1);
  if (sb1.size() != quarter + out.ell - 1) sb1 = BitString(quarter + out.ell - 1);
  const ToeplitzSeed bob_r0 = ToeplitzSeed::from_bits(sb0, quarter, out.ell);
  const ToeplitzSeed bob_r1 = ToeplitzSeed::from_bits(sb1, quarter, out.ell);

  // Step 5: Alice extracts both strings from the permuted matrix rows.
  std::vector<uint32_t> inverse(n);
  for (uint32_t src = 0; src < n; ++src) inverse[perm_alice[src]] = src;

  const auto row_bits = [&](const std::vector<uint32_t>& rows,
                            const BitString& source) -> BitString {
    BitString gathered(rows.size() * beta);
    size_t w_at = 0;
    for (uint32_t row : rows)
      for (size_t col = 0; col < beta; ++col)
        gathered.set(w_at++, source.get(inverse[(row - 1) * beta + col]));
    return gathered;
  };

  out.s0 = ext(row_bits(encoding.enc(out.w0), wse.x), bob_r0);
  out.s1 = ext(row_bits(encoding.enc(out.w1), wse.x), bob_r1);

  // Step 6: Bob reconstructs his rows from the values he knows.
  BitString bob_view(n);  // values at cells Bob can fill, zero elsewhere
  for (size_t i = 0; i < known.size(); ++i)
    bob_view.set(out.perm[known[i]], known_values.get(i));
  out.c = (out.w == bob_pair.first) ? 0 : 1;
  BitString mine(quarter);
  size_t mi = 0;
  for (uint32_t row : encoding.enc(out.w))
    for (size_t col = 0; col < beta; ++col) mine.set(mi++, bob_view.get((row - 1) * beta + col));
  out.y = ext(mine, out.c == 0 ? bob_r0 : bob_r1);
  return out;
}

BitString ot_derandomize(const FrotOutcome& frot, const BitString& y0, const BitString& y1,
                         int d, Transport& transport) {
  if (y0.size() != frot.ell || y1.size() != frot.ell)
    throw ArgumentError("ot_derandomize: input length != ell");
  if (d != 0 && d != 1) throw ArgumentError("ot_derandomize: d must be a bit");

  // Bob announces whether his random choice matches his real one.
  BitString flip(1);
  flip.set(0, (frot.c ^ d) != 0);
  send_bits(transport, Direction::BobToAlice, MsgType::OtFlip, flip);
  const BitString flip_msg = recv_bits(transport, Direction::BobToAlice, MsgType::OtFlip, 1);
  const int mbit = flip_msg.get(0) ? 1 : 0;

  // Alice masks: (s0 xor y_m, s1 xor y_{1-m}).
  std::vector<uint8_t> payload;
  Transport::put_bits(payload, frot.s0 ^ (mbit ? y1 : y0));
  Transport::put_bits(payload, frot.s1 ^ (mbit ? y0 : y1));
  transport.send(Direction::AliceToBob, MsgType::OtMasks, std::move(payload));

  Frame f = transport.recv(Direction::AliceToBob, MsgType::OtMasks,
                           2 * Transport::bits_wire_size(frot.ell));
  size_t at = 0;
  BitString m0 = Transport::get_bits(f.payload, at);
  BitString m1 = Transport::get_bits(f.payload, at);
  if (m0.size() != frot.ell) m0 = BitString(frot.ell);
  if (m1.size() != frot.ell) m1 = BitString(frot.ell);

  // Bob unmasks with his known string.
  return (frot.c == 0 ? m0 : m1) ^ frot.y;
}

}  // namespace nsc
