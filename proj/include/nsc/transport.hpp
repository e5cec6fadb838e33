#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nsc/bitstring.hpp"

namespace nsc {

enum class MsgType : uint8_t {
  Qubits = 1,      // BB84 register, 2 bits per qubit (data, basis)
  Bases = 2,       // theta^n
  HashSeed = 3,    // Toeplitz seed
  Syndrome = 4,    // Syn(x^n)
  Reveal = 5,      // x^n at open time
  Permutation = 6, // pi as u32 little-endian entries
  IhQuery = 7,     // u16 round index + query bits
  IhAnswer = 8,    // u16 round index + 1 bit
  OtSeeds = 9,     // two Toeplitz seeds
  DerandMask = 10, // y xor c^ell
  OtFlip = 11,     // c xor d
  OtMasks = 12,    // two masked strings
};

std::string msg_type_name(MsgType t);

enum class Direction { AliceToBob, BobToAlice };

struct Frame {
  MsgType type;
  std::vector<uint8_t> payload;
};

struct TransportLogEntry {
  Direction dir;
  MsgType type;
  std::string payload_hex;
  int barrier_epoch = 0;
  bool dropped = false;      // sender side: message was discarded in flight
  bool substituted = false;  // receiver side: default all-zeros payload used
};

// In-order, at-most-once duplex message channel with an explicit wait
// barrier.  A missing or wrongly typed message is replaced on receive by the
// all-zeros payload of the expected size and the substitution is logged;
// protocol layers map that payload onto their default valid message.
//
// Handoff is done under a lock, so the two party engines may live on
// separate threads.  recv never blocks: a message that has not arrived is
// treated as missing (the delivery window expired), so a threaded harness
// must pace the parties itself; the bundled *_run functions orchestrate both
// engines lockstep in one thread.
class Transport {
 public:
  void send(Direction dir, MsgType type, std::vector<uint8_t> payload);
  Frame recv(Direction dir, MsgType expect, size_t expected_payload_bytes);

  // Marks the wait time between protocol phases; messages log the epoch they
  // were sent in.
  void barrier();
  int epoch() const;

  // Drop the nth send (0-based) for the abort-rule fuzzing.
  void arm_drop(long nth);
  long sends() const;

  // Monte Carlo harnesses disable the log; delivery semantics are unchanged.
  void set_logging(bool on);

  std::vector<TransportLogEntry> log() const;
  // JSON array of {direction, type, payload_hex, barrier_flags}.
  std::string transcript_json() const;

  // Payload helpers (all little-endian).
  static void put_u16(std::vector<uint8_t>& out, uint16_t v);
  static void put_u32(std::vector<uint8_t>& out, uint32_t v);
  static uint16_t get_u16(const std::vector<uint8_t>& in, size_t at);
  static uint32_t get_u32(const std::vector<uint8_t>& in, size_t at);
  static void put_bits(std::vector<uint8_t>& out, const BitString& b);
  static BitString get_bits(const std::vector<uint8_t>& in, size_t& at);
  static size_t bits_wire_size(size_t nbits) { return 4 + (nbits + 7) / 8; }

 private:
  mutable std::mutex mu_;
  std::deque<Frame> a2b_, b2a_;
  std::vector<TransportLogEntry> log_;
  int epoch_ = 0;
  long drop_index_ = -1;
  long send_count_ = 0;
  bool logging_ = true;
};

}  // namespace nsc
