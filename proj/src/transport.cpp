#include "nsc/transport.hpp"

namespace nsc {

std::string msg_type_name(MsgType t) {
  switch (t) {
    case MsgType::Qubits: return "qubits";
    case MsgType::Bases: return "bases";
    case MsgType::HashSeed: return "hash_seed";
    case MsgType::Syndrome: return "syndrome";
    case MsgType::Reveal: return "reveal";
    case MsgType::Permutation: return "permutation";
    case MsgType::IhQuery: return "ih_query";
    case MsgType::IhAnswer: return "ih_answer";
    case MsgType::OtSeeds: return "ot_seeds";
    case MsgType::DerandMask: return "derand_mask";
    case MsgType::OtFlip: return "ot_flip";
    case MsgType::OtMasks: return "ot_masks";
  }
  return "unknown";
}

namespace {
std::string to_hex(const std::vector<uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}
}  // namespace

void Transport::barrier() {
  const std::lock_guard<std::mutex> lock(mu_);
  ++epoch_;
}

int Transport::epoch() const {
  const std::lock_guard<std::mutex> lock(mu_);
  return epoch_;
}

void Transport::arm_drop(long nth) {
  const std::lock_guard<std::mutex> lock(mu_);
  drop_index_ = nth;
}

long Transport::sends() const {
  const std::lock_guard<std::mutex> lock(mu_);
  return send_count_;
}

void Transport::set_logging(bool on) {
  const std::lock_guard<std::mutex> lock(mu_);
  logging_ = on;
}

std::vector<TransportLogEntry> Transport::log() const {
  const std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

void Transport::send(Direction dir, MsgType type, std::vector<uint8_t> payload) {
  const std::lock_guard<std::mutex> lock(mu_);
  const bool drop = send_count_ == drop_index_;
  ++send_count_;
  if (logging_) {
    TransportLogEntry entry;
    entry.dir = dir;
    entry.type = type;
    entry.payload_hex = to_hex(payload);
    entry.barrier_epoch = epoch_;
    entry.dropped = drop;
    log_.push_back(std::move(entry));
  }
  if (drop) return;
  (dir == Direction::AliceToBob ? a2b_ : b2a_).push_back(Frame{type, std::move(payload)});
}

Frame Transport::recv(Direction dir, MsgType expect, size_t expected_payload_bytes) {
  const std::lock_guard<std::mutex> lock(mu_);
  auto& queue = dir == Direction::AliceToBob ? a2b_ : b2a_;
  if (!queue.empty() && queue.front().type == expect) {
    Frame f = std::move(queue.front());
    queue.pop_front();
    return f;
  }
  // Missing or malformed: assume the all-zeros valid message was sent.
  if (!queue.empty()) queue.pop_front();
  if (logging_) {
    TransportLogEntry entry;
    entry.dir = dir;
    entry.type = expect;
    entry.barrier_epoch = epoch_;
    entry.substituted = true;
    log_.push_back(std::move(entry));
  }
  return Frame{expect, std::vector<uint8_t>(expected_payload_bytes, 0)};
}

std::string Transport::transcript_json() const {
  const std::vector<TransportLogEntry> entries = log();
  std::string out = "[";
  bool first = true;
  for (const auto& e : entries) {
    if (!first) out += ",";
    first = false;
    out += "\n  {\"direction\":\"";
    out += e.dir == Direction::AliceToBob ? "alice_to_bob" : "bob_to_alice";
    out += "\",\"type\":\"" + msg_type_name(e.type) + "\",\"payload_hex\":\"" + e.payload_hex +
           "\",\"barrier_flags\":" + std::to_string(e.barrier_epoch);
    if (e.dropped) out += ",\"dropped\":true";
    if (e.substituted) out += ",\"substituted\":true";
    out += "}";
  }
  out += "\n]\n";
  return out;
}

void Transport::put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void Transport::put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
}

uint16_t Transport::get_u16(const std::vector<uint8_t>& in, size_t at) {
  if (at + 2 > in.size()) return 0;
  return static_cast<uint16_t>(in[at] | (in[at + 1] << 8));
}

uint32_t Transport::get_u32(const std::vector<uint8_t>& in, size_t at) {
  if (at + 4 > in.size()) return 0;
  return static_cast<uint32_t>(in[at]) | (static_cast<uint32_t>(in[at + 1]) << 8) |
         (static_cast<uint32_t>(in[at + 2]) << 16) | (static_cast<uint32_t>(in[at + 3]) << 24);
}

void Transport::put_bits(std::vector<uint8_t>& out, const BitString& b) {
  put_u32(out, static_cast<uint32_t>(b.size()));
  const auto packed = b.pack();
  out.insert(out.end(), packed.begin(), packed.end());
}

BitString Transport::get_bits(const std::vector<uint8_t>& in, size_t& at) {
  const uint32_t nbits = get_u32(in, at);
  at += 4;
  const size_t nbytes = (nbits + 7) / 8;
  BitString b = BitString::unpack(in.data() + std::min(at, in.size()),
                                  at < in.size() ? std::min(nbytes, in.size() - at) : 0, nbits);
  at += nbytes;
  return b;
}

}  // namespace nsc
