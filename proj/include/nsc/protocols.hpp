#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "nsc/bitstring.hpp"
#include "nsc/coding.hpp"
#include "nsc/hashing.hpp"
#include "nsc/qsim.hpp"
#include "nsc/rng.hpp"
#include "nsc/secparams.hpp"
#include "nsc/transport.hpp"

namespace nsc {

// Dishonest receiver hook for the weak string erasure run.  The honest
// receiver is replaced entirely: the hook sees the qubits at send time, the
// wait barrier (where storage noise strikes), and the revealed bases, and
// finally emits its guess for the whole data string.
class WseReceiverHook {
 public:
  virtual ~WseReceiverHook() = default;
  virtual void on_qubits(const Bb84Register& reg, Rng& rng) = 0;
  virtual void on_barrier(Rng& rng) = 0;
  virtual BitString on_bases(const BitString& theta, Rng& rng) = 0;
};

struct WseOutcome {
  BitString x;                       // Alice's string x^n
  std::vector<uint32_t> index_set;   // Bob's I (sorted, 0-based)
  BitString x_substring;             // Bob's x_I
  BitString bob_guess;               // hook runs only: the dishonest guess
};

// Protocol: Alice sends BB84 encodings, both parties wait, Alice reveals the
// bases, Bob keeps the matched positions.
WseOutcome wse_run(size_t n, Transport& transport, Rng& alice_rng, Rng& bob_rng,
                   WseReceiverHook* bob_hook = nullptr);

struct CommitRecord {
  size_t n = 0;
  size_t ell = 0;
  BitString alice_x;               // Alice keeps x^n
  BitString commitment;            // Alice's output c^ell = Ext(x^n, r)
  ToeplitzSeed seed;               // r as stored by Bob
  BitString syndrome;              // w = Syn(x^n) as stored by Bob
  std::vector<uint32_t> index_set; // Bob's I
  BitString substring;             // Bob's s = x_I
  std::shared_ptr<const BinaryCode> code;  // public protocol parameter
};

// Commit on top of a finished weak string erasure outcome.
CommitRecord commit_run(const WseOutcome& wse, std::shared_ptr<const BinaryCode> code,
                        size_t ell, Transport& transport, Rng& alice_rng);
// Convenience overload for one-shot callers; copies the code once.
CommitRecord commit_run(const WseOutcome& wse, const BinaryCode& code, size_t ell,
                        Transport& transport, Rng& alice_rng);

struct OpenResult {
  BitString c_tilde;  // 0^ell on reject
  bool accept = false;
};

// Open: Alice reveals a string; Bob checks his substring and the syndrome.
OpenResult open_run(const CommitRecord& record, const BitString& claimed_x,
                    Transport& transport);

// Standard-commitment wrapper: committing to y sends y xor c^ell.
BitString commit_derandomize(const CommitRecord& record, const BitString& y,
                             Transport& transport);
std::optional<BitString> commit_derandomize_receive(const OpenResult& open,
                                                    const BitString& mask);

struct FrotConfig {
  size_t n = 0;
  size_t beta = 0;
  double omega = 2.0;
  double delta = 0.01;
  StorageSpec storage{ChannelModel::identity(2), 0.0};
  bool toy_mode = false;
  size_t ell_override = 0;  // toy mode only; 0 picks max(1, n/8)
};

struct FrotOutcome {
  BitString s0, s1;  // Alice's strings
  int c = 0;         // Bob's choice bit
  BitString y;       // Bob's s_c
  size_t ell = 0;
  bool covered_by_bound = false;  // false in toy mode
  bool padded = false;            // |I| < n/4 forced zero padding
  // Transcript-visible values.
  std::vector<uint32_t> perm;  // cell permutation, perm[src] = dst
  BitString w, w0, w1;
  ToeplitzSeed r0, r1;
  std::optional<OtParams> params;  // populated outside toy mode
};

// Protocol: weak string erasure, then Bob reshapes his known positions into
// matrix rows, interactive hashing picks two row subsets, and two-universal
// hashing extracts one string per subset.
FrotOutcome frot_run(const FrotConfig& config, Transport& transport, Rng& alice_rng,
                     Rng& bob_rng);

// Non-randomized OT wrapper: Bob flips with c xor d, Alice masks her inputs,
// Bob recovers y_d.
BitString ot_derandomize(const FrotOutcome& frot, const BitString& y0, const BitString& y1,
                         int d, Transport& transport);

}  // namespace nsc
