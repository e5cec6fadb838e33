#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsc/coding.hpp"
#include "nsc/qsim.hpp"

namespace nsc {

// 99% Wilson score interval.
struct WilsonInterval {
  double low = 0, high = 1;
};
WilsonInterval wilson99(uint64_t successes, uint64_t samples);

struct AttackReport {
  std::string strategy;
  size_t n = 0;
  size_t trials = 0;
  uint64_t samples = 0;  // Bernoulli samples behind the estimate (>= trials)
  uint64_t successes = 0;
  double estimate = 0;
  double ci_low = 0, ci_high = 1;  // 99% Wilson
  double expected = 0;             // exact per-strategy analysis, when known
  double bound = 1;                // analytic comparison value
  std::string bound_source;
  bool bound_vacuous = false;
  std::string to_json() const;
};

enum class MeasureBasis { Computational, Hadamard, Random, Breidbart };

// Dishonest receiver models for the weak string erasure run: measure
// immediately in a fixed or random basis, keep q qubits noiselessly, or store
// nu*n qubits through depolarizing noise (exact erasure decomposition).
struct AttackStrategy {
  enum class Kind { MeasureNow, BoundedStore, NoisyStore };
  Kind kind = Kind::MeasureNow;
  MeasureBasis basis = MeasureBasis::Breidbart;
  size_t stored_qubits = 0;  // BoundedStore
  double r = 1.0;            // NoisyStore keep probability
  double nu = 1.0;           // NoisyStore storage rate

  static AttackStrategy measure_now(MeasureBasis b);
  static AttackStrategy bounded_store(size_t q);
  static AttackStrategy noisy_store(double r, double nu);
  std::string name() const;
};

struct WseAttackOutcome {
  AttackReport per_bit;
  AttackReport whole_string;
};

WseAttackOutcome run_wse_attack(const AttackStrategy& strategy, size_t n, size_t trials,
                                uint64_t seed);

// Cheating committer opening at a forced Hamming distance: the differing
// positions form a random codeword of that weight, so the syndrome check
// passes and acceptance is decided by the index set alone.  Toy codes only.
AttackReport run_binding_attack(const BinaryCode& code, size_t dist, size_t trials,
                                uint64_t seed);

// Hmin(X|Q) = -log2 Pguess for classical side information.
double min_entropy_exact(const CcState& state);

// Row-stochastic classical channel.
struct ClassicalChannel {
  size_t in = 0, out = 0;
  std::vector<double> p;  // p[i*out + o]
  double at(size_t i, size_t o) const { return p[i * out + o]; }
  static ClassicalChannel identity(size_t n);
  static ClassicalChannel constant(size_t in, size_t out);
  static ClassicalChannel random(size_t in, size_t out, Rng& rng);
};

// Optimal probability of pushing a uniform k-bit message through the channel,
// by exhaustive search over deterministic encodings (exact for tiny sizes).
double classical_p_succ(const ClassicalChannel& channel, int64_t k_bits);

struct InequalityCheck {
  bool holds = false;
  double lhs = 0, rhs = 0;
  double slack = 0;  // lhs - rhs
};

// Storage degrades side information at least as fast as channel coding:
// Hmin(X|F(Q)) >= -log Psucc(floor(Hmin(X))).
InequalityCheck check_storage_degradation(const CcState& state, const ClassicalChannel& channel);

// Joint distribution of (X, T, Q), all classical.
class CctState {
 public:
  CctState(size_t nx, size_t nt, size_t nq)
      : nx_(nx), nt_(nt), nq_(nq), p_(nx * nt * nq, 0.0) {}

  size_t nx() const { return nx_; }
  size_t nt() const { return nt_; }
  size_t nq() const { return nq_; }
  double at(size_t x, size_t t, size_t q) const { return p_[(x * nt_ + t) * nq_ + q]; }
  double& at(size_t x, size_t t, size_t q) { return p_[(x * nt_ + t) * nq_ + q]; }

  static CctState random(size_t nx, size_t nt, size_t nq, Rng& rng);

 private:
  size_t nx_, nt_, nq_;
  std::vector<double> p_;
};

// Conditioned variant: Hmin^{eps'}(X|T F(Q)) >= -log Psucc(floor(Hmin(X|T) -
// log(1/eps'))), with the smooth min-entropy evaluated exactly.
InequalityCheck check_conditioned_degradation(const CctState& state, const ClassicalChannel& channel,
                                  double eps_prime);

// Exact eps-smooth min-entropy of a classical joint distribution P(x, v)
// (columns v, budget 2*eps of removable mass, greedy water-melt optimum).
double smooth_hmin_classical(size_t nx, size_t nv, const std::vector<double>& joint,
                             double eps);

// | Hmin(X|QT) computed jointly - via the conditional-expectation identity |.
double conditioning_identity_gap(const CctState& state);

struct UncertaintyScan {
  double max_pguess = 0;
  double polar = 0, azimuth = 0;  // Bloch angles of the maximizing basis
};

// Scan all single-qubit projective measurements against the uniform-BB84
// qubit, computing the exact guessing probability once the basis is revealed.
UncertaintyScan uncertainty_scan(size_t resolution);

// Guessing probability of the basis-revealed BB84 bit for one fixed
// projective measurement at the given Bloch angles.
double post_measurement_pguess(double polar, double azimuth);

// Empirical distinguishing advantage of a noisy-storage receiver against the
// committed string (first bit), via syndrome-consistent completion.
AttackReport run_hiding_attack_commit(const BinaryCode& code, size_t ell, double r, double nu,
                                      size_t trials, uint64_t seed);

// Same against s_{1-c} in the transfer protocol (toy sizes).
AttackReport run_hiding_attack_frot(size_t n, size_t beta, double r, double nu, size_t trials,
                                    uint64_t seed);

}  // namespace nsc
