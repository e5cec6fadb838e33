#pragma once

#include <cstddef>
#include <string>

namespace nsc {

enum class ChannelKind { Depolarizing, TwoPauli, Identity };

// Storage-channel model.  Depolarizing: N_r(rho) = r*rho + (1-r)*I/d on a
// d-dimensional system.  TwoPauli: the one-qubit channel
// r*rho + (1-r)/2 (X rho X + Z rho Z).  Identity: noiseless d-dimensional
// storage.
struct ChannelModel {
  ChannelKind kind = ChannelKind::Depolarizing;
  size_t dim = 2;     // >= 2; TwoPauli is qubit-only
  double noise = 1.0;  // r in [0,1]; ignored for Identity

  static ChannelModel depolarizing(size_t d, double r);
  static ChannelModel two_pauli(double r);
  static ChannelModel identity(size_t d);

  std::string name() const;
};

// Adversary storage F = N^{(nu*n)} : channel model plus storage rate nu
// (stored qudits per transmitted protocol qubit).
struct StorageSpec {
  ChannelModel model;
  double nu = 1.0;  // >= 0

  static StorageSpec make(ChannelModel m, double nu);
};

// Classical capacity C_N in bits.
double capacity(const ChannelModel& model);

// Minimum output alpha-Renyi entropy S^min_alpha(N), alpha >= 1 (alpha = 1 is
// the von Neumann limit).  Closed form for Depolarizing/Identity; TwoPauli is
// not covered and raises ArgumentError.
double min_output_renyi(const ChannelModel& model, double alpha);

// gamma^N(R) = max_{alpha >= 1} ((alpha-1)/alpha) (R - log d + S^min_alpha(N)),
// clamped below at zero.
struct ConverseExponent {
  double rate = 0;          // R, bits per qudit
  double gamma = 0;         // exponent, >= 0
  double argmax_alpha = 1;  // maximizing alpha (capped at 1e6 for the limit)
};

ConverseExponent converse_exponent(const ChannelModel& model, double rate);

// Upper bound on the probability of pushing nR bits through the storage
// F = N^{(nu*n)}.  Exact counting form for Identity; strong-converse form
// (asymptotic in n) for noisy models; nu = 0 degenerates to blind guessing.
struct PSuccBound {
  double log2_bound = 0;    // log2 of the bound, <= 0
  double value = 1;         // 2^log2_bound (underflows to 0 for large n)
  bool asymptotic = false;  // true when the strong-converse form was used
};

PSuccBound p_succ_bound(const StorageSpec& storage, size_t n, double rate);

// log2(d) helper used across the security formulas (all logs are base 2).
double log2d(size_t d);

// Binary entropy h(p) in bits.
double binary_entropy(double p);

}  // namespace nsc
