#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nsc/bitstring.hpp"
#include "nsc/rng.hpp"

namespace nsc {

// Product of single-qubit BB84 states H^{theta_i}|x_i>.  Stored symbolically
// as the (data, basis) pairs: the honest protocols never entangle qubits, so
// per-qubit bookkeeping is exact and scales to n = 10^4 and beyond.
struct Bb84Register {
  BitString data;   // x_i
  BitString basis;  // theta_i
  size_t size() const { return data.size(); }
};

Bb84Register prepare_bb84(const BitString& x, const BitString& theta);

// Measure each qubit in the basis given by theta_tilde.  Where the basis
// matches the preparation basis the outcome is the data bit; where it is
// conjugate the outcome is a fresh fair bit.
BitString measure_bb84(const Bb84Register& reg, const BitString& theta_tilde, Rng& rng);

// Density operator on a small Hilbert space (d <= 64).  Construction checks
// Hermiticity (1e-10), unit trace (1e-10) and positivity (min eig >= -1e-9).
class DensityOp {
 public:
  using cd = std::complex<double>;

  static DensityOp from_matrix(size_t dim, std::vector<cd> entries);
  static DensityOp pure(const std::vector<cd>& amplitudes);
  static DensityOp maximally_mixed(size_t dim);
  // H^theta |x><x| H^theta
  static DensityOp bb84_qubit(bool x, bool theta);

  size_t dim() const { return d_; }
  cd at(size_t r, size_t c) const { return m_[r * d_ + c]; }

  // Eigenvalues in ascending order.
  std::vector<double> eigenvalues() const;

  friend DensityOp apply_depolarizing(const DensityOp& rho, double r);
  friend double trace_distance(const DensityOp& rho, const DensityOp& sigma);
  friend double helstrom_guess(const DensityOp& rho0, const DensityOp& rho1, double p0);

 private:
  DensityOp(size_t d, std::vector<cd> m) : d_(d), m_(std::move(m)) {}
  void validate() const;

  size_t d_ = 0;
  std::vector<cd> m_;  // row-major
};

// r*rho + (1-r)*I/d
DensityOp apply_depolarizing(const DensityOp& rho, double r);

// (1/2) || rho - sigma ||_1
double trace_distance(const DensityOp& rho, const DensityOp& sigma);

// Optimal two-outcome discrimination success probability
// (1/2)(1 + || p0*rho0 - (1-p0)*rho1 ||_1).
double helstrom_guess(const DensityOp& rho0, const DensityOp& rho1, double p0);

// Joint distribution of a classical value X and classical side information Q.
// Entries are P(x, q) >= 0 summing to 1 (tolerance 1e-12).
class CcState {
 public:
  CcState(size_t nx, size_t nq, std::vector<double> p);

  size_t nx() const { return nx_; }
  size_t nq() const { return nq_; }
  double p(size_t x, size_t q) const { return p_[x * nq_ + q]; }
  double& p(size_t x, size_t q) { return p_[x * nq_ + q]; }

 private:
  size_t nx_, nq_;
  std::vector<double> p_;
};

// Optimal guessing probability of X from Q: sum_q max_x P(x, q).
double guess_prob_classical(const CcState& state);

}  // namespace nsc
