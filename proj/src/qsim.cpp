#include "nsc/qsim.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "nsc/errors.hpp"

namespace nsc {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr size_t kMaxDim = 64;

Eigen::MatrixXcd to_eigen(size_t d, const std::vector<std::complex<double>>& m) {
  Eigen::MatrixXcd e(d, d);
  for (size_t r = 0; r < d; ++r)
    for (size_t c = 0; c < d; ++c) e(static_cast<long>(r), static_cast<long>(c)) = m[r * d + c];
  return e;
}

std::vector<double> herm_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<size_t>(m.rows()));
  for (long i = 0; i < m.rows(); ++i) out[static_cast<size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

double trace_norm_of_difference(const Eigen::MatrixXcd& m) {
  double s = 0;
  for (double ev : herm_eigenvalues(m)) s += std::abs(ev);
  return s;
}

}  // namespace

Bb84Register prepare_bb84(const BitString& x, const BitString& theta) {
  if (x.size() != theta.size()) throw ArgumentError("prepare_bb84: length mismatch");
  return Bb84Register{x, theta};
}

BitString measure_bb84(const Bb84Register& reg, const BitString& theta_tilde, Rng& rng) {
  if (reg.size() != theta_tilde.size()) throw ArgumentError("measure_bb84: length mismatch");
  BitString out(reg.size());
  for (size_t i = 0; i < reg.size(); ++i) {
    if (reg.basis.get(i) == theta_tilde.get(i))
      out.set(i, reg.data.get(i));
    else
      out.set(i, rng.bit());
  }
  return out;
}

DensityOp DensityOp::from_matrix(size_t dim, std::vector<cd> entries) {
  if (dim == 0 || dim > kMaxDim) throw ArgumentError("DensityOp: dimension must be in [1, 64]");
  if (entries.size() != dim * dim) throw ArgumentError("DensityOp: entry count mismatch");
  DensityOp rho(dim, std::move(entries));
  rho.validate();
  return rho;
}

DensityOp DensityOp::pure(const std::vector<cd>& amp) {
  const size_t d = amp.size();
  std::vector<cd> m(d * d);
  for (size_t r = 0; r < d; ++r)
    for (size_t c = 0; c < d; ++c) m[r * d + c] = amp[r] * std::conj(amp[c]);
  return from_matrix(d, std::move(m));
}

DensityOp DensityOp::maximally_mixed(size_t dim) {
  std::vector<cd> m(dim * dim, cd{0, 0});
  for (size_t i = 0; i < dim; ++i) m[i * dim + i] = cd{1.0 / static_cast<double>(dim), 0};
  return from_matrix(dim, std::move(m));
}

DensityOp DensityOp::bb84_qubit(bool x, bool theta) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<cd> amp(2);
  if (!theta) {
    amp[0] = x ? 0.0 : 1.0;
    amp[1] = x ? 1.0 : 0.0;
  } else {
    amp[0] = inv_sqrt2;
    amp[1] = x ? -inv_sqrt2 : inv_sqrt2;
  }
  return pure(amp);
}

void DensityOp::validate() const {
  double tr = 0;
  for (size_t r = 0; r < d_; ++r) {
    tr += m_[r * d_ + r].real();
    if (std::abs(m_[r * d_ + r].imag()) > kHermTol)
      throw ArgumentError("DensityOp: diagonal not real");
    for (size_t c = r + 1; c < d_; ++c) {
      if (std::abs(m_[r * d_ + c] - std::conj(m_[c * d_ + r])) > kHermTol)
        throw ArgumentError("DensityOp: not Hermitian");
    }
  }
  if (std::abs(tr - 1.0) > kTraceTol) throw ArgumentError("DensityOp: trace != 1");
  const auto evs = eigenvalues();
  if (!evs.empty() && evs.front() < -kPsdTol)
    throw ArgumentError("DensityOp: not positive semidefinite");
}

std::vector<double> DensityOp::eigenvalues() const {
  auto evs = herm_eigenvalues(to_eigen(d_, m_));
  std::sort(evs.begin(), evs.end());
  return evs;
}

DensityOp apply_depolarizing(const DensityOp& rho, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("apply_depolarizing: r outside [0,1]");
  const size_t d = rho.d_;
  std::vector<DensityOp::cd> m(d * d);
  const double mix = (1.0 - r) / static_cast<double>(d);
  for (size_t i = 0; i < d * d; ++i) m[i] = r * rho.m_[i];
  for (size_t i = 0; i < d; ++i) m[i * d + i] += mix;
  return DensityOp::from_matrix(d, std::move(m));
}

double trace_distance(const DensityOp& rho, const DensityOp& sigma) {
  if (rho.d_ != sigma.d_) throw ArgumentError("trace_distance: dimension mismatch");
  return 0.5 * trace_norm_of_difference(to_eigen(rho.d_, rho.m_) - to_eigen(sigma.d_, sigma.m_));
}

double helstrom_guess(const DensityOp& rho0, const DensityOp& rho1, double p0) {
  if (rho0.d_ != rho1.d_) throw ArgumentError("helstrom_guess: dimension mismatch");
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw ArgumentError("helstrom_guess: p0 outside [0,1]");
  const Eigen::MatrixXcd gap =
      p0 * to_eigen(rho0.d_, rho0.m_) - (1.0 - p0) * to_eigen(rho1.d_, rho1.m_);
  return 0.5 * (1.0 + trace_norm_of_difference(gap));
}

CcState::CcState(size_t nx, size_t nq, std::vector<double> p)
    : nx_(nx), nq_(nq), p_(std::move(p)) {
  if (p_.size() != nx_ * nq_) throw ArgumentError("CcState: table size mismatch");
  double sum = 0;
  for (double v : p_) {
    if (v < 0) throw ArgumentError("CcState: negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ArgumentError("CcState: entries do not sum to 1");
}

double guess_prob_classical(const CcState& state) {
  double total = 0;
  for (size_t q = 0; q < state.nq(); ++q) {
    double best = 0;
    for (size_t x = 0; x < state.nx(); ++x) best = std::max(best, state.p(x, q));
    total += best;
  }
  return total;
}

}  // namespace nsc
