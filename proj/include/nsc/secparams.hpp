#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nsc/channels.hpp"

namespace nsc {

// Weak string erasure parameters for a given storage model.
struct WseParams {
  size_t n = 0;
  double delta = 0;   // in (0, 1/2)
  double lambda = 0;  // min-entropy rate, bits per qubit
  double eps = 0;     // security error
  bool asymptotic = false;  // lambda came from the strong-converse form
};

// eps(delta, n) = 2 exp(-delta^2 n / (512 (4 + log2(1/delta))^2)).
double wse_error(double delta, size_t n);
// Same bound in the (delta/4, 32(2 + log2(4/delta))^2) parameterization used
// by the dishonest-receiver analysis; algebraically identical to wse_error.
double wse_error_uncertainty(double delta, size_t n);

// lambda(delta, n) = -(1/n) log2 Psucc((1/2 - delta) n) for the given storage.
// Raises FeasibilityError when C_N * nu >= 1/2 or delta >= 1/2 - C_N * nu.
WseParams wse_rate(const StorageSpec& storage, size_t n, double delta);

// One point of a (nu, r) security-region curve.
struct CurvePoint {
  double nu = 0;
  double r_threshold = 0;
  std::string source;
};

enum class ModelFamily { QubitDepolarizing, QutritDepolarizing, TwoPauli };

ChannelModel family_model(ModelFamily f, double r);
std::string family_name(ModelFamily f);

// For each nu, the largest noise parameter r with capacity(r) * nu < 1/2
// (bisection to 1e-8, capped at 1).
std::vector<CurvePoint> security_region(ModelFamily family, const std::vector<double>& nu_grid);

// Largest storage rate admissible for the given channel: 1 / (2 C_N).
double max_storage_rate(const ChannelModel& model);

// The dimension-counting comparison curve: r_threshold = min(1, 1/(4 nu)).
std::vector<CurvePoint> bsm_comparison_curve(const std::vector<double>& nu_grid);

// Privacy-amplification error 2^{-(hmin - ell)/2 - 1} + 2 eps.
double pa_epsilon(double hmin, double ell, double eps);

// Randomized string commitment parameters.
struct BcParams {
  size_t n = 0;
  size_t k = 0;
  size_t dmin = 0;       // = ceil(2 log2(1/eps_prime))
  size_t code_m = 0;     // field degree of the Reed-Solomon backing code
  double eps_prime = 0;
  size_t ell = 0;        // commitment length
  double margin = 0;     // lambda n - (n-k) - 2 log2(1/eps_prime) before flooring
  double error = 0;      // 2 eps + eps_prime
  WseParams wse;
};

BcParams bc_params(const StorageSpec& storage, size_t n, double delta, double eps_prime);

// Oblivious transfer parameters.
struct OtParams {
  size_t n = 0;
  size_t beta = 0;   // block width
  size_t m = 0;      // block count, n / beta, divisible by 4
  double omega = 2;  // >= 2
  size_t t = 0;      // m / 2
  size_t s = 0;      // m / 4
  size_t ell = 0;    // OT string length
  double error = 0;  // 41 * 2^{-lambda^2 n / (512 omega^2 beta)} + 2 eps
  double delta_sampler = 0;  // 2^{-m lambda^2 / (512 omega^2)}
  double kappa = 0;          // m / (s beta) = 4 / beta, must be <= 0.06
  WseParams wse;
};

OtParams ot_params(const StorageSpec& storage, size_t n, double delta, double omega,
                   size_t beta);

// Uniform fixed-size-subset sampler parameters: failure 2^{-s xi^2 / 2}.
struct SamplerParams {
  size_t m = 0;
  size_t s = 0;
  double xi = 0;
  double gamma_fail = 0;
};

SamplerParams sampler_params(size_t m, size_t s, double xi);

// CSV with header `nu,r_threshold,source`, 12 significant digits.
std::string curve_to_csv(const std::vector<CurvePoint>& points);
std::vector<CurvePoint> curve_from_csv(const std::string& csv);
// JSON array of {nu, r_threshold, source}.
std::string curve_to_json(const std::vector<CurvePoint>& points);

}  // namespace nsc
