#include "nsc/secparams.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "nsc/errors.hpp"

namespace nsc {

double wse_error(double delta, size_t n) {
  if (!(delta > 0.0 && delta < 0.5)) throw ArgumentError("wse_error: delta outside (0, 1/2)");
  if (n < 1) throw ArgumentError("wse_error: n must be >= 1");
  const double denom = 4.0 + std::log2(1.0 / delta);
  return 2.0 * std::exp(-(delta * delta) / (512.0 * denom * denom) * static_cast<double>(n));
}

double wse_error_uncertainty(double delta, size_t n) {
  if (!(delta > 0.0 && delta < 0.5))
    throw ArgumentError("wse_error_uncertainty: delta outside (0, 1/2)");
  if (n < 1) throw ArgumentError("wse_error_uncertainty: n must be >= 1");
  const double q = delta / 4.0;
  const double denom = 2.0 + std::log2(4.0 / delta);
  return 2.0 * std::exp(-(q * q) / (32.0 * denom * denom) * static_cast<double>(n));
}

WseParams wse_rate(const StorageSpec& storage, size_t n, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw ArgumentError("wse_rate: delta outside (0, 1/2)");
  if (n < 1) throw ArgumentError("wse_rate: n must be >= 1");

  const double cap_nu = capacity(storage.model) * storage.nu;
  if (cap_nu >= 0.5)
    throw FeasibilityError("C_N * nu < 1/2",
                           "storage capacity times rate is " + std::to_string(cap_nu));
  if (delta >= 0.5 - cap_nu)
    throw FeasibilityError("delta < 1/2 - C_N * nu",
                           "delta = " + std::to_string(delta) +
                               " leaves no margin above capacity");

  const double rate = 0.5 - delta;
  const PSuccBound bound = p_succ_bound(storage, n, rate);

  WseParams out;
  out.n = n;
  out.delta = delta;
  out.lambda = -bound.log2_bound / static_cast<double>(n);
  out.eps = wse_error(delta, n);
  out.asymptotic = bound.asymptotic;
  return out;
}

ChannelModel family_model(ModelFamily f, double r) {
  switch (f) {
    case ModelFamily::QubitDepolarizing:
      return ChannelModel::depolarizing(2, r);
    case ModelFamily::QutritDepolarizing:
      return ChannelModel::depolarizing(3, r);
    case ModelFamily::TwoPauli:
      return ChannelModel::two_pauli(r);
  }
  throw ArgumentError("family_model: unknown family");
}

std::string family_name(ModelFamily f) { return family_model(f, 1.0).name(); }

std::vector<CurvePoint> security_region(ModelFamily family,
                                        const std::vector<double>& nu_grid) {
  std::vector<CurvePoint> out;
  out.reserve(nu_grid.size());
  const std::string source = "noisy_storage:" + family_name(family);
  for (double nu : nu_grid) {
    CurvePoint pt;
    pt.nu = nu;
    pt.source = source;
    if (nu <= 0.0 || capacity(family_model(family, 1.0)) * nu < 0.5) {
      pt.r_threshold = 1.0;  // even noiseless qudits stay below capacity 1/2
    } else {
      // capacity is monotone nondecreasing in r for these families
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 64 && hi - lo > 1e-8; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (capacity(family_model(family, mid)) * nu < 0.5)
          lo = mid;
        else
          hi = mid;
      }
      pt.r_threshold = 0.5 * (lo + hi);
    }
    out.push_back(pt);
  }
  return out;
}

double max_storage_rate(const ChannelModel& model) {
  const double c = capacity(model);
  if (c <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 / c;
}

std::vector<CurvePoint> bsm_comparison_curve(const std::vector<double>& nu_grid) {
  std::vector<CurvePoint> out;
  out.reserve(nu_grid.size());
  for (double nu : nu_grid) {
    CurvePoint pt;
    pt.nu = nu;
    pt.r_threshold = nu <= 0.0 ? 1.0 : std::min(1.0, 1.0 / (4.0 * nu));
    pt.source = "bsm_dimension_argument";
    out.push_back(pt);
  }
  return out;
}

double pa_epsilon(double hmin, double ell, double eps) {
  return std::exp2(-0.5 * (hmin - ell) - 1.0) + 2.0 * eps;
}

BcParams bc_params(const StorageSpec& storage, size_t n, double delta, double eps_prime) {
  if (!(eps_prime > 0.0 && eps_prime < 1.0))
    throw ArgumentError("bc_params: eps_prime must be in (0, 1)");

  const WseParams wse = wse_rate(storage, n, delta);
  if (wse.lambda <= 0.0)
    throw FeasibilityError("lambda > 0", "weak string erasure yields no min-entropy");

  const double log_inv = std::log2(1.0 / eps_prime);
  const size_t d = static_cast<size_t>(std::ceil(2.0 * log_inv));
  if (d < 2) throw ArgumentError("bc_params: eps_prime too close to 1 (distance below 2)");

  // Smallest field degree whose Reed-Solomon expansion covers length n with
  // distance d; shortening preserves n - k = (d-1) m.
  size_t m = 0;
  for (size_t cand = 3; cand <= 16; ++cand) {
    if (((size_t{1} << cand) - 1) * cand >= n && d <= (size_t{1} << cand) - 1) {
      m = cand;
      break;
    }
  }
  if (m == 0)
    throw FeasibilityError("code exists for (n, d)",
                           "no Reed-Solomon field degree m <= 16 covers n = " +
                               std::to_string(n) + " with distance " + std::to_string(d));

  const size_t syndrome_bits = (d - 1) * m;
  if (syndrome_bits >= n)
    throw FeasibilityError("k > 0", "syndrome length (d-1)m exceeds n");

  const double margin = wse.lambda * static_cast<double>(n) -
                        static_cast<double>(syndrome_bits) - 2.0 * log_inv;
  if (margin < 1.0)
    throw FeasibilityError("ell > 0",
                           "commitment margin lambda*n - (n-k) - 2 log(1/eps') = " +
                               std::to_string(margin));

  BcParams out;
  out.n = n;
  out.k = n - syndrome_bits;
  out.dmin = d;
  out.code_m = m;
  out.eps_prime = eps_prime;
  out.ell = static_cast<size_t>(std::floor(margin));
  out.margin = margin;
  out.error = 2.0 * wse.eps + eps_prime;
  out.wse = wse;
  return out;
}

OtParams ot_params(const StorageSpec& storage, size_t n, double delta, double omega,
                   size_t beta) {
  if (!(omega >= 2.0)) throw ArgumentError("ot_params: omega must be >= 2");
  if (beta == 0 || n % beta != 0) throw ArgumentError("ot_params: n must be divisible by beta");
  const size_t m = n / beta;
  if (m % 4 != 0) throw ArgumentError("ot_params: m = n/beta must be divisible by 4");

  const WseParams wse = wse_rate(storage, n, delta);
  if (wse.lambda <= 0.0)
    throw FeasibilityError("lambda > 0", "weak string erasure yields no min-entropy");

  const double beta_floor = std::max(67.0, 256.0 * omega * omega / (wse.lambda * wse.lambda));
  if (static_cast<double>(beta) < beta_floor)
    throw FeasibilityError("beta >= max{67, 256 omega^2 / lambda^2}",
                           "beta = " + std::to_string(beta) + " is below " +
                               std::to_string(beta_floor));

  OtParams out;
  out.n = n;
  out.beta = beta;
  out.m = m;
  out.omega = omega;
  out.t = m / 2;
  out.s = m / 4;
  out.kappa = static_cast<double>(m) / (static_cast<double>(out.s) * static_cast<double>(beta));
  if (out.kappa > 0.06)
    throw FeasibilityError("kappa <= 0.06", "kappa = " + std::to_string(out.kappa));

  const double dn = static_cast<double>(n);
  const double lam = wse.lambda;
  const double sampling_loss = lam * lam / (512.0 * omega * omega * static_cast<double>(beta));
  const double ell_real = (((omega - 1.0) / omega) * (lam / 8.0) - sampling_loss) * dn - 0.5;
  if (ell_real < 1.0)
    throw FeasibilityError("ell > 0", "OT length formula gives " + std::to_string(ell_real));
  out.ell = static_cast<size_t>(std::floor(ell_real));

  out.delta_sampler =
      std::exp2(-static_cast<double>(m) * lam * lam / (512.0 * omega * omega));
  out.error = 41.0 * std::exp2(-sampling_loss * dn) + 2.0 * wse.eps;
  out.wse = wse;
  return out;
}

SamplerParams sampler_params(size_t m, size_t s, double xi) {
  if (!(s > 0 && s < m)) throw ArgumentError("sampler_params: need 0 < s < m");
  if (!(xi >= 0.0 && xi <= 1.0)) throw ArgumentError("sampler_params: xi outside [0,1]");
  SamplerParams out;
  out.m = m;
  out.s = s;
  out.xi = xi;
  out.gamma_fail = std::exp2(-static_cast<double>(s) * xi * xi / 2.0);
  return out;
}

std::string curve_to_csv(const std::vector<CurvePoint>& points) {
  std::string out = "nu,r_threshold,source\n";
  char buf[64];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.12g", p.nu);
    out += buf;
    out += ',';
    std::snprintf(buf, sizeof buf, "%.12g", p.r_threshold);
    out += buf;
    out += ',';
    out += p.source;
    out += '\n';
  }
  return out;
}

std::string curve_to_json(const std::vector<CurvePoint>& points) {
  std::string out = "[";
  char buf[96];
  for (size_t i = 0; i < points.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s\n  {\"nu\":%.12g,\"r_threshold\":%.12g,\"source\":\"",
                  i ? "," : "", points[i].nu, points[i].r_threshold);
    out += buf;
    out += points[i].source;
    out += "\"}";
  }
  out += "\n]\n";
  return out;
}

std::vector<CurvePoint> curve_from_csv(const std::string& csv) {
  std::vector<CurvePoint> out;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "nu,r_threshold,source")
    throw ArgumentError("curve_from_csv: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ArgumentError("curve_from_csv: bad row");
    CurvePoint pt;
    pt.nu = std::stod(line.substr(0, c1));
    pt.r_threshold = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    pt.source = line.substr(c2 + 1);
    out.push_back(pt);
  }
  return out;
}

}  // namespace nsc
