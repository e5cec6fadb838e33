#include "nsc/channels.hpp"

#include <algorithm>
#include <cmath>

#include "nsc/errors.hpp"

namespace nsc {

namespace {

constexpr double kAlphaMax = 1e6;  // stands in for alpha -> infinity

double xlog2x(double x) { return x <= 0 ? 0.0 : x * std::log2(x); }

// log2((r + (1-r)/d)^alpha + (d-1)((1-r)/d)^alpha), evaluated in log space so
// large alpha does not underflow.
double depol_log2_power_sum(size_t d, double r, double alpha) {
  const double dd = static_cast<double>(d);
  const double a = r + (1.0 - r) / dd;  // top output eigenvalue
  const double b = (1.0 - r) / dd;      // the d-1 others
  if (b <= 0) return alpha * std::log2(a);
  const double la = std::log2(a), lb = std::log2(b);
  return alpha * la + std::log2(1.0 + (dd - 1.0) * std::exp2(alpha * (lb - la)));
}

double depol_min_output_vn(size_t d, double r) {
  const double dd = static_cast<double>(d);
  const double a = r + (1.0 - r) / dd;
  const double b = (1.0 - r) / dd;
  return -(xlog2x(a) + (dd - 1.0) * xlog2x(b));
}

}  // namespace

ChannelModel ChannelModel::depolarizing(size_t d, double r) {
  if (d < 2) throw ArgumentError("depolarizing: d must be >= 2");
  if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("depolarizing: r outside [0,1]");
  return ChannelModel{ChannelKind::Depolarizing, d, r};
}

ChannelModel ChannelModel::two_pauli(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("two_pauli: r outside [0,1]");
  return ChannelModel{ChannelKind::TwoPauli, 2, r};
}

ChannelModel ChannelModel::identity(size_t d) {
  if (d < 2) throw ArgumentError("identity: d must be >= 2");
  return ChannelModel{ChannelKind::Identity, d, 1.0};
}

std::string ChannelModel::name() const {
  switch (kind) {
    case ChannelKind::Depolarizing:
      return dim == 2 ? "qubit_depolarizing"
                      : (dim == 3 ? "qutrit_depolarizing"
                                  : "depolarizing_d" + std::to_string(dim));
    case ChannelKind::TwoPauli:
      return "two_pauli";
    case ChannelKind::Identity:
      return "identity_d" + std::to_string(dim);
  }
  return "?";
}

StorageSpec StorageSpec::make(ChannelModel m, double nu) {
  if (!(nu >= 0.0)) throw ArgumentError("StorageSpec: nu must be >= 0");
  return StorageSpec{m, nu};
}

double log2d(size_t d) { return std::log2(static_cast<double>(d)); }

double binary_entropy(double p) { return -(xlog2x(p) + xlog2x(1.0 - p)); }

double capacity(const ChannelModel& model) {
  switch (model.kind) {
    case ChannelKind::Identity:
      return log2d(model.dim);
    case ChannelKind::Depolarizing: {
      // C = log d + (r + (1-r)/d) log (r + (1-r)/d) + (d-1) (1-r)/d log (1-r)/d.
      // For d = 2 this is 1 + (1+r)/2 log (1+r)/2 + (1-r)/2 log (1-r)/2.
      const double dd = static_cast<double>(model.dim);
      const double a = model.noise + (1.0 - model.noise) / dd;
      const double b = (1.0 - model.noise) / dd;
      return log2d(model.dim) + xlog2x(a) + (dd - 1.0) * xlog2x(b);
    }
    case ChannelKind::TwoPauli: {
      const double mx = std::max(model.noise, 2.0 * model.noise - 1.0);
      return 1.0 - binary_entropy((1.0 + mx) / 2.0);
    }
  }
  return 0;
}

double min_output_renyi(const ChannelModel& model, double alpha) {
  if (!(alpha >= 1.0)) throw ArgumentError("min_output_renyi: alpha must be >= 1");
  switch (model.kind) {
    case ChannelKind::Identity:
      return 0.0;
    case ChannelKind::Depolarizing:
      if (alpha == 1.0) return depol_min_output_vn(model.dim, model.noise);
      return depol_log2_power_sum(model.dim, model.noise, alpha) / (1.0 - alpha);
    case ChannelKind::TwoPauli:
      throw ArgumentError(
          "min_output_renyi: no covered closed form for the two-Pauli channel");
  }
  return 0;
}

ConverseExponent converse_exponent(const ChannelModel& model, double rate) {
  if (!(rate >= 0.0)) throw ArgumentError("converse_exponent: rate must be >= 0");
  if (model.kind == ChannelKind::TwoPauli)
    throw ArgumentError("converse_exponent: two-Pauli exponent not covered; use "
                        "depolarizing or identity models");

  const double ld = log2d(model.dim);

  // Objective in u = 1 - 1/alpha.  For the depolarizing channel
  //   g(u) = u (R - log d) - log a - (1-u) log2(1 + (d-1) 2^{alpha (lb - la)})
  // and for identity g(u) = u (R - log d).
  const auto objective = [&](double u) -> double {
    if (model.kind == ChannelKind::Identity) return u * (rate - ld);
    if (u <= 0.0) return 0.0;
    const double alpha = 1.0 / (1.0 - u);
    return u * (rate - ld + min_output_renyi(model, alpha));
  };

  const double u_hi = 1.0 - 1.0 / kAlphaMax;

  // Coarse grid to bracket the maximum, then golden-section refinement.
  double best_u = 0.0, best_g = 0.0;
  constexpr int kGrid = 64;
  for (int i = 0; i <= kGrid; ++i) {
    const double u = u_hi * i / kGrid;
    const double g = objective(u);
    if (g > best_g) {
      best_g = g;
      best_u = u;
    }
  }
  double lo = std::max(0.0, best_u - u_hi / kGrid);
  double hi = std::min(u_hi, best_u + u_hi / kGrid);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = objective(x1);
    }
  }
  const double u_star = 0.5 * (lo + hi);
  double gamma = objective(u_star);
  double alpha_star = u_star >= 1.0 ? kAlphaMax : 1.0 / (1.0 - u_star);

  // Explicit alpha -> infinity endpoint: R - log d + S^min_infinity.
  double s_inf = 0.0;
  if (model.kind == ChannelKind::Depolarizing)
    s_inf = -std::log2(model.noise + (1.0 - model.noise) / static_cast<double>(model.dim));
  const double g_inf = rate - ld + s_inf;
  if (g_inf > gamma) {
    gamma = g_inf;
    alpha_star = kAlphaMax;
  }

  ConverseExponent out;
  out.rate = rate;
  out.gamma = std::max(0.0, gamma);
  out.argmax_alpha = out.gamma > 0 ? alpha_star : 1.0;
  return out;
}

PSuccBound p_succ_bound(const StorageSpec& storage, size_t n, double rate) {
  if (n < 1) throw ArgumentError("p_succ_bound: n must be >= 1");
  if (!(rate > 0.0)) throw ArgumentError("p_succ_bound: rate must be > 0");

  const double dn = static_cast<double>(n);
  PSuccBound out;
  if (storage.nu == 0.0) {
    // No storage at all: guessing one of 2^{nR} strings.
    out.log2_bound = -dn * rate;
  } else if (storage.model.kind == ChannelKind::Identity) {
    // Noiseless storage of nu*n qudits carries nu*n*log d bits.
    out.log2_bound = std::min(0.0, -(dn * rate - storage.nu * dn * log2d(storage.model.dim)));
  } else {
    const ConverseExponent ce = converse_exponent(storage.model, rate / storage.nu);
    out.log2_bound = -dn * storage.nu * ce.gamma;
    out.asymptotic = true;
  }
  out.value = std::exp2(out.log2_bound);
  return out;
}

}  // namespace nsc
