#include "nsc/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include "nsc/errors.hpp"
#include "nsc/hashing.hpp"
#include "nsc/ihash.hpp"
#include "nsc/protocols.hpp"
#include "nsc/secparams.hpp"
#include "nsc/transport.hpp"

namespace nsc {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // Phi^{-1}(0.995)
constexpr double kBreidbartSuccess = 0.85355339059327373;  // 1/2 + 1/(2 sqrt 2)

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

WilsonInterval wilson99(uint64_t successes, uint64_t samples) {
  if (samples == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(samples);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = kZ99 * kZ99;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half =
      kZ99 * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string AttackReport::to_json() const {
  std::string s = "{";
  s += "\"strategy\":\"" + strategy + "\",";
  s += "\"n\":" + std::to_string(n) + ",";
  s += "\"trials\":" + std::to_string(trials) + ",";
  s += "\"samples\":" + std::to_string(samples) + ",";
  s += "\"successes\":" + std::to_string(successes) + ",";
  s += "\"estimate\":" + fmt12(estimate) + ",";
  s += "\"ci_low\":" + fmt12(ci_low) + ",";
  s += "\"ci_high\":" + fmt12(ci_high) + ",";
  s += "\"expected\":" + fmt12(expected) + ",";
  s += "\"bound\":" + fmt12(bound) + ",";
  s += "\"bound_source\":\"" + bound_source + "\",";
  s += std::string("\"bound_vacuous\":") + (bound_vacuous ? "true" : "false");
  s += "}";
  return s;
}

AttackStrategy AttackStrategy::measure_now(MeasureBasis b) {
  AttackStrategy s;
  s.kind = Kind::MeasureNow;
  s.basis = b;
  return s;
}

AttackStrategy AttackStrategy::bounded_store(size_t q) {
  AttackStrategy s;
  s.kind = Kind::BoundedStore;
  s.stored_qubits = q;
  return s;
}

AttackStrategy AttackStrategy::noisy_store(double r, double nu) {
  if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("noisy_store: r outside [0,1]");
  if (!(nu >= 0.0)) throw ArgumentError("noisy_store: nu must be >= 0");
  AttackStrategy s;
  s.kind = Kind::NoisyStore;
  s.r = r;
  s.nu = nu;
  return s;
}

std::string AttackStrategy::name() const {
  switch (kind) {
    case Kind::MeasureNow:
      switch (basis) {
        case MeasureBasis::Computational: return "measure_now:computational";
        case MeasureBasis::Hadamard: return "measure_now:hadamard";
        case MeasureBasis::Random: return "measure_now:random";
        case MeasureBasis::Breidbart: return "measure_now:breidbart";
      }
      return "measure_now";
    case Kind::BoundedStore:
      return "bounded_store:q=" + std::to_string(stored_qubits);
    case Kind::NoisyStore:
      return "noisy_store:r=" + fmt12(r) + ",nu=" + fmt12(nu);
  }
  return "?";
}

namespace {

// Per-qubit success probability of guess-the-outcome for a measure-now basis,
// given the preparation basis theta.
double measure_now_success(MeasureBasis b, bool theta, Rng& rng) {
  switch (b) {
    case MeasureBasis::Computational:
      return theta ? 0.5 : 1.0;
    case MeasureBasis::Hadamard:
      return theta ? 1.0 : 0.5;
    case MeasureBasis::Random:
      return rng.bit() == theta ? 1.0 : 0.5;
    case MeasureBasis::Breidbart:
      return kBreidbartSuccess;
  }
  return 0.5;
}

struct StrategyBounds {
  double expected_bit;
  double expected_whole;
  double whole_bound;
  bool whole_vacuous;
  std::string whole_source;
};

StrategyBounds strategy_analysis(const AttackStrategy& s, size_t n) {
  StrategyBounds out{};
  const double dn = static_cast<double>(n);
  size_t stored = 0;
  double kept_success = 1.0;
  switch (s.kind) {
    case AttackStrategy::Kind::MeasureNow:
      out.expected_bit = s.basis == MeasureBasis::Breidbart ? kBreidbartSuccess : 0.75;
      break;
    case AttackStrategy::Kind::BoundedStore:
      stored = std::min(s.stored_qubits, n);
      out.expected_bit = (static_cast<double>(stored) + 0.75 * (dn - stored)) / dn;
      break;
    case AttackStrategy::Kind::NoisyStore:
      stored = std::min(n, static_cast<size_t>(s.nu * dn + 1e-9));
      kept_success = s.r + (1.0 - s.r) / 2.0;
      out.expected_bit =
          (kept_success * static_cast<double>(stored) + 0.75 * (dn - stored)) / dn;
      break;
  }
  switch (s.kind) {
    case AttackStrategy::Kind::MeasureNow:
      out.expected_whole = std::pow(out.expected_bit, dn);
      break;
    default:
      out.expected_whole = std::pow(kept_success, static_cast<double>(stored)) *
                           std::pow(0.75, dn - static_cast<double>(stored));
      break;
  }

  // Whole-string comparison bound from the min-entropy rate of the matching
  // storage model at delta = 0.01.
  StorageSpec storage{ChannelModel::identity(2), 0.0};
  switch (s.kind) {
    case AttackStrategy::Kind::MeasureNow:
      break;  // no storage
    case AttackStrategy::Kind::BoundedStore:
      storage = StorageSpec{ChannelModel::identity(2), static_cast<double>(stored) / dn};
      break;
    case AttackStrategy::Kind::NoisyStore:
      storage = StorageSpec{ChannelModel::depolarizing(2, s.r), s.nu};
      break;
  }
  try {
    const WseParams wse = wse_rate(storage, n, 0.01);
    out.whole_bound = std::exp2(-wse.lambda * dn) + wse.eps;
    out.whole_source = wse.asymptotic
                           ? "min-entropy rate bound (asymptotic strong-converse form)"
                           : "min-entropy rate bound (exact counting form)";
    out.whole_vacuous = out.whole_bound >= 1.0;
  } catch (const FeasibilityError& e) {
    out.whole_bound = 1.0;
    out.whole_vacuous = true;
    out.whole_source = std::string("not covered: ") + e.inequality();
  }
  return out;
}

}  // namespace

WseAttackOutcome run_wse_attack(const AttackStrategy& strategy, size_t n, size_t trials,
                                uint64_t seed) {
  if (trials < 1) throw ArgumentError("run_wse_attack: trials must be >= 1");
  if (n < 1) throw ArgumentError("run_wse_attack: n must be >= 1");

  uint64_t bit_hits = 0, whole_hits = 0;
  size_t stored = 0;
  if (strategy.kind == AttackStrategy::Kind::BoundedStore)
    stored = std::min(strategy.stored_qubits, n);
  if (strategy.kind == AttackStrategy::Kind::NoisyStore)
    stored = std::min(n, static_cast<size_t>(strategy.nu * static_cast<double>(n) + 1e-9));

  for (size_t trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::substream(seed, trial);
    size_t correct = 0;
    for (size_t i = 0; i < n; ++i) {
      const bool theta = rng.bit();
      bool hit;
      if (i < stored && strategy.kind != AttackStrategy::Kind::MeasureNow) {
        // Stored qubit: read out in the revealed basis, exact unless erased.
        const bool erased = strategy.kind == AttackStrategy::Kind::NoisyStore &&
                            rng.unit() >= strategy.r;
        hit = erased ? rng.bit() : true;
      } else {
        const MeasureBasis b = strategy.kind == AttackStrategy::Kind::MeasureNow
                                   ? strategy.basis
                                   : MeasureBasis::Random;
        const double p = measure_now_success(b, theta, rng);
        hit = p >= 1.0 || rng.unit() < p;
      }
      correct += hit;
    }
    bit_hits += correct;
    whole_hits += correct == n;
  }

  const StrategyBounds analysis = strategy_analysis(strategy, n);
  WseAttackOutcome out;

  out.per_bit.strategy = strategy.name();
  out.per_bit.n = n;
  out.per_bit.trials = trials;
  out.per_bit.samples = static_cast<uint64_t>(trials) * n;
  out.per_bit.successes = bit_hits;
  out.per_bit.estimate = static_cast<double>(bit_hits) / static_cast<double>(out.per_bit.samples);
  const WilsonInterval wb = wilson99(bit_hits, out.per_bit.samples);
  out.per_bit.ci_low = wb.low;
  out.per_bit.ci_high = wb.high;
  out.per_bit.expected = analysis.expected_bit;
  out.per_bit.bound = kBreidbartSuccess;
  out.per_bit.bound_source = "post-measurement uncertainty constant 1/2 + 1/(2 sqrt 2)";
  out.per_bit.bound_vacuous = strategy.kind != AttackStrategy::Kind::MeasureNow;

  out.whole_string = out.per_bit;
  out.whole_string.samples = trials;
  out.whole_string.successes = whole_hits;
  out.whole_string.estimate = static_cast<double>(whole_hits) / static_cast<double>(trials);
  const WilsonInterval ww = wilson99(whole_hits, trials);
  out.whole_string.ci_low = ww.low;
  out.whole_string.ci_high = ww.high;
  out.whole_string.expected = analysis.expected_whole;
  out.whole_string.bound = analysis.whole_bound;
  out.whole_string.bound_source = analysis.whole_source;
  out.whole_string.bound_vacuous = analysis.whole_vacuous;
  return out;
}

AttackReport run_binding_attack(const BinaryCode& code, size_t dist, size_t trials,
                                uint64_t seed) {
  if (!code.is_toy())
    throw FeasibilityError("toy code required",
                           "syndrome forcing needs the enumerated codeword list");
  if (trials < 1) throw ArgumentError("run_binding_attack: trials must be >= 1");

  std::vector<uint32_t> weight_matched;
  for (uint32_t c : code.toy_codewords())
    if (static_cast<size_t>(std::popcount(c)) == dist) weight_matched.push_back(c);
  if (dist > 0 && weight_matched.empty())
    throw ArgumentError("run_binding_attack: code has no codeword of weight " +
                        std::to_string(dist));

  const size_t n = code.n();
  const size_t ell = std::max<size_t>(1, std::min<size_t>(4, n / 2));
  const auto shared_code = std::make_shared<BinaryCode>(code);
  uint64_t accepts = 0;
  for (size_t trial = 0; trial < trials; ++trial) {
    Rng alice = Rng::substream(seed, 2 * trial);
    Rng bob = Rng::substream(seed, 2 * trial + 1);
    Transport transport;
    transport.set_logging(false);
    const WseOutcome wse = wse_run(n, transport, alice, bob);
    const CommitRecord rec = commit_run(wse, shared_code, ell, transport, alice);

    BitString claimed = rec.alice_x;
    if (dist > 0) {
      const uint32_t cw =
          weight_matched[static_cast<size_t>(alice.below(weight_matched.size()))];
      for (size_t i = 0; i < n; ++i)
        if ((cw >> i) & 1) claimed.flip(i);
    }
    const OpenResult open = open_run(rec, claimed, transport);
    accepts += open.accept;
  }

  AttackReport rep;
  rep.strategy = "binding:dist=" + std::to_string(dist) + ",code=" + code.describe();
  rep.n = n;
  rep.trials = trials;
  rep.samples = trials;
  rep.successes = accepts;
  rep.estimate = static_cast<double>(accepts) / static_cast<double>(trials);
  const WilsonInterval wi = wilson99(accepts, trials);
  rep.ci_low = wi.low;
  rep.ci_high = wi.high;
  rep.expected = std::exp2(-static_cast<double>(dist));
  rep.bound = std::exp2(-static_cast<double>(code.dmin()) / 2.0);
  rep.bound_source = "binding envelope 2^{-d/2}";
  rep.bound_vacuous = false;
  return rep;
}

double min_entropy_exact(const CcState& state) {
  return -std::log2(guess_prob_classical(state));
}

ClassicalChannel ClassicalChannel::identity(size_t n) {
  ClassicalChannel c;
  c.in = c.out = n;
  c.p.assign(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) c.p[i * n + i] = 1.0;
  return c;
}

ClassicalChannel ClassicalChannel::constant(size_t in, size_t out) {
  ClassicalChannel c;
  c.in = in;
  c.out = out;
  c.p.assign(in * out, 0.0);
  for (size_t i = 0; i < in; ++i) c.p[i * out] = 1.0;
  return c;
}

ClassicalChannel ClassicalChannel::random(size_t in, size_t out, Rng& rng) {
  ClassicalChannel c;
  c.in = in;
  c.out = out;
  c.p.assign(in * out, 0.0);
  for (size_t i = 0; i < in; ++i) {
    double sum = 0;
    for (size_t o = 0; o < out; ++o) {
      c.p[i * out + o] = -std::log(1.0 - rng.unit());
      sum += c.p[i * out + o];
    }
    for (size_t o = 0; o < out; ++o) c.p[i * out + o] /= sum;
  }
  return c;
}

double classical_p_succ(const ClassicalChannel& channel, int64_t k_bits) {
  if (k_bits <= 0) return 1.0;
  if (k_bits >= 60) return 0.0;
  const size_t messages = size_t{1} << k_bits;
  double enc_count = 1;
  for (size_t i = 0; i < messages; ++i) {
    enc_count *= static_cast<double>(channel.in);
    if (enc_count > 1e7)
      throw FeasibilityError("instance size", "encoder search space exceeds 1e7");
  }

  std::vector<size_t> enc(messages, 0);
  double best = 0;
  for (;;) {
    double succ = 0;
    for (size_t o = 0; o < channel.out; ++o) {
      double mx = 0;
      for (size_t s = 0; s < messages; ++s) mx = std::max(mx, channel.at(enc[s], o));
      succ += mx;
    }
    best = std::max(best, succ / static_cast<double>(messages));
    // odometer over deterministic encodings
    size_t pos = 0;
    while (pos < messages && ++enc[pos] == channel.in) enc[pos++] = 0;
    if (pos == messages) break;
  }
  return best;
}

InequalityCheck check_storage_degradation(const CcState& state, const ClassicalChannel& channel) {
  if (channel.in != state.nq()) throw ArgumentError("storage degradation check: channel input != nq");
  if (state.nx() * state.nq() > (size_t{1} << 20))
    throw FeasibilityError("instance size", "|X| |Q| exceeds 2^20");

  // lhs: Hmin(X | F(Q)) on the pushed-forward joint.
  std::vector<double> joint(state.nx() * channel.out, 0.0);
  for (size_t x = 0; x < state.nx(); ++x)
    for (size_t q = 0; q < state.nq(); ++q)
      for (size_t o = 0; o < channel.out; ++o)
        joint[x * channel.out + o] += state.p(x, q) * channel.at(q, o);
  double guess = 0;
  for (size_t o = 0; o < channel.out; ++o) {
    double mx = 0;
    for (size_t x = 0; x < state.nx(); ++x) mx = std::max(mx, joint[x * channel.out + o]);
    guess += mx;
  }
  const double lhs = -std::log2(guess);

  // rhs: -log Psucc(floor(Hmin(X))).
  double px_max = 0;
  for (size_t x = 0; x < state.nx(); ++x) {
    double px = 0;
    for (size_t q = 0; q < state.nq(); ++q) px += state.p(x, q);
    px_max = std::max(px_max, px);
  }
  const auto k = static_cast<int64_t>(std::floor(-std::log2(px_max) + 1e-9));
  const double rhs = -std::log2(classical_p_succ(channel, k));

  InequalityCheck out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.slack = lhs - rhs;
  out.holds = out.slack >= -1e-9;
  return out;
}

CctState CctState::random(size_t nx, size_t nt, size_t nq, Rng& rng) {
  CctState s(nx, nt, nq);
  double sum = 0;
  for (size_t x = 0; x < nx; ++x)
    for (size_t t = 0; t < nt; ++t)
      for (size_t q = 0; q < nq; ++q) {
        s.at(x, t, q) = -std::log(1.0 - rng.unit());
        sum += s.at(x, t, q);
      }
  for (size_t x = 0; x < nx; ++x)
    for (size_t t = 0; t < nt; ++t)
      for (size_t q = 0; q < nq; ++q) s.at(x, t, q) /= sum;
  return s;
}

double smooth_hmin_classical(size_t nx, size_t nv, const std::vector<double>& joint,
                             double eps) {
  if (joint.size() != nx * nv) throw ArgumentError("smooth_hmin_classical: size mismatch");
  // Per column: entries sorted descending; melting the top tier of j tied
  // entries by delta costs j*delta of removable mass and lowers the column
  // maximum (and so the guessing sum) by delta.  Greedy on the cheapest tier
  // is exact because each column's gain is concave in its spent budget.
  struct Column {
    std::vector<double> sorted;  // descending
    double level;                // current top level
    size_t ties;                 // entries at the top level
    size_t next;                 // index of the next entry strictly below
  };
  std::vector<Column> cols(nv);
  double objective = 0;
  for (size_t v = 0; v < nv; ++v) {
    auto& c = cols[v];
    c.sorted.resize(nx);
    for (size_t x = 0; x < nx; ++x) c.sorted[x] = joint[x * nv + v];
    std::sort(c.sorted.begin(), c.sorted.end(), std::greater<>());
    c.level = c.sorted[0];
    c.ties = 1;
    while (c.ties < nx && c.sorted[c.ties] == c.level) ++c.ties;
    c.next = c.ties;
    objective += c.level;
  }

  double budget = 2.0 * eps;
  while (budget > 1e-15) {
    size_t pick = nv;
    for (size_t v = 0; v < nv; ++v) {
      if (cols[v].level <= 0) continue;
      if (pick == nv || cols[v].ties < cols[pick].ties) pick = v;
    }
    if (pick == nv) break;  // everything melted to zero
    auto& c = cols[pick];
    const double floor_level = c.next < c.sorted.size() ? c.sorted[c.next] : 0.0;
    const double step = c.level - floor_level;
    const double cost = step * static_cast<double>(c.ties);
    if (cost <= budget) {
      budget -= cost;
      objective -= step;
      c.level = floor_level;
      while (c.next < c.sorted.size() && c.sorted[c.next] == c.level) {
        ++c.ties;
        ++c.next;
      }
    } else {
      const double delta = budget / static_cast<double>(c.ties);
      objective -= delta;
      c.level -= delta;
      budget = 0;
    }
  }
  if (objective <= 1e-15) return std::numeric_limits<double>::infinity();
  return -std::log2(objective);
}

InequalityCheck check_conditioned_degradation(const CctState& state, const ClassicalChannel& channel,
                                  double eps_prime) {
  if (channel.in != state.nq()) throw ArgumentError("conditioned degradation check: channel input != nq");
  if (!(eps_prime > 0.0 && eps_prime <= 1.0))
    throw ArgumentError("conditioned degradation check: eps_prime must be in (0, 1]");
  if (state.nx() * state.nt() * state.nq() > (size_t{1} << 20))
    throw FeasibilityError("instance size", "|X| |T| |Q| exceeds 2^20");

  // Hmin(X|T) on the (x, t) marginal.
  double guess_t = 0;
  for (size_t t = 0; t < state.nt(); ++t) {
    double mx = 0;
    for (size_t x = 0; x < state.nx(); ++x) {
      double v = 0;
      for (size_t q = 0; q < state.nq(); ++q) v += state.at(x, t, q);
      mx = std::max(mx, v);
    }
    guess_t += mx;
  }
  const double hmin_xt = -std::log2(guess_t);
  const auto k =
      static_cast<int64_t>(std::floor(hmin_xt - std::log2(1.0 / eps_prime) + 1e-9));
  const double rhs = -std::log2(classical_p_succ(channel, k));

  // lhs: Hmin^{eps'}(X | T, F(Q)), exactly.
  const size_t nv = state.nt() * channel.out;
  std::vector<double> joint(state.nx() * nv, 0.0);
  for (size_t x = 0; x < state.nx(); ++x)
    for (size_t t = 0; t < state.nt(); ++t)
      for (size_t q = 0; q < state.nq(); ++q)
        for (size_t o = 0; o < channel.out; ++o)
          joint[x * nv + t * channel.out + o] += state.at(x, t, q) * channel.at(q, o);
  const double lhs = smooth_hmin_classical(state.nx(), nv, joint, eps_prime);

  InequalityCheck out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.slack = lhs - rhs;
  out.holds = out.slack >= -1e-9;
  return out;
}

double conditioning_identity_gap(const CctState& state) {
  // Route one: joint maximization over (t, q) columns.
  double direct = 0;
  for (size_t t = 0; t < state.nt(); ++t)
    for (size_t q = 0; q < state.nq(); ++q) {
      double mx = 0;
      for (size_t x = 0; x < state.nx(); ++x) mx = std::max(mx, state.at(x, t, q));
      direct += mx;
    }
  const double route_a = -std::log2(direct);

  // Route two: -log E_t[2^{-Hmin(X|Q, T=t)}].
  double expectation = 0;
  for (size_t t = 0; t < state.nt(); ++t) {
    double pt = 0;
    for (size_t x = 0; x < state.nx(); ++x)
      for (size_t q = 0; q < state.nq(); ++q) pt += state.at(x, t, q);
    if (pt <= 0) continue;
    double guess_cond = 0;
    for (size_t q = 0; q < state.nq(); ++q) {
      double mx = 0;
      for (size_t x = 0; x < state.nx(); ++x) mx = std::max(mx, state.at(x, t, q) / pt);
      guess_cond += mx;
    }
    expectation += pt * std::exp2(-(-std::log2(guess_cond)));
  }
  const double route_b = -std::log2(expectation);
  return std::abs(route_a - route_b);
}

double post_measurement_pguess(double polar, double azimuth) {
  using cd = std::complex<double>;
  const double ch = std::cos(polar / 2.0), sh = std::sin(polar / 2.0);
  const cd phase = std::polar(1.0, azimuth);
  const cd v[2][2] = {{ch, phase * sh}, {sh, -phase * ch}};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // BB84 states H^theta |x>, real amplitudes.
  const double psi[2][2][2] = {{{1, 0}, {0, 1}},
                               {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}}};
  double total = 0;
  for (int k = 0; k < 2; ++k) {
    for (int theta = 0; theta < 2; ++theta) {
      double mx = 0;
      for (int x = 0; x < 2; ++x) {
        const cd amp = std::conj(v[k][0]) * psi[theta][x][0] + std::conj(v[k][1]) * psi[theta][x][1];
        mx = std::max(mx, std::norm(amp));
      }
      total += mx;
    }
  }
  return total / 4.0;
}

UncertaintyScan uncertainty_scan(size_t resolution) {
  if (resolution < 100) throw ArgumentError("uncertainty_scan: resolution must be >= 100");
  UncertaintyScan best;
  const double pi = std::acos(-1.0);
  for (size_t i = 0; i <= resolution; ++i) {
    const double polar = pi * static_cast<double>(i) / static_cast<double>(resolution);
    for (size_t j = 0; j < 2 * resolution; ++j) {
      const double azimuth = pi * static_cast<double>(j) / static_cast<double>(resolution);
      const double v = post_measurement_pguess(polar, azimuth);
      if (v > best.max_pguess) best = {v, polar, azimuth};
    }
  }
  // Local refinement around the grid optimum.
  double window = pi / static_cast<double>(resolution);
  for (int round = 0; round < 4; ++round) {
    UncertaintyScan local = best;
    for (int a = -10; a <= 10; ++a) {
      for (int b = -10; b <= 10; ++b) {
        const double polar = best.polar + window * a / 10.0;
        const double azimuth = best.azimuth + window * b / 10.0;
        const double v = post_measurement_pguess(polar, azimuth);
        if (v > local.max_pguess) local = {v, polar, azimuth};
      }
    }
    best = local;
    window /= 5.0;
  }
  return best;
}

namespace {

// Exact-knowledge mask of a noisy-storage receiver after the bases are
// revealed: stored qubits survive with probability r, the rest were measured
// in random bases and are known when the basis happened to match.
std::vector<char> knowledge_mask(size_t n, double r, double nu, Rng& rng) {
  const size_t stored = std::min(n, static_cast<size_t>(nu * static_cast<double>(n) + 1e-9));
  std::vector<char> known(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (i < stored)
      known[i] = rng.unit() < r;
    else
      known[i] = rng.bit();
  }
  return known;
}

// Binary parity rows of a toy code recovered through the syndrome map.
std::vector<uint32_t> parity_row_masks(const BinaryCode& code) {
  const size_t n = code.n(), rows = n - code.k();
  std::vector<uint32_t> masks(rows, 0);
  for (size_t j = 0; j < n; ++j) {
    BitString unit(n);
    unit.set(j, true);
    const BitString col = code.syndrome(unit);
    for (size_t i = 0; i < rows; ++i)
      if (col.get(i)) masks[i] |= uint32_t{1} << j;
  }
  return masks;
}

// A string consistent with both the known positions and the syndrome; free
// positions are filled from the rng.
BitString consistent_completion(const BinaryCode& code, const std::vector<uint32_t>& h_rows,
                                const BitString& x, const std::vector<char>& known,
                                const BitString& w, Rng& rng) {
  const size_t n = code.n();
  std::vector<size_t> unknown;
  for (size_t i = 0; i < n; ++i)
    if (!known[i]) unknown.push_back(i);

  // System over the unknown positions: H_u * u = w + H_k * x_k.
  const size_t rows = h_rows.size();
  std::vector<uint64_t> sys(rows, 0);  // columns = unknown index, bit 63 = rhs
  for (size_t rix = 0; rix < rows; ++rix) {
    uint64_t row = 0;
    for (size_t c = 0; c < unknown.size(); ++c)
      if ((h_rows[rix] >> unknown[c]) & 1) row |= uint64_t{1} << c;
    bool rhs = w.get(rix);
    for (size_t i = 0; i < n; ++i)
      if (known[i] && x.get(i) && ((h_rows[rix] >> i) & 1)) rhs = !rhs;
    if (rhs) row |= uint64_t{1} << 63;
    sys[rix] = row;
  }
  const size_t ncols = unknown.size();
  std::vector<int> pivot_of_col(ncols, -1);
  size_t rank = 0;
  for (size_t c = 0; c < ncols && rank < rows; ++c) {
    size_t p = rank;
    while (p < rows && !((sys[p] >> c) & 1)) ++p;
    if (p == rows) continue;
    std::swap(sys[rank], sys[p]);
    for (size_t i = 0; i < rows; ++i)
      if (i != rank && ((sys[i] >> c) & 1)) sys[i] ^= sys[rank];
    pivot_of_col[c] = static_cast<int>(rank);
    ++rank;
  }

  BitString guess = x;  // known positions stay; unknowns overwritten below
  std::vector<char> val(ncols, 0);
  for (size_t c = 0; c < ncols; ++c)
    if (pivot_of_col[c] == -1) val[c] = rng.bit();
  for (size_t c = ncols; c-- > 0;) {
    const int rix = pivot_of_col[c];
    if (rix == -1) continue;
    bool v = (sys[static_cast<size_t>(rix)] >> 63) & 1;
    for (size_t c2 = c + 1; c2 < ncols; ++c2)
      if (((sys[static_cast<size_t>(rix)] >> c2) & 1) && val[c2]) v = !v;
    val[c] = v;
  }
  for (size_t c = 0; c < ncols; ++c) guess.set(unknown[c], val[c]);
  return guess;
}

AttackReport hiding_report(const std::string& name, size_t n, size_t trials, uint64_t hits,
                           double bound, const std::string& bound_source) {
  AttackReport rep;
  rep.strategy = name;
  rep.n = n;
  rep.trials = trials;
  rep.samples = trials;
  rep.successes = hits;
  rep.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  const WilsonInterval wi = wilson99(hits, trials);
  rep.ci_low = wi.low;
  rep.ci_high = wi.high;
  rep.expected = 0.5;  // blind guessing baseline
  rep.bound = bound;
  rep.bound_source = bound_source;
  rep.bound_vacuous = bound >= 1.0;
  return rep;
}

}  // namespace

AttackReport run_hiding_attack_commit(const BinaryCode& code, size_t ell, double r, double nu,
                                      size_t trials, uint64_t seed) {
  if (!code.is_toy())
    throw FeasibilityError("toy code required", "the completion attack solves the binary "
                                                "parity system");
  const size_t n = code.n();
  if (ell < 1 || ell > n) throw ArgumentError("run_hiding_attack_commit: ell out of range");
  const auto h_rows = parity_row_masks(code);

  uint64_t hits = 0;
  for (size_t trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::substream(seed, trial);
    const BitString x = BitString::random(n, rng);
    const auto known = knowledge_mask(n, r, nu, rng);
    const ToeplitzSeed seed_r = ToeplitzSeed::random(n, ell, rng);
    const BitString w = code.syndrome(x);
    const BitString commitment = ext(x, seed_r);
    const BitString guess_x = consistent_completion(code, h_rows, x, known, w, rng);
    hits += ext(guess_x, seed_r).get(0) == commitment.get(0);
  }

  // Hiding error bound 2 eps + eps' with eps' pinned by the code distance.
  double bound = 1.0;
  std::string source = "commitment hiding error 2 eps + eps'";
  try {
    const StorageSpec storage{ChannelModel::depolarizing(2, r), nu};
    const WseParams wse = wse_rate(storage, n, 0.01);
    bound = 2.0 * wse.eps + std::exp2(-static_cast<double>(code.dmin()) / 2.0);
  } catch (const FeasibilityError& e) {
    source += " (not covered: " + e.inequality() + ")";
  }
  return hiding_report("hiding:commit,r=" + fmt12(r) + ",nu=" + fmt12(nu), n, trials, hits,
                       bound, source);
}

AttackReport run_hiding_attack_frot(size_t n, size_t beta, double r, double nu, size_t trials,
                                    uint64_t seed) {
  if (beta == 0 || n % beta != 0)
    throw ArgumentError("run_hiding_attack_frot: n must be divisible by beta");
  const size_t m = n / beta;
  if (m % 4 != 0) throw ArgumentError("run_hiding_attack_frot: m must be divisible by 4");
  const size_t quarter = n / 4;
  const SubsetEncoding encoding(m);
  const size_t t = encoding.t();
  const size_t ell = std::max<size_t>(1, n / 8);

  uint64_t hits = 0;
  for (size_t trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::substream(seed, trial);
    const BitString x = BitString::random(n, rng);
    const auto known = knowledge_mask(n, r, nu, rng);

    // Bob plays the transfer protocol with his known set as the index set.
    std::vector<uint32_t> index_set;
    for (uint32_t i = 0; i < n; ++i)
      if (known[i]) index_set.push_back(i);
    std::vector<char> in_protocol(n, 0);
    if (index_set.size() >= quarter) {
      rng.shuffle(index_set);
      index_set.resize(quarter);
    } else {
      std::vector<uint32_t> rest;
      for (uint32_t i = 0; i < n; ++i)
        if (!known[i]) rest.push_back(i);
      rng.shuffle(rest);
      for (size_t i = 0; index_set.size() < quarter; ++i) index_set.push_back(rest[i]);
    }
    for (uint32_t i : index_set) in_protocol[i] = 1;

    // Row subset and permutation, as in the honest protocol.
    std::vector<uint32_t> rows_j;
    BitString w;
    for (;;) {
      std::vector<uint32_t> all(m);
      for (size_t i = 0; i < m; ++i) all[i] = static_cast<uint32_t>(i + 1);
      rng.shuffle(all);
      all.resize(m / 4);
      std::sort(all.begin(), all.end());
      if (auto w_opt = encoding.enc_inverse(all)) {
        rows_j = std::move(all);
        w = std::move(*w_opt);
        break;
      }
    }
    std::vector<char> row_in_j(m + 1, 0);
    for (uint32_t j : rows_j) row_in_j[j] = 1;
    std::vector<uint32_t> j_cells, other_cells;
    for (uint32_t cell = 0; cell < n; ++cell)
      (row_in_j[cell / beta + 1] ? j_cells : other_cells).push_back(cell);
    rng.shuffle(j_cells);
    rng.shuffle(other_cells);
    std::vector<uint32_t> perm(n);
    size_t ji = 0, oi = 0;
    for (uint32_t src = 0; src < n; ++src)
      perm[src] = in_protocol[src] ? j_cells[ji++] : other_cells[oi++];
    std::vector<uint32_t> inverse(n);
    for (uint32_t src = 0; src < n; ++src) inverse[perm[src]] = src;

    IhAlice ih_alice(t, rng);
    IhBob ih_bob(t, w);
    for (size_t round = 0; round + 1 < t; ++round)
      ih_alice.on_answer(ih_bob.answer(ih_alice.next_query()));
    const auto [w0, w1] = ih_alice.outputs();
    const int c = (w == w0) ? 0 : 1;
    const BitString& w_other = c == 0 ? w1 : w0;

    const ToeplitzSeed r_other = ToeplitzSeed::random(quarter, ell, rng);
    const auto gather = [&](const BitString& source, bool use_knowledge) {
      BitString out(quarter);
      size_t at = 0;
      for (uint32_t row : encoding.enc(w_other)) {
        for (size_t col = 0; col < beta; ++col) {
          const uint32_t src = inverse[(row - 1) * beta + col];
          const bool bit = (use_knowledge && !known[src]) ? rng.bit() : source.get(src);
          out.set(at++, bit);
        }
      }
      return out;
    };
    const BitString truth = ext(gather(x, false), r_other);
    const BitString guess = ext(gather(x, true), r_other);
    hits += truth.get(0) == guess.get(0);
  }

  double bound = 1.0;
  std::string source = "transfer hiding error 41*2^{-lambda^2 n/(512 omega^2 beta)} + 2 eps";
  try {
    const StorageSpec storage{ChannelModel::depolarizing(2, r), nu};
    const OtParams params = ot_params(storage, n, 0.01, 2.0, beta);
    bound = params.error;
  } catch (const std::exception&) {
    source += " (bound vacuous at this n)";
  }
  return hiding_report("hiding:frot,r=" + fmt12(r) + ",nu=" + fmt12(nu), n, trials, hits,
                       bound, source);
}

}  // namespace nsc
