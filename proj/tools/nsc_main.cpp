// Command-line front end: security parameters, trade-off curves, protocol
// runs, attack campaigns and an invariant smoke suite.
//
// Exit codes: 0 success, 2 infeasible parameter set, 1 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nsc/attacks.hpp"
#include "nsc/coding.hpp"
#include "nsc/errors.hpp"
#include "nsc/hashing.hpp"
#include "nsc/ihash.hpp"
#include "nsc/protocols.hpp"
#include "nsc/secparams.hpp"

using nlohmann::json;
using namespace nsc;

namespace {

// All numeric output is pinned to 12 significant digits for diffing.
double sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string hex_of(const BitString& b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (uint8_t byte : b.pack()) {
    s.push_back(digits[byte >> 4]);
    s.push_back(digits[byte & 0xF]);
  }
  return s;
}

uint64_t default_seed() {
  if (const char* env = std::getenv("NSC_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
}

struct StorageArgs {
  std::string model = "qubit-depol";
  double r = 0.5;
  size_t d = 2;
  double nu = 1.0;

  ChannelModel channel() const {
    if (model == "qubit-depol") return ChannelModel::depolarizing(2, r);
    if (model == "qutrit-depol") return ChannelModel::depolarizing(3, r);
    if (model == "depol") return ChannelModel::depolarizing(d, r);
    if (model == "two-pauli") return ChannelModel::two_pauli(r);
    if (model == "identity") return ChannelModel::identity(d);
    throw ArgumentError("unknown storage model: " + model);
  }
  StorageSpec storage() const { return StorageSpec{channel(), nu}; }

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model,
                    "storage channel: qubit-depol|qutrit-depol|depol|two-pauli|identity")
        ->capture_default_str();
    cmd->add_option("--r", r, "noise parameter in [0,1]")->capture_default_str();
    cmd->add_option("--dim", d, "qudit dimension (depol/identity)")->capture_default_str();
    cmd->add_option("--nu", nu, "storage rate")->capture_default_str();
  }
};

json wse_json(const WseParams& w) {
  return json{{"n", w.n},
              {"delta", sig12(w.delta)},
              {"lambda", sig12(w.lambda)},
              {"eps", sig12(w.eps)},
              {"asymptotic", w.asymptotic}};
}

json feasibility_json(const FeasibilityError& e) {
  return json{{"inequality", e.inequality()}, {"detail", e.what()}};
}

int cmd_params(const StorageArgs& sa, size_t n, double delta, double eps_prime, double omega,
               size_t beta, size_t gamma_samples, const std::string& out_path) {
  json out;
  const ChannelModel model = sa.channel();
  out["storage"] = {{"model", model.name()}, {"nu", sig12(sa.nu)}};
  if (model.kind != ChannelKind::Identity) out["storage"]["r"] = sig12(model.noise);
  out["storage"]["dim"] = model.dim;
  const double cap = capacity(model);
  out["capacity"] = sig12(cap);
  out["capacity_times_nu"] = sig12(cap * sa.nu);

  int exit_code = 0;
  try {
    const WseParams wse = wse_rate(sa.storage(), n, delta);
    out["feasible"] = true;
    out["wse"] = wse_json(wse);

    if (model.kind != ChannelKind::TwoPauli) {
      json samples = json::array();
      for (size_t i = 0; i < gamma_samples; ++i) {
        const double rate = cap + (log2d(model.dim) - cap) * double(i + 1) /
                                      double(gamma_samples + 1);
        const ConverseExponent ce = converse_exponent(model, rate);
        samples.push_back({{"rate", sig12(rate)},
                           {"gamma", sig12(ce.gamma)},
                           {"alpha", sig12(ce.argmax_alpha)}});
      }
      out["gamma_samples"] = samples;
    }

    try {
      const BcParams bc = bc_params(sa.storage(), n, delta, eps_prime);
      out["bc"] = {{"ell", bc.ell},       {"error", sig12(bc.error)},
                   {"dmin", bc.dmin},     {"code_m", bc.code_m},
                   {"k", bc.k},           {"eps_prime", sig12(bc.eps_prime)},
                   {"margin", sig12(bc.margin)}};
    } catch (const FeasibilityError& e) {
      out["bc"] = {{"infeasible", feasibility_json(e)}};
    }

    try {
      const OtParams ot = ot_params(sa.storage(), n, delta, omega, beta);
      out["ot"] = {{"ell", ot.ell},
                   {"error", sig12(ot.error)},
                   {"m", ot.m},
                   {"beta", ot.beta},
                   {"t", ot.t},
                   {"s", ot.s},
                   {"kappa", sig12(ot.kappa)},
                   {"delta_sampler", sig12(ot.delta_sampler)}};
    } catch (const FeasibilityError& e) {
      out["ot"] = {{"infeasible", feasibility_json(e)}};
    } catch (const ArgumentError& e) {
      out["ot"] = {{"infeasible", {{"inequality", "divisibility"}, {"detail", e.what()}}}};
    }
  } catch (const FeasibilityError& e) {
    out["feasible"] = false;
    out["reason"] = feasibility_json(e);
    exit_code = 2;
  }
  write_file(out_path, out.dump(2) + "\n");
  return exit_code;
}

int cmd_curves(size_t points, double nu_max, const std::string& dir, bool also_json) {
  std::vector<double> grid;
  for (size_t i = 1; i <= points; ++i) grid.push_back(nu_max * double(i) / double(points));

  std::vector<CurvePoint> region;
  for (ModelFamily fam : {ModelFamily::QubitDepolarizing, ModelFamily::QutritDepolarizing,
                          ModelFamily::TwoPauli}) {
    const auto pts = security_region(fam, grid);
    region.insert(region.end(), pts.begin(), pts.end());
  }
  write_file(dir + "/security_region.csv", curve_to_csv(region));
  write_file(dir + "/bsm_comparison.csv", curve_to_csv(bsm_comparison_curve(grid)));
  if (also_json) {
    write_file(dir + "/security_region.json", curve_to_json(region));
    write_file(dir + "/bsm_comparison.json", curve_to_json(bsm_comparison_curve(grid)));
  }

  // min-entropy rate against noise at nu = 1, delta = 0.01
  std::string lambda_csv = "r,lambda,source\n";
  for (ModelFamily fam : {ModelFamily::QubitDepolarizing, ModelFamily::QutritDepolarizing}) {
    for (size_t i = 0; i < points; ++i) {
      const double r = double(i) / double(points);
      try {
        const WseParams w = wse_rate(StorageSpec{family_model(fam, r), 1.0}, 1000000, 0.01);
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%s\n", r, w.lambda,
                      family_name(fam).c_str());
        lambda_csv += buf;
      } catch (const FeasibilityError&) {
        break;  // capacity crossed 1/2 - delta: the curve ends here
      }
    }
  }
  write_file(dir + "/lambda_vs_r.csv", lambda_csv);
  std::cerr << "wrote security_region.csv, bsm_comparison.csv, lambda_vs_r.csv\n";
  return 0;
}

json transcript_meta(const std::string& protocol, uint64_t seed, size_t n) {
  return json{{"protocol", protocol}, {"seed", seed}, {"n", n}};
}

int cmd_run(const std::string& protocol, const StorageArgs& sa, size_t n, size_t beta,
            size_t ell, double delta, double eps_prime, double omega, bool toy,
            uint64_t seed, const std::string& transcript_path, const std::string& out_path) {
  Transport transport;
  Rng alice(seed), bob(seed + 0x9E3779B97F4A7C15ULL);
  json outcome = transcript_meta(protocol, seed, n);

  if (protocol == "wse") {
    const WseOutcome wse = wse_run(n, transport, alice, bob);
    outcome["alice_x"] = hex_of(wse.x);
    outcome["bob_index_set"] = wse.index_set;
    outcome["bob_substring"] = hex_of(wse.x_substring);
  } else if (protocol == "commit") {
    BinaryCode code = BinaryCode::toy("rs3_2");
    size_t use_ell = ell ? ell : 4;
    if (toy) {
      n = code.n();
    } else {
      const BcParams bc = bc_params(sa.storage(), n, delta, eps_prime);
      code = BinaryCode::rs_for_length(bc.code_m, bc.dmin, n);
      use_ell = bc.ell;
      outcome["bc"] = {{"ell", bc.ell}, {"error", sig12(bc.error)}};
    }
    outcome["n"] = n;
    const WseOutcome wse = wse_run(n, transport, alice, bob);
    const CommitRecord rec = commit_run(wse, code, use_ell, transport, alice);
    const OpenResult open = open_run(rec, rec.alice_x, transport);
    outcome["commitment"] = hex_of(rec.commitment);
    outcome["accept"] = open.accept;
    outcome["c_tilde"] = hex_of(open.c_tilde);
    outcome["code"] = json::parse(code.descriptor_json());
    outcome["toy"] = toy;
  } else if (protocol == "ot") {
    FrotConfig cfg;
    cfg.n = n;
    cfg.beta = beta;
    cfg.omega = omega;
    cfg.delta = delta;
    cfg.storage = sa.storage();
    cfg.toy_mode = toy;
    cfg.ell_override = ell;
    const FrotOutcome frot = frot_run(cfg, transport, alice, bob);
    outcome["s0"] = hex_of(frot.s0);
    outcome["s1"] = hex_of(frot.s1);
    outcome["c"] = frot.c;
    outcome["y"] = hex_of(frot.y);
    outcome["ell"] = frot.ell;
    outcome["delivered"] = frot.y == (frot.c == 0 ? frot.s0 : frot.s1);
    outcome["padded"] = frot.padded;
    outcome["covered_by_bound"] = frot.covered_by_bound;
    if (frot.params) outcome["ot_error"] = sig12(frot.params->error);
  } else {
    throw ArgumentError("unknown protocol: " + protocol);
  }

  if (!transcript_path.empty()) write_file(transcript_path, transport.transcript_json());
  write_file(out_path, outcome.dump(2) + "\n");
  return 0;
}

int cmd_attack(const std::string& kind, const std::string& strategy, const StorageArgs& sa,
               size_t n, size_t beta, size_t q, size_t dist, size_t ell,
               const std::string& code_name, size_t trials, uint64_t seed,
               const std::string& out_path) {
  json out;
  if (kind == "wse") {
    AttackStrategy strat = AttackStrategy::measure_now(MeasureBasis::Breidbart);
    if (strategy == "breidbart")
      strat = AttackStrategy::measure_now(MeasureBasis::Breidbart);
    else if (strategy == "computational")
      strat = AttackStrategy::measure_now(MeasureBasis::Computational);
    else if (strategy == "hadamard")
      strat = AttackStrategy::measure_now(MeasureBasis::Hadamard);
    else if (strategy == "random")
      strat = AttackStrategy::measure_now(MeasureBasis::Random);
    else if (strategy == "noisy")
      strat = AttackStrategy::noisy_store(sa.r, sa.nu);
    else if (strategy == "bounded")
      strat = AttackStrategy::bounded_store(q);
    else
      throw ArgumentError("unknown strategy: " + strategy);
    const WseAttackOutcome rep = run_wse_attack(strat, n, trials, seed);
    out["per_bit"] = json::parse(rep.per_bit.to_json());
    out["whole_string"] = json::parse(rep.whole_string.to_json());
  } else if (kind == "binding") {
    const BinaryCode code = BinaryCode::toy(code_name);
    out = json::parse(run_binding_attack(code, dist, trials, seed).to_json());
  } else if (kind == "hiding") {
    AttackReport rep;
    if (strategy == "ot")
      rep = run_hiding_attack_frot(n, beta, sa.r, sa.nu, trials, seed);
    else
      rep = run_hiding_attack_commit(BinaryCode::toy(code_name), ell ? ell : 4, sa.r, sa.nu,
                                     trials, seed);
    out = json::parse(rep.to_json());
    out["advantage"] = sig12(std::max(0.0, 2.0 * out["estimate"].get<double>() - 1.0));
  } else {
    throw ArgumentError("unknown attack kind: " + kind);
  }
  write_file(out_path, out.dump(2) + "\n");
  return 0;
}

int cmd_verify() {
  size_t failed = 0;
  const auto report = [&](bool ok, const std::string& name) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failed;
  };

  {
    const double qubit = security_region(ModelFamily::QubitDepolarizing, {1.0})[0].r_threshold;
    const double qutrit =
        security_region(ModelFamily::QutritDepolarizing, {1.0})[0].r_threshold;
    report(qubit > 0.76 && qubit < 0.79 && qutrit > 0.60 && qutrit < 0.62,
           "noise thresholds at nu = 1");
    report(std::abs(max_storage_rate(ChannelModel::identity(2)) - 0.5) < 1e-6,
           "bounded-storage boundary");
  }
  {
    bool ok = true;
    for (int i = 1; i <= 20; ++i) {
      const double nu = i / 20.0;
      ok = ok && bsm_comparison_curve({nu})[0].r_threshold <=
                     security_region(ModelFamily::QubitDepolarizing, {nu})[0].r_threshold + 1e-12;
    }
    report(ok, "dimension-argument curve dominated");
  }
  {
    const UncertaintyScan scan = uncertainty_scan(100);
    report(std::abs(scan.max_pguess - 0.853553) < 5e-4, "uncertainty constant");
  }
  {
    bool ok = true;
    const size_t nn = 6, ll = 3, seed_bits = nn + ll - 1;
    for (uint64_t z = 1; z < (uint64_t{1} << nn) && ok; ++z) {
      size_t clashes = 0;
      for (uint64_t sv = 0; sv < (uint64_t{1} << seed_bits); ++sv) {
        const ToeplitzSeed seed =
            ToeplitzSeed::from_bits(BitString::from_u64(sv, seed_bits), nn, ll);
        if (!ext(BitString::from_u64(z, nn), seed).any()) ++clashes;
      }
      ok = double(clashes) / std::exp2(double(seed_bits)) <= std::exp2(-double(ll)) + 1e-12;
    }
    report(ok, "2-universal hashing (n=6, ell=3, all seeds)");
  }
  {
    bool ok = true;
    Rng rng(1);
    for (size_t t = 1; t <= 8 && ok; ++t) {
      for (uint64_t wv = 0; wv < (uint64_t{1} << t) && ok; ++wv) {
        IhAlice alice(t, rng);
        IhBob bob(t, BitString::from_u64(wv, t));
        while (!alice.done()) alice.on_answer(bob.answer(alice.next_query()));
        const auto [w0, w1] = alice.outputs();
        const BitString w = BitString::from_u64(wv, t);
        ok = w0 != w1 && (w == w0 || w == w1);
      }
    }
    report(ok, "interactive hashing exhaustive (t <= 8)");
  }
  {
    Rng rng(2);
    bool ok = true;
    for (int it = 0; it < 500 && ok; ++it) {
      const size_t nx = 2 + rng.below(3), nq = 2 + rng.below(3);
      std::vector<double> p(nx * nq);
      double sum = 0;
      for (auto& v : p) {
        v = -std::log(1.0 - rng.unit());
        sum += v;
      }
      for (auto& v : p) v /= sum;
      ok = check_storage_degradation(CcState(nx, nq, p),
                                  ClassicalChannel::random(nq, 2 + rng.below(3), rng))
               .holds;
    }
    for (int it = 0; it < 500 && ok; ++it) {
      const CctState s = CctState::random(2 + rng.below(3), 1 + rng.below(3), 2 + rng.below(3), rng);
      ok = check_conditioned_degradation(s, ClassicalChannel::random(s.nq(), 2 + rng.below(3), rng),
                                  0.25)
               .holds &&
           conditioning_identity_gap(s) < 1e-12;
    }
    report(ok, "entropy inequality oracles (500 random instances)");
  }
  {
    const BinaryCode code = BinaryCode::toy("rs3_2");
    bool ok = true;
    for (uint64_t it = 0; it < 100 && ok; ++it) {
      Transport t;
      Rng wa = Rng::substream(3, 2 * it), wb = Rng::substream(3, 2 * it + 1), ar(4 + it);
      const WseOutcome wse = wse_run(code.n(), t, wa, wb);
      const CommitRecord rec = commit_run(wse, code, 4, t, ar);
      const OpenResult open = open_run(rec, rec.alice_x, t);
      ok = open.accept && open.c_tilde == rec.commitment;
    }
    report(ok, "commit/open completeness (100 runs)");
  }
  {
    bool ok = true;
    FrotConfig cfg;
    cfg.n = 32;
    cfg.beta = 4;
    cfg.toy_mode = true;
    cfg.ell_override = 4;
    for (uint64_t it = 0; it < 100 && ok; ++it) {
      Transport t;
      Rng a = Rng::substream(5, 2 * it), b = Rng::substream(5, 2 * it + 1);
      const FrotOutcome out = frot_run(cfg, t, a, b);
      if (!out.padded) ok = out.y == (out.c == 0 ? out.s0 : out.s1);
    }
    report(ok, "oblivious transfer completeness (100 toy runs)");
  }
  {
    bool ok = true;
    Transport probe;
    Rng pa(6), pb(7);
    (void)wse_run(8, probe, pa, pb);
    for (long k = 0; k < probe.sends() && ok; ++k) {
      Transport t;
      t.arm_drop(k);
      Rng a(6), b(7);
      ok = wse_run(8, t, a, b).x.size() == 8;
    }
    report(ok, "abort rule: dropped messages substitute defaults");
  }
  {
    std::string t1, t2;
    for (int rep = 0; rep < 2; ++rep) {
      Transport t;
      Rng a(8), b(9);
      (void)wse_run(16, t, a, b);
      (rep == 0 ? t1 : t2) = t.transcript_json();
    }
    report(t1 == t2, "transcript replay determinism");
  }

  if (failed) {
    std::cout << failed << " check(s) failed\n";
    return 1;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisy-storage cryptography toolkit"};
  app.require_subcommand(1);

  uint64_t seed = default_seed();
  app.add_option("--seed", seed, "master seed (or NSC_SEED)");

  // params
  StorageArgs params_sa;
  size_t params_n = 1000000, params_beta = 8448, params_gamma = 9;
  double params_delta = 0.01, params_eps_prime = 1e-6, params_omega = 2.0;
  std::string params_out = "-";
  CLI::App* params = app.add_subcommand("params", "security parameters for a storage model");
  params_sa.attach(params);
  params->add_option("--n", params_n, "protocol qubits")->capture_default_str();
  params->add_option("--delta", params_delta, "rate slack")->capture_default_str();
  params->add_option("--eps-prime", params_eps_prime, "commitment knob")->capture_default_str();
  params->add_option("--omega", params_omega, "sampling constant (>= 2)")->capture_default_str();
  params->add_option("--beta", params_beta, "transfer block width")->capture_default_str();
  params->add_option("--gamma-samples", params_gamma, "exponent curve samples")
      ->capture_default_str();
  params->add_option("--out", params_out, "output file (- for stdout)")->capture_default_str();

  // curves
  size_t curves_points = 200;
  double curves_nu_max = 4.0;
  std::string curves_dir = ".";
  bool curves_json = false;
  CLI::App* curves = app.add_subcommand("curves", "emit the trade-off curves as CSV");
  curves->add_option("--points", curves_points, "grid points")->capture_default_str();
  curves->add_option("--nu-max", curves_nu_max, "largest storage rate")->capture_default_str();
  curves->add_option("--out-dir", curves_dir, "output directory")->capture_default_str();
  curves->add_flag("--json", curves_json, "also write JSON curve files");

  // run
  StorageArgs run_sa;
  std::string run_protocol, run_transcript, run_out = "-";
  size_t run_n = 32, run_beta = 4, run_ell = 0;
  double run_delta = 0.01, run_eps_prime = 1e-6, run_omega = 2.0;
  bool run_toy = false;
  CLI::App* run = app.add_subcommand("run", "execute a protocol end to end");
  run->add_option("protocol", run_protocol, "wse|commit|ot")->required();
  run_sa.attach(run);
  run->add_option("--n", run_n, "protocol qubits")->capture_default_str();
  run->add_option("--beta", run_beta, "transfer block width")->capture_default_str();
  run->add_option("--ell", run_ell, "output string length (toy override)");
  run->add_option("--delta", run_delta, "rate slack")->capture_default_str();
  run->add_option("--eps-prime", run_eps_prime, "commitment knob")->capture_default_str();
  run->add_option("--omega", run_omega, "sampling constant")->capture_default_str();
  run->add_flag("--toy", run_toy, "toy mode: no security accounting");
  run->add_option("--transcript", run_transcript, "write the message transcript here");
  run->add_option("--out", run_out, "outcome file (- for stdout)")->capture_default_str();

  // attack
  StorageArgs attack_sa;
  std::string attack_kind, attack_strategy = "breidbart", attack_code = "rs3_2",
              attack_out = "-";
  size_t attack_n = 1000, attack_beta = 4, attack_q = 0, attack_dist = 8, attack_ell = 0,
         attack_trials = 100000;
  CLI::App* attack = app.add_subcommand("attack", "Monte Carlo adversary campaigns");
  attack->add_option("kind", attack_kind, "wse|binding|hiding")->required();
  attack_sa.attach(attack);
  attack->add_option("--strategy", attack_strategy,
                     "wse: breidbart|computational|hadamard|random|noisy|bounded; "
                     "hiding: commit|ot")
      ->capture_default_str();
  attack->add_option("--n", attack_n, "protocol qubits")->capture_default_str();
  attack->add_option("--beta", attack_beta, "transfer block width")->capture_default_str();
  attack->add_option("--q", attack_q, "stored qubits (bounded)")->capture_default_str();
  attack->add_option("--dist", attack_dist, "forced opening distance")->capture_default_str();
  attack->add_option("--ell", attack_ell, "commitment length");
  attack->add_option("--code", attack_code, "toy code name")->capture_default_str();
  attack->add_option("--trials", attack_trials, "Monte Carlo trials")->capture_default_str();
  attack->add_option("--out", attack_out, "output file (- for stdout)")->capture_default_str();

  // verify
  app.add_subcommand("verify", "run the invariant smoke suite");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  try {
    if (params->parsed())
      return cmd_params(params_sa, params_n, params_delta, params_eps_prime, params_omega,
                        params_beta, params_gamma, params_out);
    if (curves->parsed())
      return cmd_curves(curves_points, curves_nu_max, curves_dir, curves_json);
    if (run->parsed())
      return cmd_run(run_protocol, run_sa, run_n, run_beta, run_ell, run_delta, run_eps_prime,
                     run_omega, run_toy, seed, run_transcript, run_out);
    if (attack->parsed())
      return cmd_attack(attack_kind, attack_strategy, attack_sa, attack_n, attack_beta,
                        attack_q, attack_dist, attack_ell, attack_code, attack_trials, seed,
                        attack_out);
    return cmd_verify();
  } catch (const FeasibilityError& e) {
    json err{{"error", "infeasible"}, {"reason", feasibility_json(e)}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err{{"error", "internal"}, {"detail", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
}
