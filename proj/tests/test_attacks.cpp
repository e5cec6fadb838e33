#include "doctest.h"

#include <cmath>

#include "nsc/attacks.hpp"
#include "nsc/errors.hpp"

using namespace nsc;

TEST_CASE("wilson interval brackets the estimate and shrinks with samples") {
  const WilsonInterval a = wilson99(500, 1000);
  CHECK(a.low < 0.5);
  CHECK(a.high > 0.5);
  const WilsonInterval b = wilson99(50000, 100000);
  CHECK(b.high - b.low < a.high - a.low);
}

TEST_CASE("measure-now attacks hit their exact per-bit rates") {
  const size_t n = 64, trials = 20000;  // 1.28e6 bit samples
  const auto breidbart =
      run_wse_attack(AttackStrategy::measure_now(MeasureBasis::Breidbart), n, trials, 1);
  CHECK(breidbart.per_bit.expected == doctest::Approx(0.853553).epsilon(1e-4));
  CHECK(breidbart.per_bit.estimate > 0.848);
  CHECK(breidbart.per_bit.estimate < 0.859);

  const auto random =
      run_wse_attack(AttackStrategy::measure_now(MeasureBasis::Random), n, trials, 2);
  CHECK(random.per_bit.expected == doctest::Approx(0.75));
  CHECK(random.per_bit.estimate > 0.744);
  CHECK(random.per_bit.estimate < 0.756);

  const auto comp =
      run_wse_attack(AttackStrategy::measure_now(MeasureBasis::Computational), n, trials, 3);
  CHECK(comp.per_bit.expected == doctest::Approx(0.75));

  // ordering outside overlapping CIs
  CHECK(breidbart.per_bit.ci_low > random.per_bit.ci_high);
  CHECK(random.per_bit.ci_low > 0.5);
}

TEST_CASE("noisy storage: perfect storage wins, success is monotone in r") {
  const auto perfect = run_wse_attack(AttackStrategy::noisy_store(1.0, 1.0), 32, 2000, 4);
  CHECK(perfect.whole_string.estimate == doctest::Approx(1.0));
  CHECK(perfect.per_bit.estimate == doctest::Approx(1.0));

  double prev = -1;
  for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto rep = run_wse_attack(AttackStrategy::noisy_store(r, 1.0), 64, 20000, 5);
    CHECK(rep.per_bit.expected == doctest::Approx(r + (1.0 - r) / 2.0));
    CHECK(rep.per_bit.estimate > prev);
    prev = rep.per_bit.estimate;
  }
}

TEST_CASE("bounded storage endpoints") {
  const auto all = run_wse_attack(AttackStrategy::bounded_store(16), 16, 2000, 6);
  CHECK(all.whole_string.estimate == doctest::Approx(1.0));
  const auto none = run_wse_attack(AttackStrategy::bounded_store(0), 64, 10000, 7);
  CHECK(none.per_bit.expected == doctest::Approx(0.75));
  CHECK(none.per_bit.estimate > 0.74);
  CHECK(none.per_bit.estimate < 0.76);
}

TEST_CASE("whole-string bound reporting: vacuous at toy n, tagged otherwise") {
  const auto toy = run_wse_attack(AttackStrategy::noisy_store(0.5, 1.0), 16, 100, 8);
  CHECK(toy.whole_string.bound_vacuous);  // eps(0.01, 16) is ~2
  const auto insecure = run_wse_attack(AttackStrategy::noisy_store(1.0, 1.0), 16, 100, 9);
  CHECK(insecure.whole_string.bound_vacuous);
  CHECK(insecure.whole_string.bound_source.find("not covered") != std::string::npos);
}

TEST_CASE("binding attack: dist 0 always accepted; dist j tracks 2^-j") {
  const BinaryCode code = BinaryCode::toy("rs3_2");
  const auto zero = run_binding_attack(code, 0, 500, 10);
  CHECK(zero.estimate == doctest::Approx(1.0));

  const auto four = run_binding_attack(code, 4, 200000, 11);
  CHECK(four.expected == doctest::Approx(std::exp2(-4.0)));
  CHECK(four.ci_low <= four.expected);
  CHECK(four.ci_high >= four.expected);
  CHECK(four.estimate <= four.bound);  // 2^{-d/2} envelope with d = 2

  CHECK_THROWS_AS(run_binding_attack(BinaryCode::rs(4, 5), 4, 10, 12), FeasibilityError);
  CHECK_THROWS_AS(run_binding_attack(code, 1, 10, 13), ArgumentError);  // no weight-1 codeword
}

TEST_CASE("min_entropy_exact examples") {
  CcState copy(2, 2, {0.5, 0.0, 0.0, 0.5});
  CHECK(min_entropy_exact(copy) == doctest::Approx(0.0));
  CcState indep(4, 1, {0.25, 0.25, 0.25, 0.25});
  CHECK(min_entropy_exact(indep) == doctest::Approx(2.0));
  CcState example(2, 2, {0.4, 0.1, 0.1, 0.4});
  CHECK(min_entropy_exact(example) == doctest::Approx(-std::log2(0.8)).epsilon(1e-12));
}

TEST_CASE("classical p_succ: identity and constant channels") {
  CHECK(classical_p_succ(ClassicalChannel::identity(4), 2) == doctest::Approx(1.0));
  CHECK(classical_p_succ(ClassicalChannel::identity(2), 2) == doctest::Approx(0.5));
  CHECK(classical_p_succ(ClassicalChannel::constant(3, 2), 2) == doctest::Approx(0.25));
  CHECK(classical_p_succ(ClassicalChannel::constant(3, 2), 0) == doctest::Approx(1.0));
}

TEST_CASE("storage-degradation inequality: identity and constant channel cases") {
  // identity channel: equality is possible
  CcState copy(2, 2, {0.5, 0.0, 0.0, 0.5});
  const InequalityCheck idc = check_storage_degradation(copy, ClassicalChannel::identity(2));
  CHECK(idc.holds);
  CHECK(idc.lhs == doctest::Approx(idc.rhs).epsilon(1e-9));

  // constant channel, uniform X on {0,1}^2: both sides equal 2
  CcState uni(4, 2, {0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125});
  const InequalityCheck cc = check_storage_degradation(uni, ClassicalChannel::constant(2, 2));
  CHECK(cc.holds);
  CHECK(cc.lhs == doctest::Approx(2.0));
  CHECK(cc.rhs == doctest::Approx(2.0));
}

TEST_CASE("storage-degradation inequality holds on 1000 random instances") {
  Rng rng(50);
  for (int it = 0; it < 1000; ++it) {
    const size_t nx = 2 + rng.below(3);
    const size_t nq = 2 + rng.below(3);
    const size_t nout = 2 + rng.below(3);
    std::vector<double> p(nx * nq);
    double sum = 0;
    for (auto& v : p) {
      v = -std::log(1.0 - rng.unit());
      sum += v;
    }
    for (auto& v : p) v /= sum;
    const CcState state(nx, nq, p);
    const ClassicalChannel channel = ClassicalChannel::random(nq, nout, rng);
    const InequalityCheck chk = check_storage_degradation(state, channel);
    if (!chk.holds) {
      FAIL("violation at iteration " << it << " slack " << chk.slack);
    }
  }
}

TEST_CASE("conditioned degradation inequality: trivial T reduces to the base case") {
  Rng rng(51);
  // T of size 1 carries nothing
  CctState s = CctState::random(3, 1, 3, rng);
  const ClassicalChannel channel = ClassicalChannel::random(3, 3, rng);
  const InequalityCheck chk = check_conditioned_degradation(s, channel, 1.0);
  CHECK(chk.holds);
}

TEST_CASE("conditioned degradation inequality on 1000 random instances") {
  Rng rng(52);
  for (int it = 0; it < 1000; ++it) {
    const size_t nx = 2 + rng.below(3);
    const size_t nt = 1 + rng.below(3);
    const size_t nq = 2 + rng.below(3);
    const CctState s = CctState::random(nx, nt, nq, rng);
    const ClassicalChannel channel = ClassicalChannel::random(nq, 2 + rng.below(3), rng);
    const double eps_prime = it % 3 == 0 ? 1.0 : 0.1 + 0.8 * rng.unit();
    const InequalityCheck chk = check_conditioned_degradation(s, channel, eps_prime);
    if (!chk.holds) {
      FAIL("violation at iteration " << it << " slack " << chk.slack);
    }
  }
}

TEST_CASE("smooth min-entropy: melting budget lifts the entropy, eps = 1 is infinite") {
  // single column (0.5, 0.3, 0.2): plain Hmin = 1
  const std::vector<double> joint = {0.5, 0.3, 0.2};
  CHECK(smooth_hmin_classical(3, 1, joint, 0.0) == doctest::Approx(1.0));
  // budget 2*0.05 melts the 0.5 down to 0.4: Hmin = -log2(0.4)
  CHECK(smooth_hmin_classical(3, 1, joint, 0.05) == doctest::Approx(-std::log2(0.4)).epsilon(1e-12));
  // budget takes the top two down together after they tie
  CHECK(smooth_hmin_classical(3, 1, joint, 0.15) ==
        doctest::Approx(-std::log2(0.25)).epsilon(1e-12));
  CHECK(std::isinf(smooth_hmin_classical(3, 1, joint, 1.0)));
}

TEST_CASE("conditioning identity holds to 1e-12") {
  Rng rng(53);
  for (int it = 0; it < 2000; ++it) {
    const CctState s = CctState::random(2 + rng.below(3), 2 + rng.below(3), 2 + rng.below(3), rng);
    CHECK(conditioning_identity_gap(s) < 1e-12);
  }
}

TEST_CASE("uncertainty scan finds the intermediate-basis optimum") {
  const double target = 0.5 + 0.5 / std::sqrt(2.0);
  // the named measurement angles first
  CHECK(post_measurement_pguess(std::acos(-1.0) / 4.0, 0.0) ==
        doctest::Approx(target).epsilon(1e-12));
  CHECK(post_measurement_pguess(0.0, 0.0) == doctest::Approx(0.75));            // computational
  CHECK(post_measurement_pguess(std::acos(-1.0) / 2.0, 0.0) == doctest::Approx(0.75));  // hadamard

  const UncertaintyScan scan = uncertainty_scan(100);
  CHECK(scan.max_pguess == doctest::Approx(target).epsilon(5e-4));
  CHECK(scan.max_pguess <= target + 1e-4);
  CHECK_THROWS_AS(uncertainty_scan(10), ArgumentError);
}

TEST_CASE("hiding attack against commitment: no storage is blind, perfect storage wins") {
  const BinaryCode code = BinaryCode::toy("rs3_2");
  const auto blind = run_hiding_attack_commit(code, 4, 0.0, 1.0, 20000, 60);
  CHECK(std::abs(2.0 * blind.estimate - 1.0) < 0.05);
  CHECK(blind.bound_vacuous);  // toy n

  const auto perfect = run_hiding_attack_commit(code, 4, 1.0, 1.0, 2000, 61);
  CHECK(perfect.estimate == doctest::Approx(1.0));
}

TEST_CASE("hiding attack against the transfer: same endpoints") {
  const auto blind = run_hiding_attack_frot(32, 4, 0.0, 1.0, 20000, 62);
  CHECK(std::abs(2.0 * blind.estimate - 1.0) < 0.05);

  const auto perfect = run_hiding_attack_frot(32, 4, 1.0, 1.0, 2000, 63);
  CHECK(perfect.estimate == doctest::Approx(1.0));
}

TEST_CASE("attack report serializes to JSON with the schema fields") {
  const auto rep = run_wse_attack(AttackStrategy::measure_now(MeasureBasis::Breidbart), 8, 10, 64);
  const std::string js = rep.per_bit.to_json();
  for (const char* key : {"\"strategy\"", "\"n\"", "\"trials\"", "\"estimate\"", "\"ci_low\"",
                          "\"ci_high\"", "\"bound\"", "\"bound_source\""})
    CHECK(js.find(key) != std::string::npos);
}
