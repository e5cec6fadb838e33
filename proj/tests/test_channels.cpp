#include "doctest.h"

#include <cmath>

#include "nsc/channels.hpp"
#include "nsc/errors.hpp"

using namespace nsc;

namespace {

// Independent capacity expression for the qubit depolarizing channel.
double qubit_depol_capacity_oracle(double r) {
  auto xlx = [](double v) { return v <= 0 ? 0.0 : v * std::log2(v); };
  return 1.0 + xlx((1.0 + r) / 2.0) + xlx((1.0 - r) / 2.0);
}

// Dense-grid maximization of the converse exponent objective, with the
// alpha -> infinity endpoint added explicitly.
double gamma_grid_oracle(size_t d, double r, double rate) {
  const double a = r + (1.0 - r) / d, b = (1.0 - r) / d;
  double best = std::max(0.0, rate - std::log2(double(d)) - std::log2(a));
  for (int i = 1; i <= 4000; ++i) {
    const double alpha = 1.0 + std::pow(10.0, -3.0 + 5.0 * i / 4000.0);  // 1+1e-3 .. 101
    const double spow =
        std::log2(std::pow(a, alpha) + (d - 1) * std::pow(b, alpha)) / (1.0 - alpha);
    const double g = (alpha - 1.0) / alpha * (rate - std::log2(double(d)) + spow);
    best = std::max(best, g);
  }
  return best;
}

}  // namespace

TEST_CASE("capacity endpoints and the r = 1/2 value") {
  CHECK(capacity(ChannelModel::depolarizing(2, 1.0)) == doctest::Approx(1.0));
  CHECK(capacity(ChannelModel::depolarizing(2, 0.0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(capacity(ChannelModel::depolarizing(2, 0.5)) ==
        doctest::Approx(qubit_depol_capacity_oracle(0.5)).epsilon(1e-12));
  CHECK(capacity(ChannelModel::depolarizing(2, 0.5)) == doctest::Approx(0.18872).epsilon(1e-3));
  CHECK(capacity(ChannelModel::identity(2)) == doctest::Approx(1.0));
  CHECK(capacity(ChannelModel::identity(8)) == doctest::Approx(3.0));
}

TEST_CASE("capacity is monotone in r and two-Pauli matches qubit depolarizing") {
  double prev2 = -1, prev3 = -1;
  for (int i = 0; i <= 100; ++i) {
    const double r = i / 100.0;
    const double c2 = capacity(ChannelModel::depolarizing(2, r));
    const double c3 = capacity(ChannelModel::depolarizing(3, r));
    CHECK(c2 >= prev2 - 1e-12);
    CHECK(c3 >= prev3 - 1e-12);
    prev2 = c2;
    prev3 = c3;
    CHECK(capacity(ChannelModel::two_pauli(r)) == doctest::Approx(c2).epsilon(1e-12));
  }
}

TEST_CASE("min_output_renyi closed form") {
  CHECK(min_output_renyi(ChannelModel::depolarizing(2, 0.0), 3.0) == doctest::Approx(1.0));
  CHECK(min_output_renyi(ChannelModel::depolarizing(3, 0.0), 1.7) ==
        doctest::Approx(std::log2(3.0)));
  CHECK(min_output_renyi(ChannelModel::depolarizing(2, 1.0), 2.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(min_output_renyi(ChannelModel::depolarizing(2, 0.5), 2.0) ==
        doctest::Approx(-std::log2(0.75 * 0.75 + 0.25 * 0.25)).epsilon(1e-12));
  CHECK(min_output_renyi(ChannelModel::identity(4), 5.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(min_output_renyi(ChannelModel::depolarizing(2, 0.5), 0.5), ArgumentError);
  CHECK_THROWS_AS(min_output_renyi(ChannelModel::two_pauli(0.5), 2.0), ArgumentError);
}

TEST_CASE("min_output_renyi alpha = 1 is the von Neumann limit") {
  const ChannelModel m = ChannelModel::depolarizing(2, 0.3);
  const double vn = min_output_renyi(m, 1.0);
  const double near = min_output_renyi(m, 1.0 + 1e-7);
  CHECK(vn == doctest::Approx(near).epsilon(1e-5));
}

TEST_CASE("converse_exponent identity and fully depolarizing cases") {
  CHECK(converse_exponent(ChannelModel::identity(2), 0.8).gamma == doctest::Approx(0.0));
  CHECK(converse_exponent(ChannelModel::identity(2), 1.0).gamma == doctest::Approx(0.0));
  CHECK(converse_exponent(ChannelModel::identity(2), 1.5).gamma ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(converse_exponent(ChannelModel::depolarizing(2, 0.0), 0.3).gamma ==
        doctest::Approx(0.3).epsilon(1e-9));
  CHECK_THROWS_AS(converse_exponent(ChannelModel::two_pauli(0.3), 1.0), ArgumentError);
}

TEST_CASE("converse_exponent agrees with a dense alpha grid") {
  for (double r : {0.3, 0.5, 0.8}) {
    for (double rate : {0.4, 0.6, 0.9}) {
      const ConverseExponent ce = converse_exponent(ChannelModel::depolarizing(2, r), rate);
      const double oracle = gamma_grid_oracle(2, r, rate);
      CHECK(ce.gamma == doctest::Approx(oracle).epsilon(1e-5));
      CHECK(ce.gamma >= oracle - 1e-9);  // the solver must not undershoot the grid
    }
  }
}

TEST_CASE("gamma is zero exactly up to capacity and convex beyond") {
  const ChannelModel m = ChannelModel::depolarizing(2, 0.5);
  const double cap = capacity(m);
  CHECK(converse_exponent(m, cap - 1e-4).gamma == doctest::Approx(0.0));
  CHECK(converse_exponent(m, cap + 1e-3).gamma > 0.0);

  double prev = -1.0, prev_slope = -1.0;
  bool first = true;
  for (int i = 0; i <= 40; ++i) {
    const double rate = cap + i * (1.0 - cap) / 40.0;
    const double g = converse_exponent(m, rate).gamma;
    CHECK(g >= prev - 1e-10);
    if (!first) {
      const double slope = (g - prev) / ((1.0 - cap) / 40.0);
      CHECK(slope >= prev_slope - 1e-6);
      prev_slope = slope;
    }
    prev = g;
    first = false;
  }
}

TEST_CASE("p_succ_bound forms") {
  // blind guessing: nu = 0
  const StorageSpec none{ChannelModel::identity(2), 0.0};
  CHECK(p_succ_bound(none, 10, 0.5).log2_bound == doctest::Approx(-5.0));

  // store everything
  const StorageSpec full{ChannelModel::identity(2), 1.0};
  CHECK(p_succ_bound(full, 100, 1.0).value == doctest::Approx(1.0));

  // noisy storage above capacity
  const StorageSpec noisy{ChannelModel::depolarizing(2, 0.5), 1.0};
  const PSuccBound b = p_succ_bound(noisy, 100, 0.45);
  const double gamma = converse_exponent(noisy.model, 0.45).gamma;
  CHECK(gamma > 0.0);
  CHECK(b.log2_bound == doctest::Approx(-100.0 * gamma).epsilon(1e-12));
  CHECK(b.asymptotic);

  // nonincreasing in rate and n
  double prev = 0.0;
  bool first = true;
  for (double rate : {0.3, 0.35, 0.4, 0.45}) {
    const double lb = p_succ_bound(noisy, 50, rate).log2_bound;
    if (!first) CHECK(lb <= prev + 1e-12);
    prev = lb;
    first = false;
  }
  CHECK(p_succ_bound(noisy, 200, 0.45).log2_bound < p_succ_bound(noisy, 100, 0.45).log2_bound);
}
