#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "monfg/catalog.hpp"
#include "monfg/expectation.hpp"
#include "monfg/game.hpp"
#include "monfg/optim.hpp"
#include "monfg/strategy.hpp"
#include "monfg/utility.hpp"

using namespace monfg;
using testing::check_vec;

namespace {

// Expected payoff by explicit enumeration of action vectors and products of
// per-player probabilities.
PayoffVector oracle_expected(const Game& g, const StrategyProfile& pi, std::size_t i) {
  PayoffVector out(g.num_objectives(), 0.0);
  testing::for_each_joint(g.action_counts(), [&](const std::vector<std::size_t>& a) {
    double w = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) w *= pi[j][a[j]];
    const auto p = g.payoff(a, i);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += w * p[k];
  });
  return out;
}

const UtilitySpec kPolySum = UtilitySpec::polysum({1, 1}, {2, 2});
const UtilitySpec kProduct = UtilitySpec::product();

}  // namespace

TEST_SUITE("core") {

TEST_CASE("action space indexes row-major with the first player most significant") {
  ActionSpace s({2, 3});
  CHECK(s.size() == 6);
  const std::vector<std::size_t> a{1, 2};
  CHECK(s.index(a) == 5);
  CHECK(s.unravel(4) == JointAction{1, 1});
  CHECK(s.action_of(4, 0) == 1);
  CHECK(s.with_action(4, 1, 0) == 3);
}

TEST_CASE("game construction validates the table") {
  CHECK_THROWS_KIND(Game::from_counts(1, {2}, {1, 2}), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(Game::from_counts(0, {1, 1}, {}), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(Game::from_counts(1, {2, 2}, {1, 2, 3}), ErrorKind::ShapeMismatch);
  CHECK_THROWS_KIND(Game::from_counts(1, {1, 1}, {1, std::numeric_limits<double>::infinity()}),
                    ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(Game::from_counts(1, {1, 1}, {1, std::nan("")}), ErrorKind::InvalidArgument);
  const Game single = Game::from_counts(1, {1, 1}, {1, 2});
  CHECK(single.num_objectives() == 1);
}

TEST_CASE("catalog tables hold the tabulated entries") {
  const auto& g1 = catalog::game("imbalancing");
  const std::vector<std::size_t> ll{0, 0};
  check_vec(g1.payoff(ll, 0), {4, 0});
  check_vec(g1.payoff(ll, 1), {4, 0});
  const auto& g3 = catalog::game("game3");
  const std::vector<std::size_t> mm{1, 1};
  check_vec(g3.payoff(mm, 0), {3, 2});
  check_vec(g3.payoff(mm, 1), {3, 2});
  CHECK(g1.joint_label(1) == "L|M");
}

TEST_CASE("strategies reject invalid probabilities instead of renormalizing") {
  CHECK_THROWS_KIND(MixedStrategy({0.5, 0.6}), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(MixedStrategy({1.2, -0.2}), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(MixedStrategy({}), ErrorKind::InvalidArgument);
  CHECK_NOTHROW(MixedStrategy({0.5, 0.5 + 5e-10}));
  const auto& g1 = catalog::game("imbalancing");
  StrategyProfile wrong({MixedStrategy::uniform(2), MixedStrategy::uniform(3)});
  CHECK_THROWS_KIND(wrong.check_against(g1), ErrorKind::ShapeMismatch);
  CHECK_THROWS_KIND(CorrelatedStrategy(ActionSpace({2, 2}), {0.5, 0.5}), ErrorKind::ShapeMismatch);
  StrategyModification bad{0, {0, 3, 1}};
  CHECK_THROWS_KIND(bad.check_against(g1), ErrorKind::ShapeMismatch);
  StrategyModification partial{0, {0, 1}};
  CHECK_THROWS_KIND(partial.check_against(g1), ErrorKind::ShapeMismatch);
}

TEST_CASE("utility_eval examples") {
  const std::vector<double> p31{3, 1};
  CHECK(utility_eval(kPolySum, p31) == 10.0);
  const std::vector<double> p{3.5, 0.5};
  CHECK(utility_eval(kProduct, p) == doctest::Approx(1.75).epsilon(1e-15));
  const std::vector<double> p40{4, 0};
  CHECK(utility_eval(UtilitySpec::linear({0.5, 0.5}), p40) == 2.0);
  const std::vector<double> below{1.9, 7};
  CHECK(utility_eval(UtilitySpec::threshold(0, 2, 5), below) == 0.0);
  const std::vector<double> at{2.0, 7};
  CHECK(utility_eval(UtilitySpec::threshold(0, 2, 5), at) == 5.0);
}

TEST_CASE("nonnegativity guard clips utilities to zero") {
  const std::vector<double> neg{-1, 3};
  CHECK(utility_eval(kPolySum, neg) == 0.0);
  CHECK(utility_eval(kProduct, neg) == 0.0);
  CHECK(utility_eval(UtilitySpec::polysum({1, 1}, {2, 2}, false), neg) == 10.0);
  CHECK(utility_eval(UtilitySpec::linear({0.5, 0.5}), neg) == 1.0);
  CHECK(utility_eval(UtilitySpec::linear({0.5, 0.5}, true), neg) == 0.0);
  check_vec(utility_grad(kProduct, neg), {0, 0});
}

TEST_CASE("utility validation") {
  CHECK_THROWS_KIND(UtilitySpec::linear({0.5, 0.6}), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(UtilitySpec::linear({1.5, -0.5}), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(UtilitySpec::polysum({1, 1}, {2, 0}), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(UtilitySpec::polysum({1}, {2, 2}), ErrorKind::InvalidArgument);
  const std::vector<double> three{1, 2, 3};
  CHECK_THROWS_KIND(utility_eval(UtilitySpec::linear({0.5, 0.5}), three), ErrorKind::DimensionMismatch);
  CHECK_THROWS_KIND(utility_eval(UtilitySpec::threshold(3, 1, 1), three), ErrorKind::DimensionMismatch);
  CHECK_NOTHROW(utility_eval(kProduct, three));
  const std::vector<double> p{1, 1};
  CHECK_THROWS_KIND(utility_grad(UtilitySpec::threshold(0, 1, 1), p), ErrorKind::NonDifferentiable);
}

TEST_CASE("utility_grad examples") {
  const std::vector<double> p31{3, 1};
  check_vec(utility_grad(kPolySum, p31), {6, 2});
  const std::vector<double> p22{2, 2};
  check_vec(utility_grad(kProduct, p22), {2, 2});
  const std::vector<double> any{-7, 13};
  check_vec(utility_grad(UtilitySpec::linear({0.25, 0.75}), any), {0.25, 0.75});
}

TEST_CASE("utility gradients match central differences at random positive points") {
  std::mt19937_64 rng(11);
  const std::vector<UtilitySpec> variants = {
      UtilitySpec::linear({0.2, 0.3, 0.5}),
      UtilitySpec::polysum({1.5, -0.5, 2.0}, {2, 3, 1}),
      UtilitySpec::product(),
  };
  for (const auto& u : variants) {
    int failures = 0;
    for (int n = 0; n < 1000; ++n) {
      std::vector<double> p(3);
      for (auto& v : p) v = testing::uniform(rng, 0.1, 5.0);
      const auto analytic = utility_grad(u, p);
      const auto numeric = finite_difference_grad(
          [&](std::span<const double> x) { return utility_eval(u, x); }, p, 1e-5);
      for (std::size_t k = 0; k < 3; ++k) {
        const double scale = std::max(1.0, std::abs(analytic[k]));
        if (std::abs(analytic[k] - numeric[k]) > 1e-4 * scale) ++failures;
      }
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("expected_payoff_profile examples") {
  const auto& g1 = catalog::game("imbalancing");
  const auto& mixed = catalog::profile("imbalancing_mixed");
  check_vec(expected_payoff_profile(g1, mixed, 0), {2, 2});

  const std::vector<std::size_t> lm{0, 1};
  const auto pure = StrategyProfile::pure(g1, lm);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto got = expected_payoff_profile(g1, pure, i);
    const auto want = g1.payoff(lm, i);
    check_vec(got, std::vector<double>(want.begin(), want.end()), 0.0);
  }

  const auto& chicken = catalog::game("chicken");
  StrategyProfile both({MixedStrategy({2.0 / 3, 1.0 / 3}), MixedStrategy({2.0 / 3, 1.0 / 3})});
  // 4/9*6 + 2/9*2 + 2/9*7 + 1/9*0 = 42/9
  check_vec(expected_payoff_profile(chicken, both, 0), {42.0 / 9.0}, 1e-12);
}

TEST_CASE("expected_payoff_correlated examples") {
  check_vec(expected_payoff_correlated(catalog::game("chicken"), catalog::correlated("chicken_ce"), 0),
            {5.25}, 1e-12);
  check_vec(expected_payoff_correlated(catalog::game("game3"), catalog::correlated("game3_ce"), 0),
            {3.5, 1.5}, 1e-12);
  const auto& g3 = catalog::game("game3");
  const std::vector<std::size_t> rm{2, 1};
  const auto point = CorrelatedStrategy::point_mass(g3.space(), rm);
  const auto want = g3.payoff(rm, 1);
  check_vec(expected_payoff_correlated(g3, point, 1), std::vector<double>(want.begin(), want.end()), 0.0);
}

TEST_CASE("expected_payoff_modified examples") {
  const auto& g3 = catalog::game("game3");
  const auto& sigma = catalog::correlated("game3_ce");
  check_vec(expected_payoff_modified(g3, sigma, StrategyModification::identity(0, 3)),
            expected_payoff_correlated(g3, sigma, 0), 0.0);
  check_vec(expected_payoff_modified(g3, sigma, StrategyModification{0, {1, 1, 2}}), {3, 1.5}, 1e-12);

  // Row player always drives on: 0.5*7 + 0.25*0 + 0.25*7.
  const auto& chicken = catalog::game("chicken");
  check_vec(expected_payoff_modified(chicken, catalog::correlated("chicken_ce"),
                                     StrategyModification{0, {1, 1}}),
            {5.25}, 1e-12);
}

TEST_CASE("conditional_expected_payoff examples") {
  const auto& g1 = catalog::game("imbalancing");
  const auto& sigma = catalog::correlated("imbalancing_ce");
  check_vec(conditional_expected_payoff(g1, sigma, 0, 0, 0), {3, 1}, 1e-12);
  check_vec(conditional_expected_payoff(g1, sigma, 1, 1, 2), {1.5, 2.5}, 1e-12);
  CHECK_THROWS_KIND(conditional_expected_payoff(g1, sigma, 0, 1, 0), ErrorKind::ZeroMarginal);

  const std::vector<std::size_t> ml{1, 0};
  const auto point = CorrelatedStrategy::point_mass(g1.space(), ml);
  const std::vector<std::size_t> rl{2, 0};
  const auto want = g1.payoff(rl, 0);
  check_vec(conditional_expected_payoff(g1, point, 0, 1, 2),
            std::vector<double>(want.begin(), want.end()), 0.0);
}

TEST_CASE("esr and ser values on the mixed imbalancing profile") {
  const auto& g1 = catalog::game("imbalancing");
  const auto& mixed = catalog::profile("imbalancing_mixed");
  CHECK(esr_value(g1, mixed, 0, kPolySum) == doctest::Approx(10).epsilon(1e-12));
  CHECK(esr_value(g1, mixed, 1, kProduct) == doctest::Approx(3).epsilon(1e-12));
  CHECK(ser_value(g1, mixed, 0, kPolySum) == doctest::Approx(8).epsilon(1e-12));
  CHECK(ser_value(g1, mixed, 1, kProduct) == doctest::Approx(4).epsilon(1e-12));
  const std::vector<std::size_t> rr{2, 2};
  CHECK(esr_value(g1, StrategyProfile::pure(g1, rr), 0, kPolySum) == 16.0);
}

TEST_CASE("property: pure profiles reproduce table entries exactly") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    const Game g = testing::random_game(rng, {3, 2, 2}, 2, -5, 5);
    testing::for_each_joint(g.action_counts(), [&](const std::vector<std::size_t>& a) {
      const auto pi = StrategyProfile::pure(g, a);
      for (std::size_t i = 0; i < 3; ++i) {
        const auto want = g.payoff(a, i);
        check_vec(expected_payoff_profile(g, pi, i), std::vector<double>(want.begin(), want.end()),
                  0.0);
      }
    });
  }
}

TEST_CASE("property: product distributions agree with independent mixing") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 300; ++n) {
    const Game g = testing::random_game(rng, {3, 3}, 2, -5, 5);
    const auto pi = testing::random_profile(rng, g);
    const auto sigma = CorrelatedStrategy::product_of(g, pi);
    for (std::size_t i = 0; i < 2; ++i) {
      check_vec(expected_payoff_correlated(g, sigma, i), oracle_expected(g, pi, i), 1e-12);
      check_vec(expected_payoff_profile(g, pi, i), oracle_expected(g, pi, i), 1e-12);
    }
  }
}

TEST_CASE("property: linear utilities make ESR and SER coincide") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 300; ++n) {
    const Game g = testing::random_game(rng, {2, 3}, 2, -5, 5);
    const auto pi = testing::random_profile(rng, g);
    const double w = testing::uniform(rng, 0, 1);
    const auto u = UtilitySpec::linear({w, 1 - w});
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(ser_value(g, pi, i, u) - esr_value(g, pi, i, u)) <= 1e-9);
    }
  }
}

TEST_CASE("property: conditional expectations recombine to the joint expectation") {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 300; ++n) {
    const Game g = testing::random_game(rng, {3, 2}, 2, -5, 5);
    const CorrelatedStrategy sigma(g.space(), testing::random_distribution(rng, 6));
    for (std::size_t i = 0; i < 2; ++i) {
      const auto marg = sigma.marginal(i);
      PayoffVector total(2, 0.0);
      for (std::size_t r = 0; r < marg.size(); ++r) {
        if (marg[r] == 0.0) continue;
        const auto c = conditional_expected_payoff(g, sigma, i, r, r);
        for (std::size_t k = 0; k < 2; ++k) total[k] += marg[r] * c[k];
      }
      check_vec(total, expected_payoff_correlated(g, sigma, i), 1e-12);
    }
  }
}

}  // TEST_SUITE
