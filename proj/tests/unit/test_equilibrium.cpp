#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "monfg/catalog.hpp"
#include "monfg/equilibrium.hpp"
#include "monfg/expectation.hpp"

using namespace monfg;
using testing::check_vec;

namespace {

const std::vector<UtilitySpec>& paper_pair() { return catalog::utilities("paper"); }
const std::vector<UtilitySpec>& identity_pair() { return catalog::utilities("identity"); }

StrategyProfile pure_profile(const Game& g, std::size_t a, std::size_t b) {
  const std::vector<std::size_t> joint{a, b};
  return StrategyProfile::pure(g, joint);
}

double conditional_ser(const Game& g, const CorrelatedStrategy& sigma, std::size_t i,
                       std::size_t rec, std::size_t resp) {
  return utility_eval(paper_pair()[i], conditional_expected_payoff(g, sigma, i, rec, resp));
}

// Swap inequalities of an ESR correlated equilibrium, written directly on the
// scalar table f[cell][player] of a two-player game.
bool satisfies_ce_esr(const std::vector<std::array<double, 2>>& f, std::size_t k0, std::size_t k1,
                      std::span<const double> sigma, double tol) {
  for (std::size_t a = 0; a < k0; ++a) {
    for (std::size_t alt = 0; alt < k0; ++alt) {
      double s = 0.0;
      for (std::size_t b = 0; b < k1; ++b) s += sigma[a * k1 + b] * (f[a * k1 + b][0] - f[alt * k1 + b][0]);
      if (s < -tol) return false;
    }
  }
  for (std::size_t b = 0; b < k1; ++b) {
    for (std::size_t alt = 0; alt < k1; ++alt) {
      double s = 0.0;
      for (std::size_t a = 0; a < k0; ++a) s += sigma[a * k1 + b] * (f[a * k1 + b][1] - f[a * k1 + alt][1]);
      if (s < -tol) return false;
    }
  }
  return true;
}

void check_witnesses(EquilibriumConcept c, const Game& g, std::span<const UtilitySpec> us,
                     const Candidate& cand, const EquilibriumReport& r) {
  for (std::size_t i = 0; i < r.players.size(); ++i) {
    const double regained = std::max(0.0, witness_gain(c, g, us, cand, i, r.players[i].witness));
    CHECK_MESSAGE(std::abs(regained - r.players[i].max_gain) <= 1e-9,
                  to_string(c) << " player " << i << ": witness " << regained << " vs report "
                               << r.players[i].max_gain);
  }
  CHECK(r.verdict == (r.max_gain() <= r.tolerance));
}

}  // namespace

TEST_SUITE("equilibrium") {

TEST_CASE("concept names parse and print") {
  for (auto c : {EquilibriumConcept::NeEsr, EquilibriumConcept::NeSer, EquilibriumConcept::CeEsr,
                 EquilibriumConcept::CeSerSingle, EquilibriumConcept::CeSerMulti}) {
    CHECK(parse_concept(to_string(c)) == c);
  }
  CHECK_THROWS_KIND(parse_concept("nash"), ErrorKind::InvalidArgument);
}

TEST_CASE("trade-off game scalarises every cell") {
  const auto& g1 = catalog::game("imbalancing");
  const Game t = tradeoff_game(g1, paper_pair());
  CHECK(t.num_objectives() == 1);
  CHECK(t == catalog::game("imbalancing_tradeoff"));
  const std::vector<std::size_t> ll{0, 0}, mm{1, 1};
  CHECK(t.payoff(ll, 0)[0] == 16.0);
  CHECK(t.payoff(ll, 1)[0] == 0.0);
  CHECK(t.payoff(mm, 0)[0] == 8.0);
  CHECK(t.payoff(mm, 1)[0] == 4.0);

  const std::vector<UtilitySpec> first{UtilitySpec::linear({1, 0}), UtilitySpec::linear({1, 0})};
  const Game proj = tradeoff_game(g1, first);
  for (std::size_t c = 0; c < g1.space().size(); ++c)
    for (std::size_t i = 0; i < 2; ++i) CHECK(proj.payoff(c, i)[0] == g1.payoff(c, i)[0]);

  const std::vector<UtilitySpec> one{UtilitySpec::product()};
  CHECK_THROWS_KIND(tradeoff_game(g1, one), ErrorKind::ArityMismatch);
}

TEST_CASE("verify_ne_esr examples") {
  const auto& chicken = catalog::game("chicken");
  CHECK(verify_ne_esr(chicken, identity_pair(), pure_profile(chicken, 1, 0)).verdict);

  const auto& g1 = catalog::game("imbalancing");
  const auto r = verify_ne_esr(g1, paper_pair(), catalog::profile("imbalancing_mixed"));
  CHECK(r.verdict);
  CHECK(r.players[0].value == doctest::Approx(10).epsilon(1e-12));
  CHECK(r.players[1].value == doctest::Approx(3).epsilon(1e-12));

  // Against row L the column's scalar payoffs are 0 (L), 3 (M), 4 (R).
  const auto ll = pure_profile(g1, 0, 0);
  const auto rll = verify_ne_esr(g1, paper_pair(), ll);
  CHECK_FALSE(rll.verdict);
  CHECK(rll.players[1].max_gain == 4.0);
  CHECK(std::get<PureDeviation>(rll.players[1].witness).action == 2);
  CHECK(witness_gain(EquilibriumConcept::NeEsr, g1, paper_pair(), ll, 1, PureDeviation{1}) == 3.0);
  check_witnesses(EquilibriumConcept::NeEsr, g1, paper_pair(), ll, rll);
}

TEST_CASE("verify_ne_ser on the mixed imbalancing profile") {
  const auto& g1 = catalog::game("imbalancing");
  const auto& pi = catalog::profile("imbalancing_mixed");
  const auto r = verify_ne_ser(g1, paper_pair(), pi);
  CHECK_FALSE(r.verdict);
  CHECK(r.players[0].max_gain == doctest::Approx(2).epsilon(1e-12));
  CHECK(r.players[0].value == doctest::Approx(8).epsilon(1e-12));
  const auto& w = std::get<MixedDeviation>(r.players[0].witness).strategy;
  CHECK((w == MixedStrategy::pure(3, 0) || w == MixedStrategy::pure(3, 2)));
  CHECK(r.opt_config.has_value());
  check_witnesses(EquilibriumConcept::NeSer, g1, paper_pair(), pi, r);
}

TEST_CASE("verify_ne_ser on the diagonal game measures mixed deviations") {
  const auto& g3 = catalog::game("game3");
  const auto mm = verify_ne_ser(g3, paper_pair(), pure_profile(g3, 1, 1));
  CHECK(mm.verdict);
  CHECK(mm.players[0].value == 13.0);
  CHECK(mm.players[1].value == 6.0);

  // Column against row L: x*[4,1] + (1-x)*[1,2] has product (1+3x)(2-x),
  // maximal at x = 5/6 with value 49/12, above the pure value 4.
  const auto ll_profile = pure_profile(g3, 0, 0);
  const auto ll = verify_ne_ser(g3, paper_pair(), ll_profile);
  CHECK(ll.players[0].value == 17.0);
  CHECK(ll.players[1].value == 4.0);
  CHECK(ll.players[0].max_gain == 0.0);
  CHECK(std::abs(ll.players[1].max_gain - 1.0 / 12.0) <= kDefaultTolerance);
  check_vec(std::get<MixedDeviation>(ll.players[1].witness).strategy.probs(), {5.0 / 6.0, 1.0 / 6.0, 0},
            1e-4);
  CHECK_FALSE(ll.verdict);
  check_witnesses(EquilibriumConcept::NeSer, g3, paper_pair(), ll_profile, ll);

  // Column against row R: x*[2,1] + (1-x)*[1,3] peaks at x = 1/4 with 25/8 > 3.
  const auto rr = verify_ne_ser(g3, paper_pair(), pure_profile(g3, 2, 2));
  CHECK(std::abs(rr.players[1].max_gain - 0.125) <= kDefaultTolerance);
  CHECK_FALSE(rr.verdict);
}

TEST_CASE("best responses") {
  const auto& g1 = catalog::game("imbalancing");
  StrategyProfile col_m({MixedStrategy::uniform(3), MixedStrategy::pure(3, 1)});
  const auto br = best_response_ser(g1, paper_pair()[0], col_m, 0);
  CHECK(br.value == doctest::Approx(10).epsilon(1e-12));
  CHECK((br.strategy == MixedStrategy::pure(3, 0) || br.strategy == MixedStrategy::pure(3, 2)));

  // Row mixing (3/4, 0, 1/4): the column's action vectors are [3.5,0.5], [2.5,1.5]
  // and [1.5,2.5]. Pure M or R gives 3.75; the even M/R mix reaches [2,2] and 4.
  StrategyProfile row({MixedStrategy({0.75, 0, 0.25}), MixedStrategy::uniform(3)});
  const auto br2 = best_response_ser(g1, paper_pair()[1], row, 1);
  CHECK(std::abs(br2.value - 4.0) <= kDefaultTolerance);
  const auto achieved = expected_payoff_profile(g1, row.with(1, br2.strategy), 1);
  CHECK(std::abs(utility_eval(paper_pair()[1], achieved) - 4.0) <= kDefaultTolerance);
  const auto rows = action_payoff_vectors(g1, row, 1);
  CHECK(utility_eval(paper_pair()[1], rows[1]) == doctest::Approx(3.75).epsilon(1e-12));
  CHECK(utility_eval(paper_pair()[1], rows[2]) == doctest::Approx(3.75).epsilon(1e-12));

  std::mt19937_64 rng(51);
  for (int n = 0; n < 50; ++n) {
    const Game g = testing::random_game(rng, {3, 2}, 2, -5, 5);
    const auto pi = StrategyProfile::pure(g, std::vector<std::size_t>{0, 1});
    const double w = testing::uniform(rng, 0, 1);
    const auto b = best_response_ser(g, UtilitySpec::linear({w, 1 - w}), pi, 0);
    CHECK(*std::max_element(b.strategy.probs().begin(), b.strategy.probs().end()) == 1.0);
  }
}

TEST_CASE("verify_ce_esr examples") {
  const auto& chicken = catalog::game("chicken");
  const auto& ce = catalog::correlated("chicken_ce");
  const auto r = verify_ce_esr(chicken, identity_pair(), ce);
  CHECK(r.verdict);
  check_witnesses(EquilibriumConcept::CeEsr, chicken, identity_pair(), ce, r);

  const std::vector<std::size_t> ds{1, 0};
  CHECK(verify_ce_esr(chicken, identity_pair(), CorrelatedStrategy::point_mass(chicken.space(), ds)).verdict);

  const std::vector<std::size_t> dd{1, 1};
  const auto crash = CorrelatedStrategy::point_mass(chicken.space(), dd);
  const auto rdd = verify_ce_esr(chicken, identity_pair(), crash);
  CHECK_FALSE(rdd.verdict);
  CHECK(rdd.players[0].max_gain == 2.0);
  CHECK(rdd.players[1].max_gain == 2.0);
  check_witnesses(EquilibriumConcept::CeEsr, chicken, identity_pair(), crash, rdd);
}

TEST_CASE("verify_ce_ser_single examples") {
  const auto& g1 = catalog::game("imbalancing");
  const auto& s1 = catalog::correlated("imbalancing_ce");
  const auto r1 = verify_ce_ser_single(g1, paper_pair(), s1);
  CHECK(r1.verdict);
  check_witnesses(EquilibriumConcept::CeSerSingle, g1, paper_pair(), s1, r1);
  const std::vector<double> row_given_l{10, 8, 10};
  const std::vector<double> col_given_m{1.75, 3.75, 3.75};
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(conditional_ser(g1, s1, 0, 0, a) == doctest::Approx(row_given_l[a]).epsilon(1e-12));
    CHECK(conditional_ser(g1, s1, 1, 1, a) == doctest::Approx(col_given_m[a]).epsilon(1e-12));
  }

  // Uniform play in the 2x2 game: staying gives [3,1] and switching gives
  // [1,3] (or the mirror image); both players are indifferent.
  const auto& g2 = catalog::game("game2");
  const auto& s2 = catalog::correlated("game2_ce");
  CHECK(verify_ce_ser_single(g2, paper_pair(), s2).verdict);
  check_vec(conditional_expected_payoff(g2, s2, 0, 0, 0), {3, 1});
  check_vec(conditional_expected_payoff(g2, s2, 0, 0, 1), {1, 3});
  check_vec(conditional_expected_payoff(g2, s2, 1, 0, 0), {3, 1});
  check_vec(conditional_expected_payoff(g2, s2, 1, 0, 1), {1, 3});
  for (std::size_t rec = 0; rec < 2; ++rec) {
    for (std::size_t resp = 0; resp < 2; ++resp) {
      CHECK(conditional_ser(g2, s2, 0, rec, resp) == doctest::Approx(10).epsilon(1e-12));
      CHECK(conditional_ser(g2, s2, 1, rec, resp) == doctest::Approx(3).epsilon(1e-12));
    }
  }

  const auto& g3 = catalog::game("game3");
  const auto& s3 = catalog::correlated("game3_ce");
  CHECK(verify_ce_ser_single(g3, paper_pair(), s3).verdict);
  CHECK(conditional_ser(g3, s3, 0, 0, 0) == 17.0);
  CHECK(conditional_ser(g3, s3, 0, 1, 1) == 13.0);
  CHECK(conditional_ser(g3, s3, 1, 0, 0) == 4.0);
  CHECK(conditional_ser(g3, s3, 1, 1, 1) == 6.0);
}

TEST_CASE("verify_ce_ser_multi examples") {
  const auto& g1 = catalog::game("imbalancing");
  const auto& s1 = catalog::correlated("imbalancing_ce");
  const auto r1 = verify_ce_ser_multi(g1, paper_pair(), s1);
  CHECK_FALSE(r1.verdict);
  check_witnesses(EquilibriumConcept::CeSerMulti, g1, paper_pair(), s1, r1);

  const auto& g3 = catalog::game("game3");
  const auto& s3 = catalog::correlated("game3_ce");
  const auto r3 = verify_ce_ser_multi(g3, paper_pair(), s3);
  CHECK(r3.verdict);
  CHECK(r3.players[0].value == doctest::Approx(14.5).epsilon(1e-12));
  CHECK(r3.players[1].value == doctest::Approx(5.25).epsilon(1e-12));
  // Independent enumeration of all 27 maps per player.
  for (std::size_t i = 0; i < 2; ++i) {
    const double base = utility_eval(paper_pair()[i], expected_payoff_correlated(g3, s3, i));
    for (std::size_t code = 0; code < 27; ++code) {
      StrategyModification d{i, {code % 3, (code / 3) % 3, code / 9}};
      CHECK(utility_eval(paper_pair()[i], expected_payoff_modified(g3, s3, d)) <= base + 1e-12);
    }
  }

  const std::vector<std::size_t> mm{1, 1};
  CHECK(verify_ce_ser_multi(g3, paper_pair(), CorrelatedStrategy::point_mass(g3.space(), mm)).verdict);

  const Game big = Game::from_counts(1, {8, 2}, std::vector<double>(32, 0.0));
  const std::vector<std::size_t> origin{0, 0};
  CHECK_THROWS_KIND(verify_ce_ser_multi(big, identity_pair(),
                                        CorrelatedStrategy::point_mass(big.space(), origin)),
                    ErrorKind::TooManyModifications);
}

TEST_CASE("verify dispatches and rejects mismatched candidates") {
  const auto& g1 = catalog::game("imbalancing");
  const Candidate sigma = catalog::correlated("imbalancing_ce");
  const Candidate pi = catalog::profile("imbalancing_mixed");
  CHECK(verify(EquilibriumConcept::CeSerSingle, g1, paper_pair(), sigma).verdict);
  CHECK(verify(EquilibriumConcept::NeEsr, g1, paper_pair(), pi).verdict);
  CHECK_THROWS_KIND(verify(EquilibriumConcept::NeSer, g1, paper_pair(), sigma), ErrorKind::ShapeMismatch);
  CHECK_THROWS_KIND(verify(EquilibriumConcept::CeEsr, g1, paper_pair(), pi), ErrorKind::ShapeMismatch);
  const std::vector<UtilitySpec> three(3, UtilitySpec::product());
  CHECK_THROWS_KIND(verify(EquilibriumConcept::NeEsr, g1, three, pi), ErrorKind::ArityMismatch);
}

TEST_CASE("solve_ce_esr on Chicken") {
  const auto& chicken = catalog::game("chicken");
  const auto feasible = solve_ce_esr(chicken, identity_pair(), CeObjective::feasible());
  CHECK(verify_ce_esr(chicken, identity_pair(), feasible, 1e-7).verdict);

  const auto best = solve_ce_esr(chicken, identity_pair(), CeObjective::max_utility_sum());
  CHECK(verify_ce_esr(chicken, identity_pair(), best, 1e-7).verdict);
  const double total = esr_value_correlated(chicken, best, 0, identity_pair()[0]) +
                       esr_value_correlated(chicken, best, 1, identity_pair()[1]);
  CHECK(total >= 10.5 - 1e-9);
  // Pure ESR equilibria (S,D) and (D,S) both total 9.
  CHECK(total >= 9.0);
}

TEST_CASE("solve_ce_esr max_player on the imbalancing trade-off matches a polytope grid") {
  const auto& g1 = catalog::game("imbalancing");
  const auto sigma = solve_ce_esr(g1, paper_pair(), CeObjective::max_player(0));
  CHECK(verify_ce_esr(g1, paper_pair(), sigma, 1e-7).verdict);
  const Game t = tradeoff_game(g1, paper_pair());
  double lp_value = 0.0;
  for (std::size_t c = 0; c < 9; ++c) lp_value += sigma[c] * t.payoff(c, 0)[0];

  std::vector<std::array<double, 2>> f(9);
  for (std::size_t c = 0; c < 9; ++c) f[c] = {t.payoff(c, 0)[0], t.payoff(c, 1)[0]};
  // Every point of the 9-cell simplex at step 0.05.
  const int r = 20;
  std::vector<double> x(9);
  std::vector<int> counts(9);
  double grid_best = -1.0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos == 8) {
      counts[8] = left;
      for (std::size_t c = 0; c < 9; ++c) x[c] = counts[c] / double(r);
      if (satisfies_ce_esr(f, 3, 3, x, 1e-12)) {
        double v = 0.0;
        for (std::size_t c = 0; c < 9; ++c) v += x[c] * f[c][0];
        grid_best = std::max(grid_best, v);
      }
      return;
    }
    for (int k = 0; k <= left; ++k) {
      counts[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, r);
  CHECK(grid_best > 0.0);
  CHECK(lp_value >= grid_best - 1e-9);
  // Point masses on (L,L) or (R,R) are not ESR-correlated equilibria: the column
  // gains 4 by leaving them, so the optimum is below 16.
  CHECK(lp_value < 16.0);
}

TEST_CASE("scan_ne_ser_grid examples") {
  const auto& g1 = catalog::game("imbalancing");
  const auto r1 = scan_ne_ser_grid(g1, paper_pair(), 20);
  CHECK(r1.profiles_evaluated == 231 * 231);
  CHECK(r1.approx_equilibria.empty());
  CHECK(r1.min_max_gain > 0.05);

  const auto& g3 = catalog::game("game3");
  const auto r3 = scan_ne_ser_grid(g3, paper_pair(), 20);
  auto found = [&](const StrategyProfile& p) {
    return std::find(r3.approx_equilibria.begin(), r3.approx_equilibria.end(), p) !=
           r3.approx_equilibria.end();
  };
  CHECK(found(pure_profile(g3, 1, 1)));
  CHECK_FALSE(found(pure_profile(g3, 0, 0)));
  CHECK_FALSE(found(pure_profile(g3, 2, 2)));
  // Row R against column (0, 1/4, 3/4) is an exact mixed SER equilibrium.
  CHECK(found(StrategyProfile({MixedStrategy::pure(3, 2), MixedStrategy({0, 0.25, 0.75})})));
  CHECK(r3.approx_equilibria.size() == r3.approx_gains.size());

  const Game trivial = Game::from_counts(2, {1, 1}, {1, 2, 3, 4});
  const std::vector<UtilitySpec> us{UtilitySpec::product(), UtilitySpec::product()};
  const auto rt = scan_ne_ser_grid(trivial, us, 5);
  CHECK(rt.profiles_evaluated == 1);
  CHECK(rt.min_max_gain == 0.0);
  CHECK(rt.approx_equilibria.size() == 1);

  CHECK_THROWS_KIND(scan_ne_ser_grid(g1, paper_pair(), 20, 1e-6, {}, 1000), ErrorKind::GridTooLarge);
}

TEST_CASE("property: scan output does not depend on the thread count") {
  const auto& g3 = catalog::game("game3");
  const auto a = scan_ne_ser_grid(g3, paper_pair(), 8, 1e-6, {}, kDefaultGridCap, 1);
  const auto b = scan_ne_ser_grid(g3, paper_pair(), 8, 1e-6, {}, kDefaultGridCap, 3);
  CHECK(a.min_max_gain == b.min_max_gain);
  CHECK(a.argmin_profile == b.argmin_profile);
  CHECK(a.approx_equilibria == b.approx_equilibria);
}

TEST_CASE("property: witnesses reproduce reported gains on random games") {
  std::mt19937_64 rng(61);
  const std::vector<UtilitySpec> us{UtilitySpec::polysum({1, 1}, {2, 2}), UtilitySpec::product()};
  for (int n = 0; n < 60; ++n) {
    const Game g = testing::random_game(rng, {3, 3}, 2, 0, 4);
    const Candidate pi = testing::random_profile(rng, g);
    const Candidate sigma = CorrelatedStrategy(g.space(), testing::random_distribution(rng, 9));
    for (auto c : {EquilibriumConcept::NeEsr, EquilibriumConcept::NeSer}) {
      check_witnesses(c, g, us, pi, verify(c, g, us, pi));
    }
    for (auto c : {EquilibriumConcept::CeEsr, EquilibriumConcept::CeSerSingle,
                   EquilibriumConcept::CeSerMulti}) {
      check_witnesses(c, g, us, sigma, verify(c, g, us, sigma));
    }
  }
}

TEST_CASE("property: Nash equilibria induce correlated equilibria under ESR") {
  std::mt19937_64 rng(71);
  const std::vector<UtilitySpec> us{UtilitySpec::polysum({1, 1}, {2, 2}), UtilitySpec::product()};
  int checked = 0;
  auto check_profile = [&](const Game& g, std::span<const UtilitySpec> u, const StrategyProfile& pi) {
    if (!verify_ne_esr(g, u, pi).verdict) return;
    ++checked;
    CHECK(verify_ce_esr(g, u, CorrelatedStrategy::product_of(g, pi)).verdict);
  };
  check_profile(catalog::game("imbalancing"), paper_pair(), catalog::profile("imbalancing_mixed"));
  const auto& chicken = catalog::game("chicken");
  check_profile(chicken, identity_pair(),
                StrategyProfile({MixedStrategy({2.0 / 3, 1.0 / 3}), MixedStrategy({2.0 / 3, 1.0 / 3})}));
  for (const char* name : {"chicken", "imbalancing", "game2", "game3"}) {
    const auto& g = catalog::game(name);
    const auto& u = g.num_objectives() == 1 ? identity_pair() : paper_pair();
    testing::for_each_joint(g.action_counts(), [&](const std::vector<std::size_t>& a) {
      check_profile(g, u, StrategyProfile::pure(g, a));
    });
  }
  for (int n = 0; n < 200; ++n) {
    const Game g = testing::random_game(rng, {3, 3}, 2, 0, 4);
    testing::for_each_joint(g.action_counts(), [&](const std::vector<std::size_t>& a) {
      check_profile(g, us, StrategyProfile::pure(g, a));
    });
  }
  CHECK(checked > 100);
}

TEST_CASE("property: ESR Nash verification equals verification on the trade-off game") {
  std::mt19937_64 rng(81);
  const std::vector<UtilitySpec> us{UtilitySpec::polysum({1, 1}, {2, 2}), UtilitySpec::product()};
  for (int n = 0; n < 200; ++n) {
    const Game g = testing::random_game(rng, {3, 2}, 2, 0, 4);
    const auto pi = testing::random_profile(rng, g);
    const auto a = verify_ne_esr(g, us, pi);
    const auto b = verify_ne_esr(tradeoff_game(g, us), identity_pair(), pi);
    CHECK(a.verdict == b.verdict);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(a.players[i].max_gain == b.players[i].max_gain);
      CHECK(a.players[i].value == b.players[i].value);
      CHECK(a.players[i].witness == b.players[i].witness);
    }
  }
}

TEST_CASE("property: linear utilities make ESR and SER Nash verification agree") {
  std::mt19937_64 rng(91);
  for (int n = 0; n < 500; ++n) {
    const std::vector<std::size_t> counts{2 + rng() % 2, 2 + rng() % 2};
    const Game g = testing::random_game(rng, counts, 2, -5, 5);
    std::vector<UtilitySpec> us;
    for (int i = 0; i < 2; ++i) {
      const double w = testing::uniform(rng, 0, 1);
      us.push_back(UtilitySpec::linear({w, 1 - w}));
    }
    const auto pi = testing::random_profile(rng, g);
    const auto esr = verify_ne_esr(g, us, pi);
    const auto ser = verify_ne_ser(g, us, pi);
    CHECK(esr.verdict == ser.verdict);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(esr.players[i].max_gain - ser.players[i].max_gain) <= 1e-6);
    }
  }
}

}  // TEST_SUITE
