#include "monfg/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monfg/error.hpp"
#include "monfg/expectation.hpp"
#include "parallel.hpp"

namespace monfg {

std::string_view to_string(EquilibriumConcept c) {
  switch (c) {
    case EquilibriumConcept::NeEsr: return "ne-esr";
    case EquilibriumConcept::NeSer: return "ne-ser";
    case EquilibriumConcept::CeEsr: return "ce-esr";
    case EquilibriumConcept::CeSerSingle: return "ce-ser-single";
    case EquilibriumConcept::CeSerMulti: return "ce-ser-multi";
  }
  return "unknown";
}

EquilibriumConcept parse_concept(std::string_view s) {
  for (auto c : {EquilibriumConcept::NeEsr, EquilibriumConcept::NeSer, EquilibriumConcept::CeEsr,
                 EquilibriumConcept::CeSerSingle, EquilibriumConcept::CeSerMulti}) {
    if (to_string(c) == s) return c;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown equilibrium concept '" + std::string(s) + "'");
}

bool is_correlated(EquilibriumConcept c) {
  return c != EquilibriumConcept::NeEsr && c != EquilibriumConcept::NeSer;
}

double EquilibriumReport::max_gain() const {
  double g = 0.0;
  for (const auto& p : players) g = std::max(g, p.max_gain);
  return g;
}

namespace {

void check_arity(const Game& game, std::span<const UtilitySpec> utilities) {
  if (utilities.size() != game.num_players()) {
    throw Error(ErrorKind::ArityMismatch, "expected " + std::to_string(game.num_players()) +
                                              " utilities, got " +
                                              std::to_string(utilities.size()));
  }
  for (const auto& u : utilities) u.check_dimension(game.num_objectives());
}

void check_tolerance(double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::InvalidArgument, "tolerance must be a finite nonnegative number");
  }
}

EquilibriumReport finish(EquilibriumConcept c, double tol, std::vector<PlayerReport> players) {
  EquilibriumReport r;
  r.concept_kind = c;
  r.tolerance = tol;
  r.players = std::move(players);
  r.verdict = r.max_gain() <= tol;
  return r;
}

}  // namespace

Game tradeoff_game(const Game& game, std::span<const UtilitySpec> utilities) {
  check_arity(game, utilities);
  const std::size_t n = game.num_players();
  std::vector<double> scalar(game.space().size() * n);
  for (std::size_t k = 0; k < game.space().size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) scalar[k * n + i] = utility_eval(utilities[i], game.payoff(k, i));
  }
  return Game(1, game.action_labels(), std::move(scalar));
}

EquilibriumReport verify_ne_esr(const Game& game, std::span<const UtilitySpec> utilities,
                                const StrategyProfile& profile, double tol) {
  check_tolerance(tol);
  profile.check_against(game);
  const Game tg = tradeoff_game(game, utilities);
  std::vector<PlayerReport> players;
  for (std::size_t i = 0; i < tg.num_players(); ++i) {
    // ESR value is linear in the player's own mixing, so pure deviations suffice.
    const auto rows = action_payoff_vectors(tg, profile, i);
    const double current = expected_payoff_profile(tg, profile, i)[0];
    std::size_t best = 0;
    for (std::size_t a = 1; a < rows.size(); ++a) {
      if (rows[a][0] > rows[best][0]) best = a;
    }
    players.push_back({std::max(0.0, rows[best][0] - current), PureDeviation{best}, current});
  }
  return finish(EquilibriumConcept::NeEsr, tol, std::move(players));
}

BestResponse best_response_to_vectors(std::span<const PayoffVector> rows, const UtilitySpec& u,
                                      const OptConfig& cfg) {
  if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "no actions to respond with");
  const std::size_t k = rows.size();
  const std::size_t d = rows[0].size();
  u.check_dimension(d);
  std::vector<double> flat(k * d);
  for (std::size_t a = 0; a < k; ++a) {
    if (rows[a].size() != d) throw Error(ErrorKind::DimensionMismatch, "ragged payoff rows");
    std::copy(rows[a].begin(), rows[a].end(), flat.begin() + static_cast<std::ptrdiff_t>(a * d));
  }
  auto mix = [flat, k, d](std::span<const double> x, std::vector<double>& y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      if (x[a] == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) y[j] += x[a] * flat[a * d + j];
    }
  };
  Objective f = [mix, &u, y = std::vector<double>(d)](std::span<const double> x) mutable {
    mix(x, y);
    return utility_eval(u, y);
  };
  Gradient g;
  if (u.differentiable()) {
    g = [mix, flat, k, d, &u, y = std::vector<double>(d)](std::span<const double> x,
                                                           std::span<double> out) mutable {
      mix(x, y);
      const auto gy = utility_grad(u, y);
      for (std::size_t a = 0; a < k; ++a) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += flat[a * d + j] * gy[j];
        out[a] = s;
      }
    };
  }
  auto best = maximize_over_simplex(f, g, k, cfg);
  return {MixedStrategy(std::move(best.point)), best.value};
}

BestResponse best_response_ser(const Game& game, const UtilitySpec& u,
                               const StrategyProfile& profile, std::size_t player,
                               const OptConfig& cfg) {
  return best_response_to_vectors(action_payoff_vectors(game, profile, player), u, cfg);
}

EquilibriumReport verify_ne_ser(const Game& game, std::span<const UtilitySpec> utilities,
                                const StrategyProfile& profile, double tol, const OptConfig& cfg) {
  check_tolerance(tol);
  check_arity(game, utilities);
  profile.check_against(game);
  std::vector<PlayerReport> players;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const double current = ser_value(game, profile, i, utilities[i]);
    auto br = best_response_ser(game, utilities[i], profile, i, cfg);
    if (br.value > current) {
      players.push_back({br.value - current, MixedDeviation{std::move(br.strategy)}, current});
    } else {
      players.push_back({0.0, MixedDeviation{profile[i]}, current});
    }
  }
  auto report = finish(EquilibriumConcept::NeSer, tol, std::move(players));
  report.opt_config = cfg;
  return report;
}

EquilibriumReport verify_ce_esr(const Game& game, std::span<const UtilitySpec> utilities,
                                const CorrelatedStrategy& sigma, double tol) {
  check_tolerance(tol);
  sigma.check_against(game);
  const Game tg = tradeoff_game(game, utilities);
  const auto& space = tg.space();
  std::vector<PlayerReport> players;
  for (std::size_t i = 0; i < tg.num_players(); ++i) {
    const std::size_t k = space.num_actions(i);
    double value = 0.0;
    for (std::size_t c = 0; c < sigma.size(); ++c) value += sigma[c] * tg.payoff(c, i)[0];
    PlayerReport rep{0.0, StrategyModification::identity(i, k), value};
    // Sum over a_-i of sigma(a, a_-i) * [f_i(b, a_-i) - f_i(a, a_-i)] for each swap a -> b.
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        if (a == b) continue;
        double gain = 0.0;
        for (std::size_t c = 0; c < sigma.size(); ++c) {
          if (sigma[c] == 0.0 || space.action_of(c, i) != a) continue;
          gain += sigma[c] * (tg.payoff(space.with_action(c, i, b), i)[0] - tg.payoff(c, i)[0]);
        }
        if (gain > rep.max_gain) {
          rep.max_gain = gain;
          rep.witness = StrategyModification::swap(i, k, a, b);
        }
      }
    }
    players.push_back(std::move(rep));
  }
  return finish(EquilibriumConcept::CeEsr, tol, std::move(players));
}

EquilibriumReport verify_ce_ser_single(const Game& game, std::span<const UtilitySpec> utilities,
                                       const CorrelatedStrategy& sigma, double tol) {
  check_tolerance(tol);
  check_arity(game, utilities);
  sigma.check_against(game);
  std::vector<PlayerReport> players;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto marginal = sigma.marginal(i);
    const std::size_t k = game.num_actions(i);
    std::optional<PlayerReport> rep;
    for (std::size_t r = 0; r < k; ++r) {
      // Recommendations that are never delivered impose no condition.
      if (marginal[r] <= 0.0) continue;
      const double base =
          utility_eval(utilities[i], conditional_expected_payoff(game, sigma, i, r, r));
      if (!rep) rep = PlayerReport{0.0, ConditionalDeviation{r, r}, base};
      for (std::size_t a = 0; a < k; ++a) {
        if (a == r) continue;
        const double gain =
            utility_eval(utilities[i], conditional_expected_payoff(game, sigma, i, r, a)) - base;
        if (gain > rep->max_gain) *rep = PlayerReport{gain, ConditionalDeviation{r, a}, base};
      }
    }
    players.push_back(std::move(*rep));
  }
  return finish(EquilibriumConcept::CeSerSingle, tol, std::move(players));
}

EquilibriumReport verify_ce_ser_multi(const Game& game, std::span<const UtilitySpec> utilities,
                                      const CorrelatedStrategy& sigma, double tol) {
  check_tolerance(tol);
  check_arity(game, utilities);
  sigma.check_against(game);
  std::size_t total = 0;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    std::size_t count = 1;
    const std::size_t k = game.num_actions(i);
    for (std::size_t j = 0; j < k; ++j) {
      if (count > kMaxModifications / k) {
        count = kMaxModifications + 1;
        break;
      }
      count *= k;
    }
    total += count;
    if (total > kMaxModifications) {
      throw Error(ErrorKind::TooManyModifications,
                  "more than " + std::to_string(kMaxModifications) + " strategy modifications");
    }
  }

  std::vector<PlayerReport> players;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const std::size_t k = game.num_actions(i);
    const double base = utility_eval(utilities[i], expected_payoff_correlated(game, sigma, i));
    auto mod = StrategyModification::identity(i, k);
    std::fill(mod.map.begin(), mod.map.end(), 0);
    PlayerReport rep{0.0, StrategyModification::identity(i, k), base};
    // Odometer over all k^k maps.
    for (;;) {
      const double gain =
          utility_eval(utilities[i], expected_payoff_modified(game, sigma, mod)) - base;
      if (gain > rep.max_gain) {
        rep.max_gain = gain;
        rep.witness = mod;
      }
      std::size_t pos = 0;
      while (pos < k && ++mod.map[pos] == k) mod.map[pos++] = 0;
      if (pos == k) break;
    }
    players.push_back(std::move(rep));
  }
  return finish(EquilibriumConcept::CeSerMulti, tol, std::move(players));
}

EquilibriumReport verify(EquilibriumConcept c, const Game& game,
                         std::span<const UtilitySpec> utilities, const Candidate& candidate,
                         double tol, const OptConfig& cfg) {
  if (is_correlated(c)) {
    const auto* sigma = std::get_if<CorrelatedStrategy>(&candidate);
    if (!sigma) {
      throw Error(ErrorKind::ShapeMismatch,
                  std::string(to_string(c)) + " needs a correlated strategy candidate");
    }
    switch (c) {
      case EquilibriumConcept::CeEsr: return verify_ce_esr(game, utilities, *sigma, tol);
      case EquilibriumConcept::CeSerSingle: return verify_ce_ser_single(game, utilities, *sigma, tol);
      default: return verify_ce_ser_multi(game, utilities, *sigma, tol);
    }
  }
  const auto* profile = std::get_if<StrategyProfile>(&candidate);
  if (!profile) {
    throw Error(ErrorKind::ShapeMismatch,
                std::string(to_string(c)) + " needs a strategy profile candidate");
  }
  if (c == EquilibriumConcept::NeEsr) return verify_ne_esr(game, utilities, *profile, tol);
  return verify_ne_ser(game, utilities, *profile, tol, cfg);
}

double witness_gain(EquilibriumConcept c, const Game& game, std::span<const UtilitySpec> utilities,
                    const Candidate& candidate, std::size_t i, const Witness& witness) {
  check_arity(game, utilities);
  const auto& u = utilities[i];
  switch (c) {
    case EquilibriumConcept::NeEsr: {
      const auto& profile = std::get<StrategyProfile>(candidate);
      const auto& w = std::get<PureDeviation>(witness);
      const auto dev = profile.with(i, MixedStrategy::pure(game.num_actions(i), w.action));
      return esr_value(game, dev, i, u) - esr_value(game, profile, i, u);
    }
    case EquilibriumConcept::NeSer: {
      const auto& profile = std::get<StrategyProfile>(candidate);
      const auto& w = std::get<MixedDeviation>(witness);
      return ser_value(game, profile.with(i, w.strategy), i, u) - ser_value(game, profile, i, u);
    }
    case EquilibriumConcept::CeEsr: {
      const auto& sigma = std::get<CorrelatedStrategy>(candidate);
      const auto& w = std::get<StrategyModification>(witness);
      return esr_value_modified(game, sigma, w, u) - esr_value_correlated(game, sigma, i, u);
    }
    case EquilibriumConcept::CeSerSingle: {
      const auto& sigma = std::get<CorrelatedStrategy>(candidate);
      const auto& w = std::get<ConditionalDeviation>(witness);
      return utility_eval(u, conditional_expected_payoff(game, sigma, i, w.recommended, w.response)) -
             utility_eval(u, conditional_expected_payoff(game, sigma, i, w.recommended, w.recommended));
    }
    case EquilibriumConcept::CeSerMulti: {
      const auto& sigma = std::get<CorrelatedStrategy>(candidate);
      const auto& w = std::get<StrategyModification>(witness);
      return utility_eval(u, expected_payoff_modified(game, sigma, w)) -
             utility_eval(u, expected_payoff_correlated(game, sigma, i));
    }
  }
  return 0.0;
}

std::vector<double> ce_objective_coefficients(const Game& tg, const CeObjective& objective) {
  const std::size_t n = tg.num_players();
  std::vector<double> c(tg.space().size(), 0.0);
  switch (objective.kind) {
    case CeObjective::Kind::Feasible: break;
    case CeObjective::Kind::MaxUtilitySum:
      for (std::size_t k = 0; k < c.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) c[k] += tg.payoff(k, i)[0];
      }
      break;
    case CeObjective::Kind::MaxPlayer:
      if (objective.player >= n) {
        throw Error(ErrorKind::InvalidArgument,
                    "objective player " + std::to_string(objective.player) + " out of range");
      }
      for (std::size_t k = 0; k < c.size(); ++k) c[k] = tg.payoff(k, objective.player)[0];
      break;
  }
  return c;
}

CorrelatedStrategy solve_ce_esr(const Game& game, std::span<const UtilitySpec> utilities,
                                const CeObjective& objective) {
  const Game tg = tradeoff_game(game, utilities);
  const auto& space = tg.space();
  LinearProgram lp;
  lp.objective = ce_objective_coefficients(tg, objective);
  for (std::size_t i = 0; i < tg.num_players(); ++i) {
    const std::size_t k = space.num_actions(i);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        if (a == b) continue;
        std::vector<double> row(space.size(), 0.0);
        for (std::size_t c = 0; c < space.size(); ++c) {
          if (space.action_of(c, i) != a) continue;
          row[c] = tg.payoff(c, i)[0] - tg.payoff(space.with_action(c, i, b), i)[0];
        }
        lp.add_ge(std::move(row), 0.0);
      }
    }
  }
  lp.add_simplex_constraint();

  LpSolution sol;
  try {
    sol = solve_lp(lp);
  } catch (const Error& e) {
    // Every finite game has a correlated equilibrium, so this is a solver fault.
    throw Error(ErrorKind::OptimizationFailed, std::string("CE linear program failed: ") + e.what());
  }
  double sum = 0.0;
  for (double v : sol.x) sum += v;
  for (double& v : sol.x) v /= sum;
  CorrelatedStrategy sigma(space, std::move(sol.x));
  const auto check = verify_ce_esr(game, utilities, sigma, 1e-7);
  if (!check.verdict) {
    throw Error(ErrorKind::OptimizationFailed, "CE solution failed re-verification (gain " +
                                                   std::to_string(check.max_gain()) + ")");
  }
  return sigma;
}

GridScanResult scan_ne_ser_grid(const Game& game, std::span<const UtilitySpec> utilities,
                                std::size_t resolution, double tol, const OptConfig& cfg,
                                std::size_t cap, unsigned threads) {
  check_tolerance(tol);
  check_arity(game, utilities);
  cfg.validate();
  if (resolution == 0) throw Error(ErrorKind::InvalidArgument, "resolution must be positive");
  const std::size_t n = game.num_players();

  std::vector<std::size_t> sizes(n);
  long double total_ld = 1.0L;
  for (std::size_t i = 0; i < n; ++i) {
    sizes[i] = simplex_lattice_size(game.num_actions(i), resolution);
    total_ld *= static_cast<long double>(sizes[i]);
  }
  if (total_ld > static_cast<long double>(cap)) {
    throw Error(ErrorKind::GridTooLarge, "grid has " + std::to_string(static_cast<double>(total_ld)) +
                                             " profiles, cap is " + std::to_string(cap));
  }
  const auto total = static_cast<std::size_t>(total_ld);
  std::vector<std::vector<MixedStrategy>> lattices(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& p : simplex_lattice(game.num_actions(i), resolution)) {
      lattices[i].emplace_back(std::move(p));
    }
  }
  // Mixed-radix profile index, player 0 most significant.
  std::vector<std::size_t> strides(n);
  std::size_t s = 1;
  for (std::size_t i = n; i-- > 0;) {
    strides[i] = s;
    s *= sizes[i];
  }
  auto profile_at = [&](std::size_t idx) {
    std::vector<MixedStrategy> strategies;
    for (std::size_t i = 0; i < n; ++i) strategies.push_back(lattices[i][(idx / strides[i]) % sizes[i]]);
    return StrategyProfile(std::move(strategies));
  };

  // A best response depends only on the opponents' strategies, so compute one
  // per (player, opponents) combination; the player's own slot is pinned to 0.
  std::vector<std::vector<double>> br(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t count = total / sizes[i];
    br[i].resize(count);
    std::vector<std::size_t> opp_strides(n, 0);
    std::size_t os = 1;
    for (std::size_t j = n; j-- > 0;) {
      if (j == i) continue;
      opp_strides[j] = os;
      os *= sizes[j];
    }
    detail::parallel_for(count, threads, [&, i](std::size_t oi) {
      std::size_t idx = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) idx += ((oi / opp_strides[j]) % sizes[j]) * strides[j];
      }
      br[i][oi] = best_response_ser(game, utilities[i], profile_at(idx), i, cfg).value;
    });
  }

  std::vector<double> gains(total);
  detail::parallel_for(total, threads, [&](std::size_t idx) {
    const auto profile = profile_at(idx);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t oi = 0;
      std::size_t os = 1;
      for (std::size_t j = n; j-- > 0;) {
        if (j == i) continue;
        oi += ((idx / strides[j]) % sizes[j]) * os;
        os *= sizes[j];
      }
      const double current = ser_value(game, profile, i, utilities[i]);
      worst = std::max(worst, br[i][oi] - current);
    }
    gains[idx] = worst;
  });

  GridScanResult result;
  result.resolution = resolution;
  result.profiles_evaluated = total;
  std::size_t argmin = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (gains[idx] < gains[argmin]) argmin = idx;
    if (gains[idx] <= tol) {
      result.approx_equilibria.push_back(profile_at(idx));
      result.approx_gains.push_back(gains[idx]);
    }
  }
  result.min_max_gain = gains[argmin];
  result.argmin_profile = profile_at(argmin);
  return result;
}

}  // namespace monfg
