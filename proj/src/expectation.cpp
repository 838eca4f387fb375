#include "monfg/expectation.hpp"

#include <string>

#include "monfg/error.hpp"

namespace monfg {

namespace {

void check_player(const Game& game, std::size_t player) {
  if (player >= game.num_players()) {
    throw Error(ErrorKind::ShapeMismatch, "player index " + std::to_string(player) +
                                              " out of range for a " +
                                              std::to_string(game.num_players()) + "-player game");
  }
}

void accumulate(PayoffVector& acc, double weight, std::span<const double> p) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += weight * p[k];
}

double profile_weight(const ActionSpace& space, const StrategyProfile& profile, std::size_t k) {
  double w = 1.0;
  for (std::size_t j = 0; j < space.num_players(); ++j) w *= profile[j][space.action_of(k, j)];
  return w;
}

}  // namespace

PayoffVector expected_payoff_profile(const Game& game, const StrategyProfile& profile,
                                     std::size_t player) {
  profile.check_against(game);
  check_player(game, player);
  const auto& space = game.space();
  PayoffVector acc(game.num_objectives(), 0.0);
  for (std::size_t k = 0; k < space.size(); ++k) {
    const double w = profile_weight(space, profile, k);
    if (w != 0.0) accumulate(acc, w, game.payoff(k, player));
  }
  return acc;
}

PayoffVector expected_payoff_correlated(const Game& game, const CorrelatedStrategy& sigma,
                                        std::size_t player) {
  sigma.check_against(game);
  check_player(game, player);
  PayoffVector acc(game.num_objectives(), 0.0);
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (sigma[k] != 0.0) accumulate(acc, sigma[k], game.payoff(k, player));
  }
  return acc;
}

PayoffVector expected_payoff_modified(const Game& game, const CorrelatedStrategy& sigma,
                                      const StrategyModification& mod) {
  sigma.check_against(game);
  mod.check_against(game);
  const auto& space = game.space();
  PayoffVector acc(game.num_objectives(), 0.0);
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (sigma[k] == 0.0) continue;
    const std::size_t played = mod.map[space.action_of(k, mod.player)];
    accumulate(acc, sigma[k], game.payoff(space.with_action(k, mod.player, played), mod.player));
  }
  return acc;
}

PayoffVector conditional_expected_payoff(const Game& game, const CorrelatedStrategy& sigma,
                                         std::size_t player, std::size_t recommended,
                                         std::size_t response) {
  sigma.check_against(game);
  check_player(game, player);
  const auto& space = game.space();
  if (recommended >= space.num_actions(player) || response >= space.num_actions(player)) {
    throw Error(ErrorKind::ShapeMismatch, "action out of range");
  }
  PayoffVector acc(game.num_objectives(), 0.0);
  double mass = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (sigma[k] == 0.0 || space.action_of(k, player) != recommended) continue;
    mass += sigma[k];
    accumulate(acc, sigma[k], game.payoff(space.with_action(k, player, response), player));
  }
  if (mass <= 0.0) {
    throw Error(ErrorKind::ZeroMarginal, "action " + std::to_string(recommended) +
                                             " is never recommended to player " +
                                             std::to_string(player));
  }
  for (double& v : acc) v /= mass;
  return acc;
}

std::vector<PayoffVector> action_payoff_vectors(const Game& game, const StrategyProfile& profile,
                                                std::size_t player) {
  profile.check_against(game);
  check_player(game, player);
  const auto& space = game.space();
  const std::size_t k_own = space.num_actions(player);
  std::vector<PayoffVector> rows(k_own, PayoffVector(game.num_objectives(), 0.0));
  for (std::size_t k = 0; k < space.size(); ++k) {
    double w = 1.0;
    for (std::size_t j = 0; j < space.num_players(); ++j) {
      if (j != player) w *= profile[j][space.action_of(k, j)];
    }
    if (w != 0.0) accumulate(rows[space.action_of(k, player)], w, game.payoff(k, player));
  }
  return rows;
}

double esr_value(const Game& game, const StrategyProfile& profile, std::size_t player,
                 const UtilitySpec& u) {
  profile.check_against(game);
  check_player(game, player);
  const auto& space = game.space();
  double acc = 0.0;
  for (std::size_t k = 0; k < space.size(); ++k) {
    const double w = profile_weight(space, profile, k);
    if (w != 0.0) acc += w * utility_eval(u, game.payoff(k, player));
  }
  return acc;
}

double esr_value_correlated(const Game& game, const CorrelatedStrategy& sigma, std::size_t player,
                            const UtilitySpec& u) {
  sigma.check_against(game);
  check_player(game, player);
  double acc = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (sigma[k] != 0.0) acc += sigma[k] * utility_eval(u, game.payoff(k, player));
  }
  return acc;
}

double esr_value_modified(const Game& game, const CorrelatedStrategy& sigma,
                          const StrategyModification& mod, const UtilitySpec& u) {
  sigma.check_against(game);
  mod.check_against(game);
  const auto& space = game.space();
  double acc = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (sigma[k] == 0.0) continue;
    const std::size_t played = mod.map[space.action_of(k, mod.player)];
    acc += sigma[k] *
           utility_eval(u, game.payoff(space.with_action(k, mod.player, played), mod.player));
  }
  return acc;
}

double ser_value(const Game& game, const StrategyProfile& profile, std::size_t player,
                 const UtilitySpec& u) {
  return utility_eval(u, expected_payoff_profile(game, profile, player));
}

}  // namespace monfg
