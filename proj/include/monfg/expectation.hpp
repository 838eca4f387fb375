#pragma once

#include <cstddef>

#include "monfg/game.hpp"
#include "monfg/strategy.hpp"
#include "monfg/utility.hpp"

// Expected payoff vectors and expected utilities. Every sum runs over the
// joint-action table in row-major order, so results are bit-reproducible.

namespace monfg {

/// E[p_i] under independent mixing.
PayoffVector expected_payoff_profile(const Game& game, const StrategyProfile& profile,
                                     std::size_t player);

/// E[p_i] under a joint distribution.
PayoffVector expected_payoff_correlated(const Game& game, const CorrelatedStrategy& sigma,
                                        std::size_t player);

/// E[p_i] when `mod.player` replaces every recommendation a by mod.map[a].
PayoffVector expected_payoff_modified(const Game& game, const CorrelatedStrategy& sigma,
                                      const StrategyModification& mod);

/// E[p_i | i is told `recommended`, then plays `response`]. Throws ZeroMarginal
/// when `recommended` is never delivered.
PayoffVector conditional_expected_payoff(const Game& game, const CorrelatedStrategy& sigma,
                                         std::size_t player, std::size_t recommended,
                                         std::size_t response);

/// Payoff vector of each own action against the opponents' mixing; row a is
/// E[p_i(a, a_-i)]. The player's own entry in `profile` is ignored.
std::vector<PayoffVector> action_payoff_vectors(const Game& game, const StrategyProfile& profile,
                                                std::size_t player);

/// E[u(p_i)] under independent mixing (utility applied before the expectation).
double esr_value(const Game& game, const StrategyProfile& profile, std::size_t player,
                 const UtilitySpec& u);

double esr_value_correlated(const Game& game, const CorrelatedStrategy& sigma, std::size_t player,
                            const UtilitySpec& u);

double esr_value_modified(const Game& game, const CorrelatedStrategy& sigma,
                          const StrategyModification& mod, const UtilitySpec& u);

/// u(E[p_i]) under independent mixing.
double ser_value(const Game& game, const StrategyProfile& profile, std::size_t player,
                 const UtilitySpec& u);

}  // namespace monfg
