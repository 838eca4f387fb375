#include "monfg/strategy.hpp"

#include <cmath>
#include <string>

#include "monfg/error.hpp"

namespace monfg {

namespace {

void check_distribution(const std::vector<double>& probs, const char* what) {
  if (probs.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " is empty");
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(what) + " has an entry outside [0,1]: " + std::to_string(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " sums to " + std::to_string(sum) + ", not 1");
  }
}

}  // namespace

MixedStrategy::MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  check_distribution(probs_, "mixed strategy");
}

MixedStrategy MixedStrategy::pure(std::size_t num_actions, std::size_t action) {
  if (action >= num_actions) throw Error(ErrorKind::InvalidArgument, "pure action out of range");
  std::vector<double> p(num_actions, 0.0);
  p[action] = 1.0;
  return MixedStrategy(std::move(p));
}

MixedStrategy MixedStrategy::uniform(std::size_t num_actions) {
  return MixedStrategy(std::vector<double>(num_actions, 1.0 / static_cast<double>(num_actions)));
}

StrategyProfile::StrategyProfile(std::vector<MixedStrategy> strategies)
    : strategies_(std::move(strategies)) {}

StrategyProfile StrategyProfile::pure(const Game& game, std::span<const std::size_t> joint) {
  game.space().index(joint);  // validates
  std::vector<MixedStrategy> s;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    s.push_back(MixedStrategy::pure(game.num_actions(i), joint[i]));
  }
  return StrategyProfile(std::move(s));
}

StrategyProfile StrategyProfile::with(std::size_t player, MixedStrategy strategy) const {
  StrategyProfile out = *this;
  out.strategies_.at(player) = std::move(strategy);
  return out;
}

void StrategyProfile::check_against(const Game& game) const {
  if (strategies_.size() != game.num_players()) {
    throw Error(ErrorKind::ShapeMismatch, "profile has " + std::to_string(strategies_.size()) +
                                              " strategies for a " +
                                              std::to_string(game.num_players()) + "-player game");
  }
  for (std::size_t i = 0; i < strategies_.size(); ++i) {
    if (strategies_[i].size() != game.num_actions(i)) {
      throw Error(ErrorKind::ShapeMismatch,
                  "strategy of player " + std::to_string(i) + " has " +
                      std::to_string(strategies_[i].size()) + " entries, expected " +
                      std::to_string(game.num_actions(i)));
    }
  }
}

CorrelatedStrategy::CorrelatedStrategy(ActionSpace space, std::vector<double> probs)
    : space_(std::move(space)), probs_(std::move(probs)) {
  if (probs_.size() != space_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "correlated strategy has " +
                                              std::to_string(probs_.size()) +
                                              " entries, expected " + std::to_string(space_.size()));
  }
  check_distribution(probs_, "correlated strategy");
}

CorrelatedStrategy CorrelatedStrategy::point_mass(const ActionSpace& space,
                                                  std::span<const std::size_t> joint) {
  std::vector<double> p(space.size(), 0.0);
  p[space.index(joint)] = 1.0;
  return CorrelatedStrategy(space, std::move(p));
}

CorrelatedStrategy CorrelatedStrategy::product_of(const Game& game, const StrategyProfile& profile) {
  profile.check_against(game);
  const auto& space = game.space();
  std::vector<double> p(space.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < space.size(); ++k) {
    double w = 1.0;
    for (std::size_t i = 0; i < space.num_players(); ++i) w *= profile[i][space.action_of(k, i)];
    p[k] = w;
    sum += w;
  }
  // Products of valid marginals only drift by rounding; absorb it into the largest cell.
  std::size_t big = 0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p[k] > p[big]) big = k;
  }
  p[big] += 1.0 - sum;
  if (p[big] < 0.0) p[big] = 0.0;
  return CorrelatedStrategy(space, std::move(p));
}

std::vector<double> CorrelatedStrategy::marginal(std::size_t player) const {
  std::vector<double> m(space_.num_actions(player), 0.0);
  for (std::size_t k = 0; k < probs_.size(); ++k) m[space_.action_of(k, player)] += probs_[k];
  return m;
}

void CorrelatedStrategy::check_against(const Game& game) const {
  if (!(space_ == game.space())) {
    throw Error(ErrorKind::ShapeMismatch, "correlated strategy shape does not match the game");
  }
}

StrategyModification StrategyModification::identity(std::size_t player, std::size_t num_actions) {
  StrategyModification m{player, std::vector<std::size_t>(num_actions)};
  for (std::size_t a = 0; a < num_actions; ++a) m.map[a] = a;
  return m;
}

StrategyModification StrategyModification::swap(std::size_t player, std::size_t num_actions,
                                                std::size_t from, std::size_t to) {
  auto m = identity(player, num_actions);
  m.map.at(from) = to;
  return m;
}

void StrategyModification::check_against(const Game& game) const {
  if (player >= game.num_players()) {
    throw Error(ErrorKind::ShapeMismatch, "modification for unknown player " + std::to_string(player));
  }
  const std::size_t k = game.num_actions(player);
  if (map.size() != k) {
    throw Error(ErrorKind::ShapeMismatch, "modification must map all " + std::to_string(k) +
                                              " actions of player " + std::to_string(player));
  }
  for (std::size_t a : map) {
    if (a >= k) throw Error(ErrorKind::ShapeMismatch, "modification maps outside the action set");
  }
}

}  // namespace monfg
