#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "monfg/game.hpp"

namespace monfg {

/// Probability entries must sum to one within this tolerance. Inputs outside
/// it are rejected, never renormalized.
inline constexpr double kProbabilitySumTolerance = 1e-9;

class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs);
  static MixedStrategy pure(std::size_t num_actions, std::size_t action);
  static MixedStrategy uniform(std::size_t num_actions);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t a) const { return probs_[a]; }
  const std::vector<double>& probs() const { return probs_; }

  bool operator==(const MixedStrategy&) const = default;

 private:
  std::vector<double> probs_;
};

/// One independent mixed strategy per player.
class StrategyProfile {
 public:
  explicit StrategyProfile(std::vector<MixedStrategy> strategies);
  static StrategyProfile pure(const Game& game, std::span<const std::size_t> joint);

  std::size_t num_players() const { return strategies_.size(); }
  const MixedStrategy& operator[](std::size_t player) const { return strategies_[player]; }
  const std::vector<MixedStrategy>& strategies() const { return strategies_; }
  StrategyProfile with(std::size_t player, MixedStrategy strategy) const;

  /// Throws ShapeMismatch unless arity and per-player lengths match the game.
  void check_against(const Game& game) const;

  bool operator==(const StrategyProfile&) const = default;

 private:
  std::vector<MixedStrategy> strategies_;
};

/// A joint distribution over action profiles, stored row-major.
class CorrelatedStrategy {
 public:
  CorrelatedStrategy(ActionSpace space, std::vector<double> probs);
  static CorrelatedStrategy point_mass(const ActionSpace& space, std::span<const std::size_t> joint);
  static CorrelatedStrategy product_of(const Game& game, const StrategyProfile& profile);

  const ActionSpace& space() const { return space_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t joint_index) const { return probs_[joint_index]; }
  const std::vector<double>& probs() const { return probs_; }

  /// Probability that `player` is recommended each of its actions.
  std::vector<double> marginal(std::size_t player) const;

  void check_against(const Game& game) const;

  bool operator==(const CorrelatedStrategy&) const = default;

 private:
  ActionSpace space_;
  std::vector<double> probs_;
};

/// A total map from one player's recommended actions to played actions.
struct StrategyModification {
  std::size_t player = 0;
  std::vector<std::size_t> map;

  static StrategyModification identity(std::size_t player, std::size_t num_actions);
  static StrategyModification swap(std::size_t player, std::size_t num_actions, std::size_t from,
                                   std::size_t to);

  void check_against(const Game& game) const;

  bool operator==(const StrategyModification&) const = default;
};

}  // namespace monfg
