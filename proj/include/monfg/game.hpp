#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace monfg {

using PayoffVector = std::vector<double>;
using JointAction = std::vector<std::size_t>;

/// Row-major indexing over a joint-action space: the first player's action is
/// the most significant digit, matching nested arrays indexed [a_1][a_2]...
class ActionSpace {
 public:
  ActionSpace() = default;
  explicit ActionSpace(std::vector<std::size_t> action_counts);

  std::size_t num_players() const { return counts_.size(); }
  std::size_t num_actions(std::size_t player) const { return counts_.at(player); }
  const std::vector<std::size_t>& action_counts() const { return counts_; }
  std::size_t size() const { return size_; }

  std::size_t index(std::span<const std::size_t> joint) const;
  JointAction unravel(std::size_t index) const;
  std::size_t stride(std::size_t player) const { return strides_[player]; }
  std::size_t action_of(std::size_t index, std::size_t player) const {
    return (index / strides_[player]) % counts_[player];
  }
  /// Index of the profile obtained by replacing `player`'s action in `index`.
  std::size_t with_action(std::size_t index, std::size_t player, std::size_t action) const {
    return index - action_of(index, player) * strides_[player] + action * strides_[player];
  }

  bool operator==(const ActionSpace&) const = default;

 private:
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// A finite multi-objective normal-form game. Each joint action maps to one
/// payoff vector per player, all of length `num_objectives()`.
class Game {
 public:
  /// `payoffs` is flat: [joint index][player][objective].
  Game(std::size_t num_objectives, std::vector<std::vector<std::string>> action_labels,
       std::vector<double> payoffs);

  /// Labels default to "a0", "a1", ...
  static Game from_counts(std::size_t num_objectives, std::vector<std::size_t> action_counts,
                          std::vector<double> payoffs);

  std::size_t num_players() const { return space_.num_players(); }
  std::size_t num_objectives() const { return num_objectives_; }
  std::size_t num_actions(std::size_t player) const { return space_.num_actions(player); }
  const std::vector<std::size_t>& action_counts() const { return space_.action_counts(); }
  const ActionSpace& space() const { return space_; }
  const std::vector<std::vector<std::string>>& action_labels() const { return labels_; }
  const std::vector<double>& flat_payoffs() const { return payoffs_; }

  std::span<const double> payoff(std::size_t joint_index, std::size_t player) const {
    return {payoffs_.data() + (joint_index * num_players() + player) * num_objectives_,
            num_objectives_};
  }
  std::span<const double> payoff(std::span<const std::size_t> joint, std::size_t player) const {
    return payoff(space_.index(joint), player);
  }

  std::size_t action_index(std::size_t player, const std::string& label) const;
  std::string joint_label(std::size_t joint_index, char separator = '|') const;

  bool operator==(const Game&) const = default;

 private:
  ActionSpace space_;
  std::size_t num_objectives_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<double> payoffs_;
};

}  // namespace monfg
