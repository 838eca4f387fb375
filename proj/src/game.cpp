#include "monfg/game.hpp"

#include <cmath>

#include "monfg/error.hpp"

namespace monfg {

ActionSpace::ActionSpace(std::vector<std::size_t> action_counts)
    : counts_(std::move(action_counts)), strides_(counts_.size()) {
  size_ = 1;
  for (std::size_t i = counts_.size(); i-- > 0;) {
    if (counts_[i] == 0) {
      throw Error(ErrorKind::InvalidArgument, "player " + std::to_string(i) + " has no actions");
    }
    strides_[i] = size_;
    size_ *= counts_[i];
  }
}

std::size_t ActionSpace::index(std::span<const std::size_t> joint) const {
  if (joint.size() != counts_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "joint action has " + std::to_string(joint.size()) +
                                              " entries, expected " +
                                              std::to_string(counts_.size()));
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (joint[i] >= counts_[i]) {
      throw Error(ErrorKind::ShapeMismatch, "action " + std::to_string(joint[i]) +
                                                " out of range for player " + std::to_string(i));
    }
    idx += joint[i] * strides_[i];
  }
  return idx;
}

JointAction ActionSpace::unravel(std::size_t index) const {
  JointAction joint(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) joint[i] = action_of(index, i);
  return joint;
}

namespace {

std::vector<std::size_t> counts_of(const std::vector<std::vector<std::string>>& labels) {
  std::vector<std::size_t> counts;
  counts.reserve(labels.size());
  for (const auto& l : labels) counts.push_back(l.size());
  return counts;
}

}  // namespace

Game::Game(std::size_t num_objectives, std::vector<std::vector<std::string>> action_labels,
           std::vector<double> payoffs)
    : space_(counts_of(action_labels)),
      num_objectives_(num_objectives),
      labels_(std::move(action_labels)),
      payoffs_(std::move(payoffs)) {
  if (space_.num_players() < 2) {
    throw Error(ErrorKind::InvalidArgument, "a game needs at least 2 players");
  }
  if (num_objectives_ < 1) {
    throw Error(ErrorKind::InvalidArgument, "a game needs at least 1 objective");
  }
  const std::size_t expected = space_.size() * space_.num_players() * num_objectives_;
  if (payoffs_.size() != expected) {
    throw Error(ErrorKind::ShapeMismatch, "payoff table has " + std::to_string(payoffs_.size()) +
                                              " entries, expected " + std::to_string(expected));
  }
  for (double v : payoffs_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "payoff entries must be finite");
  }
}

Game Game::from_counts(std::size_t num_objectives, std::vector<std::size_t> action_counts,
                       std::vector<double> payoffs) {
  std::vector<std::vector<std::string>> labels(action_counts.size());
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    for (std::size_t a = 0; a < action_counts[i]; ++a) labels[i].push_back("a" + std::to_string(a));
  }
  return Game(num_objectives, std::move(labels), std::move(payoffs));
}

std::size_t Game::action_index(std::size_t player, const std::string& label) const {
  const auto& l = labels_.at(player);
  for (std::size_t a = 0; a < l.size(); ++a) {
    if (l[a] == label) return a;
  }
  throw Error(ErrorKind::InvalidArgument,
              "player " + std::to_string(player) + " has no action '" + label + "'");
}

std::string Game::joint_label(std::size_t joint_index, char separator) const {
  std::string out;
  for (std::size_t i = 0; i < num_players(); ++i) {
    if (i) out += separator;
    out += labels_[i][space_.action_of(joint_index, i)];
  }
  return out;
}

}  // namespace monfg
