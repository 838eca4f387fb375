#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "monfg/game.hpp"
#include "monfg/optim.hpp"
#include "monfg/strategy.hpp"
#include "monfg/utility.hpp"

namespace monfg {

enum class SignalMode { None, SingleSignal, MultiSignal };

std::string_view to_string(SignalMode mode);
/// Accepts "none", "single", "multi".
SignalMode parse_signal_mode(std::string_view s);

using Rng = std::mt19937_64;

/// Uniform draw in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(Rng& rng);

/// q + alpha * (p - q), componentwise.
PayoffVector q_update(std::span<const double> q, std::span<const double> p, double alpha);

/// One independent learner: a vector-valued estimate per (signal, own action).
struct AgentState {
  AgentState(std::size_t num_signals, std::size_t num_actions, std::size_t num_objectives,
             std::vector<double> own_marginals = {});

  std::size_t num_signals;
  std::size_t num_actions;
  std::size_t num_objectives;
  /// Flat [signal][action][objective], zero-initialized.
  std::vector<double> q;
  double epsilon = 0.0;
  /// Probability of each own recommendation (multi-signal agents only).
  std::vector<double> own_marginals;

  std::span<const double> q_at(std::size_t signal, std::size_t action) const {
    return {q.data() + (signal * num_actions + action) * num_objectives, num_objectives};
  }
  void update(std::size_t signal, std::size_t action, std::span<const double> payoff, double alpha);
};

/// The agent's SER-optimal mixed strategy for `signal` under its current
/// estimates. MultiSignal agents optimize one response per delivered signal
/// jointly against their own recommendation marginals.
MixedStrategy optimal_mixed_strategy(const AgentState& agent, const UtilitySpec& u,
                                     SignalMode mode, std::size_t signal, const OptConfig& cfg);

/// The strategy a greedy agent plays: optimal_mixed_strategy, except that a
/// pure optimum is replaced by a uniformly drawn member of the set of pure
/// actions attaining the same value. Always consumes one draw from `rng`.
MixedStrategy greedy_strategy(const AgentState& agent, const UtilitySpec& u, SignalMode mode,
                              std::size_t signal, const OptConfig& cfg, Rng& rng);

/// With probability 1 - epsilon samples `strategy`, otherwise a uniform action.
/// Always consumes exactly two draws from `rng`.
std::size_t select_action(const MixedStrategy& strategy, double epsilon, Rng& rng);

struct ExperimentConfig {
  ExperimentConfig(Game g, std::vector<UtilitySpec> u) : game(std::move(g)), utilities(std::move(u)) {}

  Game game;
  std::vector<UtilitySpec> utilities;
  SignalMode signal_mode = SignalMode::None;
  std::optional<CorrelatedStrategy> correlated_strategy;
  std::size_t trials = 100;
  std::size_t episodes = 10000;
  /// Episodes at the start of signal-mode trials in which agents obey recommendations.
  std::size_t follow_episodes = 500;
  double alpha = 0.05;
  double epsilon_initial = 0.1;
  double epsilon_decay = 0.999;
  std::uint64_t base_seed = 0;
  OptConfig opt_config;
  std::size_t action_window = 100;
  std::size_t final_window = 1000;

  /// Throws ConfigInvalid.
  void validate() const;
};

/// Everything one trial produced, per episode.
struct TrialTrace {
  std::size_t episodes = 0;
  std::size_t num_agents = 0;
  std::size_t num_objectives = 0;
  /// [episode][agent]
  std::vector<std::size_t> actions;
  std::vector<std::size_t> signals;
  std::vector<double> scalarised;
  /// [episode][agent][objective]
  std::vector<double> payoffs;
  /// Exploration rate in force during each episode.
  std::vector<double> epsilon;
  std::vector<AgentState> final_agents;

  std::size_t action(std::size_t e, std::size_t i) const { return actions[e * num_agents + i]; }
  std::size_t signal(std::size_t e, std::size_t i) const { return signals[e * num_agents + i]; }
  double scalarised_payoff(std::size_t e, std::size_t i) const { return scalarised[e * num_agents + i]; }
  std::span<const double> payoff(std::size_t e, std::size_t i) const {
    return {payoffs.data() + (e * num_agents + i) * num_objectives, num_objectives};
  }
};

/// Runs trial `trial_index` with its generator seeded by base_seed + trial_index.
TrialTrace run_trial(const ExperimentConfig& cfg, std::size_t trial_index);

/// Cross-trial aggregates. Standard deviations are population deviations
/// across trials.
struct ExperimentMetrics {
  std::size_t trials = 0;
  std::size_t episodes = 0;
  std::size_t num_agents = 0;
  std::size_t final_window = 0;
  std::vector<std::size_t> num_actions;

  /// [episode][agent]
  std::vector<double> payoff_mean;
  std::vector<double> payoff_std;
  /// Per agent, [episode][action]: sliding-window action frequencies.
  std::vector<std::vector<double>> action_mean;
  std::vector<std::vector<double>> action_std;
  /// Joint-action frequencies over the final window, averaged across trials.
  std::vector<double> joint_last;
  /// Per agent: mean scalarised payoff over the final window, averaged across trials.
  std::vector<double> final_payoff_mean;

  /// Per trial: final-window joint distribution and per-agent mean payoff.
  std::vector<std::vector<double>> trial_joint_last;
  std::vector<std::vector<double>> trial_final_payoff;
  /// Per trial: joint action carrying >= 0.9 of the final-window mass, if any.
  std::vector<std::optional<std::size_t>> trial_convergence;
  /// Per trial: fraction of final-window episodes in which every agent played
  /// its recommendation (signal modes only; empty otherwise).
  std::vector<double> trial_recommendation_agreement;

  double convergence_fraction() const;
  /// Final-window marginal strategy of `agent` in trial `t`.
  std::vector<double> trial_marginal(std::size_t t, std::size_t agent,
                                     const ActionSpace& space) const;
};

inline constexpr double kConvergenceMass = 0.9;

ExperimentMetrics run_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

/// Writes payoffs.csv, actions_agent<i>.csv, joint_last1000.csv and summary.json.
void write_metrics(const ExperimentMetrics& metrics, const ExperimentConfig& cfg,
                   const std::filesystem::path& dir);

/// Game, utilities and correlated strategy may be catalog names or inline JSON.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);

}  // namespace monfg
