#include "monfg/learning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "monfg/catalog.hpp"
#include "monfg/equilibrium.hpp"
#include "monfg/error.hpp"
#include "monfg/io.hpp"
#include "parallel.hpp"

namespace monfg {

std::string_view to_string(SignalMode mode) {
  switch (mode) {
    case SignalMode::None: return "none";
    case SignalMode::SingleSignal: return "single";
    case SignalMode::MultiSignal: return "multi";
  }
  return "none";
}

SignalMode parse_signal_mode(std::string_view s) {
  if (s == "none") return SignalMode::None;
  if (s == "single") return SignalMode::SingleSignal;
  if (s == "multi") return SignalMode::MultiSignal;
  throw Error(ErrorKind::ConfigInvalid,
              "signal mode must be none, single or multi, got '" + std::string(s) + "'");
}

double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

PayoffVector q_update(std::span<const double> q, std::span<const double> p, double alpha) {
  if (q.size() != p.size()) {
    throw Error(ErrorKind::ShapeMismatch, "estimate has length " + std::to_string(q.size()) +
                                              " but payoff has length " + std::to_string(p.size()));
  }
  PayoffVector out(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) out[j] = q[j] + alpha * (p[j] - q[j]);
  return out;
}

AgentState::AgentState(std::size_t signals, std::size_t actions, std::size_t objectives,
                       std::vector<double> marginals)
    : num_signals(signals),
      num_actions(actions),
      num_objectives(objectives),
      q(signals * actions * objectives, 0.0),
      own_marginals(std::move(marginals)) {
  if (signals == 0 || actions == 0 || objectives == 0) {
    throw Error(ErrorKind::InvalidArgument, "agent needs at least one signal, action and objective");
  }
  if (!own_marginals.empty() && own_marginals.size() != signals) {
    throw Error(ErrorKind::ShapeMismatch, "one marginal per signal required");
  }
}

void AgentState::update(std::size_t signal, std::size_t action, std::span<const double> payoff,
                        double alpha) {
  if (signal >= num_signals || action >= num_actions) {
    throw Error(ErrorKind::InvalidArgument, "signal or action out of range");
  }
  if (payoff.size() != num_objectives) {
    throw Error(ErrorKind::ShapeMismatch, "payoff length differs from the estimate length");
  }
  double* entry = q.data() + (signal * num_actions + action) * num_objectives;
  for (std::size_t j = 0; j < num_objectives; ++j) entry[j] += alpha * (payoff[j] - entry[j]);
}

namespace {

// Maximizes u(sum_b m_b * sum_a x_{b,a} * rows_b[a]) over one simplex per block.
// `rows` is flat [block][action][objective].
OptResult maximize_blocks(const std::vector<double>& rows, const std::vector<double>& weights,
                          std::size_t k, std::size_t d, const UtilitySpec& u,
                          const OptConfig& cfg) {
  const std::size_t blocks = weights.size();
  const std::size_t n = blocks * k;
  auto mix = [&](std::span<const double> x, std::vector<double>& y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      const double w = weights[c / k] * x[c];
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) y[j] += w * rows[c * d + j];
    }
  };
  Objective f = [&, y = std::vector<double>(d)](std::span<const double> x) mutable {
    mix(x, y);
    return utility_eval(u, y);
  };
  Gradient g;
  if (u.differentiable()) {
    g = [&, y = std::vector<double>(d)](std::span<const double> x, std::span<double> out) mutable {
      mix(x, y);
      const auto gy = utility_grad(u, y);
      for (std::size_t c = 0; c < n; ++c) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += rows[c * d + j] * gy[j];
        out[c] = weights[c / k] * s;
      }
    };
  }
  if (blocks == 1) return maximize_over_simplex(f, g, k, cfg);
  const std::vector<std::size_t> sizes(blocks, k);
  return maximize_over_simplices(f, g, sizes, cfg, 27);
}

}  // namespace

namespace {

// Optimum over every relevant block, plus the position of `signal`'s block.
struct BlockOptimum {
  OptResult result;
  std::vector<double> rows;
  std::vector<double> weights;
  std::size_t block = 0;
};

BlockOptimum optimize_for_signal(const AgentState& agent, const UtilitySpec& u, SignalMode mode,
                                 std::size_t signal, const OptConfig& cfg) {
  if (signal >= agent.num_signals) throw Error(ErrorKind::InvalidArgument, "signal out of range");
  u.check_dimension(agent.num_objectives);
  const std::size_t k = agent.num_actions;
  const std::size_t d = agent.num_objectives;
  BlockOptimum out;
  auto append_block = [&](std::size_t s, double weight) {
    const auto first = agent.q.begin() + static_cast<std::ptrdiff_t>(s * k * d);
    out.rows.insert(out.rows.end(), first, first + static_cast<std::ptrdiff_t>(k * d));
    out.weights.push_back(weight);
  };
  if (mode != SignalMode::MultiSignal) {
    append_block(signal, 1.0);
  } else {
    if (agent.own_marginals.size() != agent.num_signals) {
      throw Error(ErrorKind::ShapeMismatch, "multi-signal agents need one marginal per signal");
    }
    if (!(agent.own_marginals[signal] > 0.0)) {
      throw Error(ErrorKind::ZeroMarginal,
                  "signal " + std::to_string(signal) + " is never delivered");
    }
    for (std::size_t s = 0; s < agent.num_signals; ++s) {
      if (!(agent.own_marginals[s] > 0.0)) continue;
      if (s == signal) out.block = out.weights.size();
      append_block(s, agent.own_marginals[s]);
    }
  }
  out.result = maximize_blocks(out.rows, out.weights, k, d, u, cfg);
  return out;
}

std::vector<double> block_of(const BlockOptimum& opt, std::size_t k) {
  const auto first = opt.result.point.begin() + static_cast<std::ptrdiff_t>(opt.block * k);
  std::vector<double> block(first, first + static_cast<std::ptrdiff_t>(k));
  // Projection keeps each block on the simplex up to rounding; restore the sum exactly.
  double sum = 0.0;
  for (double v : block) sum += v;
  for (double& v : block) v /= sum;
  return block;
}

}  // namespace

MixedStrategy optimal_mixed_strategy(const AgentState& agent, const UtilitySpec& u,
                                     SignalMode mode, std::size_t signal, const OptConfig& cfg) {
  if (agent.num_actions == 1) return MixedStrategy::pure(1, 0);
  return MixedStrategy(block_of(optimize_for_signal(agent, u, mode, signal, cfg), agent.num_actions));
}

MixedStrategy greedy_strategy(const AgentState& agent, const UtilitySpec& u, SignalMode mode,
                              std::size_t signal, const OptConfig& cfg, Rng& rng) {
  const double draw = unit_uniform(rng);
  const std::size_t k = agent.num_actions;
  if (k == 1) return MixedStrategy::pure(1, 0);
  const auto opt = optimize_for_signal(agent, u, mode, signal, cfg);
  auto block = block_of(opt, k);
  const auto top = std::max_element(block.begin(), block.end());
  if (*top != 1.0) return MixedStrategy(std::move(block));

  // Pure optimum: collect every pure action that is equally good with the
  // other blocks held at their optimum.
  const std::size_t d = agent.num_objectives;
  const double best = opt.result.value;
  const double slack = 1e-12 * (1.0 + std::abs(best));
  std::vector<double> y(d, 0.0);
  for (std::size_t b = 0; b < opt.weights.size(); ++b) {
    if (b == opt.block) continue;
    for (std::size_t a = 0; a < k; ++a) {
      const double w = opt.weights[b] * opt.result.point[b * k + a];
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) y[j] += w * opt.rows[(b * k + a) * d + j];
    }
  }
  std::vector<std::size_t> tied;
  std::vector<double> z(d);
  const double w = opt.weights[opt.block];
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t j = 0; j < d; ++j) z[j] = y[j] + w * opt.rows[(opt.block * k + a) * d + j];
    if (utility_eval(u, z) >= best - slack) tied.push_back(a);
  }
  if (tied.size() <= 1) return MixedStrategy(std::move(block));
  const auto pick = std::min(static_cast<std::size_t>(draw * static_cast<double>(tied.size())),
                             tied.size() - 1);
  return MixedStrategy::pure(k, tied[pick]);
}

std::size_t select_action(const MixedStrategy& strategy, double epsilon, Rng& rng) {
  const double explore = unit_uniform(rng);
  const double pick = unit_uniform(rng);
  const std::size_t k = strategy.size();
  if (explore < epsilon) {
    return std::min(static_cast<std::size_t>(pick * static_cast<double>(k)), k - 1);
  }
  double cum = 0.0;
  std::size_t last_support = 0;
  for (std::size_t a = 0; a < k; ++a) {
    if (strategy[a] <= 0.0) continue;
    cum += strategy[a];
    last_support = a;
    if (pick < cum) return a;
  }
  return last_support;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::ConfigInvalid, msg); };
  if (utilities.size() != game.num_players()) {
    fail("expected " + std::to_string(game.num_players()) + " utilities, got " +
         std::to_string(utilities.size()));
  }
  for (const auto& u : utilities) u.check_dimension(game.num_objectives());
  if (trials == 0) fail("trials must be positive");
  if (episodes == 0) fail("episodes must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha must lie in (0, 1]");
  if (!(epsilon_initial >= 0.0 && epsilon_initial <= 1.0)) fail("epsilon_initial must lie in [0, 1]");
  if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0)) fail("epsilon_decay must lie in (0, 1]");
  if (action_window == 0) fail("action_window must be positive");
  if (final_window == 0) fail("final_window must be positive");
  opt_config.validate();
  if (signal_mode != SignalMode::None) {
    if (!correlated_strategy) fail("signal modes require a correlated_strategy");
    correlated_strategy->check_against(game);
    if (follow_episodes >= episodes) fail("follow_episodes must be smaller than episodes");
  }
}

TrialTrace run_trial(const ExperimentConfig& cfg, std::size_t trial_index) {
  cfg.validate();
  const Game& game = cfg.game;
  const std::size_t n = game.num_players();
  const std::size_t d = game.num_objectives();
  const std::size_t episodes = cfg.episodes;
  const bool signalled = cfg.signal_mode != SignalMode::None;
  const ActionSpace& space = game.space();

  std::vector<AgentState> agents;
  agents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = game.num_actions(i);
    if (!signalled) {
      agents.emplace_back(1, k, d);
    } else if (cfg.signal_mode == SignalMode::SingleSignal) {
      agents.emplace_back(k, k, d);
    } else {
      agents.emplace_back(k, k, d, cfg.correlated_strategy->marginal(i));
    }
  }

  std::vector<double> sigma_cdf;
  if (signalled) {
    const auto& probs = cfg.correlated_strategy->probs();
    sigma_cdf.resize(probs.size());
    double cum = 0.0;
    for (std::size_t c = 0; c < probs.size(); ++c) sigma_cdf[c] = cum += probs[c];
  }
  auto draw_recommendation = [&](Rng& rng) {
    const double x = unit_uniform(rng);
    const auto& probs = cfg.correlated_strategy->probs();
    std::size_t last_support = 0;
    for (std::size_t c = 0; c < sigma_cdf.size(); ++c) {
      if (probs[c] <= 0.0) continue;
      last_support = c;
      if (x < sigma_cdf[c]) return c;
    }
    return last_support;
  };

  TrialTrace trace;
  trace.episodes = episodes;
  trace.num_agents = n;
  trace.num_objectives = d;
  trace.actions.resize(episodes * n);
  trace.signals.resize(episodes * n, 0);
  trace.scalarised.resize(episodes * n);
  trace.payoffs.resize(episodes * n * d);
  trace.epsilon.resize(episodes);

  Rng rng(cfg.base_seed + trial_index);
  const std::size_t follow = signalled ? cfg.follow_episodes : 0;
  double epsilon = cfg.epsilon_initial;
  JointAction joint(n);
  std::vector<std::size_t> signals(n, 0);

  for (std::size_t e = 0; e < episodes; ++e) {
    const bool following = e < follow;
    if (signalled) {
      const std::size_t rec = draw_recommendation(rng);
      for (std::size_t i = 0; i < n; ++i) signals[i] = space.action_of(rec, i);
    }
    const double eps_now = following ? 0.0 : epsilon;
    trace.epsilon[e] = eps_now;
    for (std::size_t i = 0; i < n; ++i) {
      agents[i].epsilon = eps_now;
      if (following) {
        joint[i] = signals[i];
      } else {
        const auto strategy = greedy_strategy(agents[i], cfg.utilities[i], cfg.signal_mode,
                                              signals[i], cfg.opt_config, rng);
        joint[i] = select_action(strategy, eps_now, rng);
      }
    }
    const std::size_t idx = space.index(joint);
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = game.payoff(idx, i);
      agents[i].update(signals[i], joint[i], p, cfg.alpha);
      trace.actions[e * n + i] = joint[i];
      trace.signals[e * n + i] = signals[i];
      trace.scalarised[e * n + i] = utility_eval(cfg.utilities[i], p);
      std::copy(p.begin(), p.end(), trace.payoffs.begin() + static_cast<std::ptrdiff_t>((e * n + i) * d));
    }
    if (!following) epsilon *= cfg.epsilon_decay;
  }
  trace.final_agents = std::move(agents);
  return trace;
}

namespace {

// What the aggregate needs from one trial; keeps memory at O(episodes) per trial.
struct TrialSummary {
  std::vector<double> scalarised;                // [episode][agent]
  std::vector<std::vector<double>> window_freq;  // per agent, [episode][action]
  std::vector<double> joint_last;
  std::vector<double> final_payoff;
  double agreement = 0.0;
};

TrialSummary summarize(const ExperimentConfig& cfg, const TrialTrace& trace) {
  const Game& game = cfg.game;
  const std::size_t n = trace.num_agents;
  const std::size_t episodes = trace.episodes;
  const std::size_t window = cfg.action_window;
  const std::size_t final_window = std::min(cfg.final_window, episodes);
  const std::size_t final_start = episodes - final_window;

  TrialSummary s;
  s.scalarised = trace.scalarised;
  s.window_freq.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = game.num_actions(i);
    std::vector<std::size_t> counts(k, 0);
    auto& freq = s.window_freq[i];
    freq.resize(episodes * k);
    for (std::size_t e = 0; e < episodes; ++e) {
      ++counts[trace.action(e, i)];
      if (e >= window) --counts[trace.action(e - window, i)];
      const double len = static_cast<double>(std::min(e + 1, window));
      for (std::size_t a = 0; a < k; ++a) freq[e * k + a] = static_cast<double>(counts[a]) / len;
    }
  }

  std::vector<std::size_t> joint_counts(game.space().size(), 0);
  std::vector<double> payoff_sum(n, 0.0);
  std::size_t agree = 0;
  JointAction joint(n);
  for (std::size_t e = final_start; e < episodes; ++e) {
    bool all_agree = true;
    for (std::size_t i = 0; i < n; ++i) {
      joint[i] = trace.action(e, i);
      payoff_sum[i] += trace.scalarised_payoff(e, i);
      if (joint[i] != trace.signal(e, i)) all_agree = false;
    }
    ++joint_counts[game.space().index(joint)];
    if (all_agree) ++agree;
  }
  const double len = static_cast<double>(final_window);
  s.joint_last.resize(joint_counts.size());
  for (std::size_t c = 0; c < joint_counts.size(); ++c) {
    s.joint_last[c] = static_cast<double>(joint_counts[c]) / len;
  }
  s.final_payoff.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.final_payoff[i] = payoff_sum[i] / len;
  s.agreement = static_cast<double>(agree) / len;
  return s;
}

// Population mean and standard deviation of get(0..count-1).
template <class Get>
std::pair<double, double> mean_std(std::size_t count, Get get) {
  double mean = 0.0;
  for (std::size_t t = 0; t < count; ++t) mean += get(t);
  mean /= static_cast<double>(count);
  double var = 0.0;
  for (std::size_t t = 0; t < count; ++t) {
    const double dev = get(t) - mean;
    var += dev * dev;
  }
  return {mean, std::sqrt(var / static_cast<double>(count))};
}

}  // namespace

double ExperimentMetrics::convergence_fraction() const {
  if (trial_convergence.empty()) return 0.0;
  std::size_t converged = 0;
  for (const auto& c : trial_convergence) converged += c.has_value() ? 1 : 0;
  return static_cast<double>(converged) / static_cast<double>(trial_convergence.size());
}

std::vector<double> ExperimentMetrics::trial_marginal(std::size_t t, std::size_t agent,
                                                      const ActionSpace& space) const {
  std::vector<double> out(space.num_actions(agent), 0.0);
  const auto& joint = trial_joint_last.at(t);
  for (std::size_t c = 0; c < joint.size(); ++c) out[space.action_of(c, agent)] += joint[c];
  return out;
}

ExperimentMetrics run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  const Game& game = cfg.game;
  const std::size_t n = game.num_players();
  const std::size_t trials = cfg.trials;
  const std::size_t episodes = cfg.episodes;

  std::vector<TrialSummary> summaries(trials);
  detail::parallel_for(trials, threads, [&](std::size_t t) {
    summaries[t] = summarize(cfg, run_trial(cfg, t));
  });

  ExperimentMetrics m;
  m.trials = trials;
  m.episodes = episodes;
  m.num_agents = n;
  m.final_window = std::min(cfg.final_window, episodes);
  m.num_actions = game.action_counts();

  m.payoff_mean.resize(episodes * n);
  m.payoff_std.resize(episodes * n);
  for (std::size_t c = 0; c < episodes * n; ++c) {
    std::tie(m.payoff_mean[c], m.payoff_std[c]) =
        mean_std(trials, [&](std::size_t t) { return summaries[t].scalarised[c]; });
  }
  m.action_mean.resize(n);
  m.action_std.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cells = episodes * game.num_actions(i);
    m.action_mean[i].resize(cells);
    m.action_std[i].resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      std::tie(m.action_mean[i][c], m.action_std[i][c]) =
          mean_std(trials, [&](std::size_t t) { return summaries[t].window_freq[i][c]; });
    }
  }

  m.joint_last.assign(game.space().size(), 0.0);
  m.final_payoff_mean.assign(n, 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    auto& s = summaries[t];
    for (std::size_t c = 0; c < s.joint_last.size(); ++c) m.joint_last[c] += s.joint_last[c];
    for (std::size_t i = 0; i < n; ++i) m.final_payoff_mean[i] += s.final_payoff[i];
    std::optional<std::size_t> label;
    const auto top = std::max_element(s.joint_last.begin(), s.joint_last.end());
    if (*top >= kConvergenceMass) label = static_cast<std::size_t>(top - s.joint_last.begin());
    m.trial_convergence.push_back(label);
    if (cfg.signal_mode != SignalMode::None) m.trial_recommendation_agreement.push_back(s.agreement);
    m.trial_joint_last.push_back(std::move(s.joint_last));
    m.trial_final_payoff.push_back(std::move(s.final_payoff));
  }
  for (double& v : m.joint_last) v /= static_cast<double>(trials);
  for (double& v : m.final_payoff_mean) v /= static_cast<double>(trials);
  return m;
}

void write_metrics(const ExperimentMetrics& m, const ExperimentConfig& cfg,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const Game& game = cfg.game;
  const std::size_t n = m.num_agents;
  using io::format_double;

  std::string payoffs = "episode,agent,mean,std\n";
  for (std::size_t e = 0; e < m.episodes; ++e) {
    for (std::size_t i = 0; i < n; ++i) {
      payoffs += std::to_string(e + 1) + ',' + std::to_string(i + 1) + ',' +
                 format_double(m.payoff_mean[e * n + i]) + ',' +
                 format_double(m.payoff_std[e * n + i]) + '\n';
    }
  }
  io::write_text_file(dir / "payoffs.csv", payoffs);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = m.num_actions[i];
    std::string csv = "episode";
    for (const auto& label : game.action_labels()[i]) csv += ',' + label + "_mean," + label + "_std";
    csv += '\n';
    for (std::size_t e = 0; e < m.episodes; ++e) {
      csv += std::to_string(e + 1);
      for (std::size_t a = 0; a < k; ++a) {
        csv += ',' + format_double(m.action_mean[i][e * k + a]) + ',' +
               format_double(m.action_std[i][e * k + a]);
      }
      csv += '\n';
    }
    io::write_text_file(dir / ("actions_agent" + std::to_string(i + 1) + ".csv"), csv);
  }

  std::string joint = "joint_action,frequency\n";
  for (std::size_t c = 0; c < m.joint_last.size(); ++c) {
    joint += game.joint_label(c, '|') + ',' + format_double(m.joint_last[c]) + '\n';
  }
  io::write_text_file(dir / "joint_last1000.csv", joint);

  nlohmann::json summary;
  summary["config"] = experiment_config_to_json(cfg);
  auto seeds = nlohmann::json::array();
  for (std::size_t t = 0; t < m.trials; ++t) seeds.push_back(cfg.base_seed + t);
  summary["trial_seeds"] = seeds;
  summary["final_window"] = m.final_window;
  summary["final_payoff_mean"] = m.final_payoff_mean;
  summary["convergence_fraction"] = m.convergence_fraction();
  nlohmann::json by_joint = nlohmann::json::object();
  auto labels = nlohmann::json::array();
  for (const auto& c : m.trial_convergence) {
    if (c) {
      const std::string label = game.joint_label(*c, '|');
      by_joint[label] = by_joint.value(label, 0) + 1;
      labels.push_back(label);
    } else {
      labels.push_back(nullptr);
    }
  }
  summary["convergence_counts"] = by_joint;
  summary["trial_convergence"] = labels;
  if (!m.trial_recommendation_agreement.empty()) {
    summary["recommendation_agreement"] = m.trial_recommendation_agreement;
  }
  summary["metadata"] = {
      {"q_initialization", "zero vectors"},
      {"q_updates", "every realized action, exploratory ones included"},
      {"greedy_play", "sample from the optimal mixed strategy"},
      {"std", "population standard deviation across trials"},
      {"convergence_mass", kConvergenceMass},
  };
  io::write_text_file(dir / "summary.json", summary.dump(2) + '\n');
}

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string("field '") + key + "': missing");
  }
  return j.at(key);
}

template <class T>
T number_field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw Error(ErrorKind::ParseError, std::string("field '") + key + "': expected a number");
  } else {
    if (!v.is_number_unsigned()) {
      throw Error(ErrorKind::ParseError,
                  std::string("field '") + key + "': expected a nonnegative integer");
    }
  }
  return v.get<T>();
}

}  // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "field '': expected an object");
  static const char* const known[] = {
      "game",         "utilities",        "signal_mode",     "correlated_strategy",
      "trials",       "episodes",         "follow_episodes", "alpha",
      "epsilon_initial", "epsilon_decay", "base_seed",       "opt_config",
      "action_window", "final_window"};
  for (const auto& item : j.items()) {
    if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known)) {
      throw Error(ErrorKind::ParseError, "field '" + item.key() + "': unknown");
    }
  }
  const auto& gj = require(j, "game");
  Game game = gj.is_string() ? catalog::game(gj.get<std::string>()) : io::game_from_json(gj);
  const auto& uj = require(j, "utilities");
  auto utilities =
      uj.is_string() ? catalog::utilities(uj.get<std::string>()) : io::utilities_from_json(uj);

  ExperimentConfig cfg(std::move(game), std::move(utilities));
  if (j.contains("signal_mode")) {
    const auto& s = j.at("signal_mode");
    if (!s.is_string()) throw Error(ErrorKind::ParseError, "field 'signal_mode': expected a string");
    cfg.signal_mode = parse_signal_mode(s.get<std::string>());
  }
  if (j.contains("correlated_strategy")) {
    const auto& sj = j.at("correlated_strategy");
    cfg.correlated_strategy = sj.is_string() ? catalog::correlated(sj.get<std::string>())
                                             : io::correlated_from_json(sj, cfg.game);
  }
  cfg.trials = number_field(j, "trials", cfg.trials);
  cfg.episodes = number_field(j, "episodes", cfg.episodes);
  cfg.follow_episodes = number_field(j, "follow_episodes", cfg.follow_episodes);
  cfg.alpha = number_field(j, "alpha", cfg.alpha);
  cfg.epsilon_initial = number_field(j, "epsilon_initial", cfg.epsilon_initial);
  cfg.epsilon_decay = number_field(j, "epsilon_decay", cfg.epsilon_decay);
  cfg.base_seed = number_field(j, "base_seed", cfg.base_seed);
  cfg.action_window = number_field(j, "action_window", cfg.action_window);
  cfg.final_window = number_field(j, "final_window", cfg.final_window);
  if (j.contains("opt_config")) cfg.opt_config = io::opt_config_from_json(j.at("opt_config"));
  cfg.validate();
  return cfg;
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["game"] = io::game_to_json(cfg.game);
  j["utilities"] = io::utilities_to_json(cfg.utilities);
  j["signal_mode"] = std::string(to_string(cfg.signal_mode));
  if (cfg.correlated_strategy) j["correlated_strategy"] = io::correlated_to_json(*cfg.correlated_strategy);
  j["trials"] = cfg.trials;
  j["episodes"] = cfg.episodes;
  j["follow_episodes"] = cfg.follow_episodes;
  j["alpha"] = cfg.alpha;
  j["epsilon_initial"] = cfg.epsilon_initial;
  j["epsilon_decay"] = cfg.epsilon_decay;
  j["base_seed"] = cfg.base_seed;
  j["opt_config"] = io::opt_config_to_json(cfg.opt_config);
  j["action_window"] = cfg.action_window;
  j["final_window"] = cfg.final_window;
  return j;
}

}  // namespace monfg
