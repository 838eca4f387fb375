#include "monfg/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "monfg/error.hpp"

namespace monfg::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

const Json& require(const Json& j, const char* key, const std::string& path = "") {
  if (!j.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::size_t as_count(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(field, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

double as_number(const Json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

std::vector<double> as_numbers(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(as_number(j[k], field + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::string index_path(const std::string& base, const std::vector<std::size_t>& idx) {
  std::string s = base;
  for (std::size_t v : idx) s += "[" + std::to_string(v) + "]";
  return s;
}

// Walks nested arrays with the given per-level extents in row-major order.
template <class Leaf>
void walk(const Json& j, const std::vector<std::size_t>& extents, std::size_t level,
          std::vector<std::size_t>& idx, const std::string& base, Leaf&& leaf) {
  if (level == extents.size()) {
    leaf(j, index_path(base, idx));
    return;
  }
  if (!j.is_array() || j.size() != extents[level]) {
    fail(index_path(base, idx), "expected an array of length " + std::to_string(extents[level]));
  }
  for (std::size_t k = 0; k < extents[level]; ++k) {
    idx.push_back(k);
    walk(j[k], extents, level + 1, idx, base, leaf);
    idx.pop_back();
  }
}

template <class Leaf>
Json build_nested(const std::vector<std::size_t>& extents, std::size_t level, std::size_t& cursor,
                  Leaf&& leaf) {
  if (level == extents.size()) return leaf(cursor++);
  Json arr = Json::array();
  for (std::size_t k = 0; k < extents[level]; ++k) {
    arr.push_back(build_nested(extents, level + 1, cursor, leaf));
  }
  return arr;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

Json game_to_json(const Game& game) {
  Json j;
  j["players"] = game.num_players();
  j["objectives"] = game.num_objectives();
  j["actions"] = game.action_labels();
  std::vector<std::size_t> extents = game.action_counts();
  extents.push_back(game.num_players());
  extents.push_back(game.num_objectives());
  std::size_t cursor = 0;
  const auto& flat = game.flat_payoffs();
  j["payoffs"] = build_nested(extents, 0, cursor, [&](std::size_t c) { return Json(flat[c]); });
  return j;
}

Game game_from_json(const Json& j) {
  const std::size_t n = as_count(require(j, "players"), "players");
  const std::size_t d = as_count(require(j, "objectives"), "objectives");
  if (n < 2) fail("players", "a game needs at least 2 players");
  if (d < 1) fail("objectives", "a game needs at least 1 objective");
  const Json& actions = require(j, "actions");
  if (!actions.is_array() || actions.size() != n) {
    fail("actions", "expected one label list per player (" + std::to_string(n) + ")");
  }
  std::vector<std::vector<std::string>> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string field = "actions[" + std::to_string(i) + "]";
    if (!actions[i].is_array() || actions[i].empty()) fail(field, "expected a nonempty label list");
    for (std::size_t a = 0; a < actions[i].size(); ++a) {
      if (!actions[i][a].is_string()) fail(field + "[" + std::to_string(a) + "]", "expected a string");
      labels[i].push_back(actions[i][a].get<std::string>());
    }
  }
  std::vector<std::size_t> extents;
  for (const auto& l : labels) extents.push_back(l.size());
  extents.push_back(n);
  extents.push_back(d);
  std::vector<double> flat;
  std::vector<std::size_t> idx;
  walk(require(j, "payoffs"), extents, 0, idx, "payoffs", [&](const Json& v, const std::string& f) {
    flat.push_back(as_number(v, f));
  });
  try {
    return Game(d, std::move(labels), std::move(flat));
  } catch (const Error& e) {
    fail("payoffs", e.what());
  }
}

Json utility_to_json(const UtilitySpec& u) {
  Json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UtilitySpec::Linear>) {
          j["variant"] = "linear";
          j["weights"] = v.weights;
        } else if constexpr (std::is_same_v<T, UtilitySpec::PolySum>) {
          j["variant"] = "polysum";
          j["weights"] = v.weights;
          j["exponents"] = v.exponents;
        } else if constexpr (std::is_same_v<T, UtilitySpec::Product>) {
          j["variant"] = "product";
        } else {
          j["variant"] = "threshold";
          j["objective"] = v.objective;
          j["threshold"] = v.threshold;
          j["reward"] = v.reward;
        }
      },
      u.variant());
  j["nonneg_guard"] = u.nonneg_guard();
  return j;
}

UtilitySpec utility_from_json(const Json& j) {
  const Json& variant = require(j, "variant");
  if (!variant.is_string()) fail("variant", "expected a string");
  const auto name = variant.get<std::string>();
  std::optional<bool> guard;
  if (auto it = j.find("nonneg_guard"); it != j.end()) {
    if (!it->is_boolean()) fail("nonneg_guard", "expected a boolean");
    guard = it->get<bool>();
  }
  try {
    if (name == "linear") {
      return UtilitySpec::linear(as_numbers(require(j, "weights"), "weights"), guard.value_or(false));
    }
    if (name == "polysum") {
      const Json& e = require(j, "exponents");
      if (!e.is_array()) fail("exponents", "expected an array of integers");
      std::vector<int> exps;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (!e[k].is_number_integer()) fail("exponents[" + std::to_string(k) + "]", "expected an integer");
        exps.push_back(e[k].get<int>());
      }
      return UtilitySpec::polysum(as_numbers(require(j, "weights"), "weights"), std::move(exps),
                                  guard.value_or(true));
    }
    if (name == "product") return UtilitySpec::product(guard.value_or(true));
    if (name == "threshold") {
      return UtilitySpec::threshold(as_count(require(j, "objective"), "objective"),
                                    as_number(require(j, "threshold"), "threshold"),
                                    as_number(require(j, "reward"), "reward"), guard.value_or(false));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    fail("variant", e.what());
  }
  fail("variant", "unknown utility variant '" + name + "'");
}

Json utilities_to_json(const std::vector<UtilitySpec>& us) {
  Json arr = Json::array();
  for (const auto& u : us) arr.push_back(utility_to_json(u));
  return arr;
}

std::vector<UtilitySpec> utilities_from_json(const Json& j) {
  if (!j.is_array()) fail("utilities", "expected an array with one utility per player");
  std::vector<UtilitySpec> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    try {
      out.push_back(utility_from_json(j[k]));
    } catch (const Error& e) {
      fail("utilities[" + std::to_string(k) + "]", e.what());
    }
  }
  return out;
}

Json profile_to_json(const StrategyProfile& profile) {
  Json arr = Json::array();
  for (const auto& s : profile.strategies()) arr.push_back(s.probs());
  return arr;
}

StrategyProfile profile_from_json(const Json& j, const Game& game) {
  if (!j.is_array() || j.size() != game.num_players()) {
    fail("candidate", "expected one probability list per player (" +
                          std::to_string(game.num_players()) + ")");
  }
  std::vector<MixedStrategy> strategies;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string field = "candidate[" + std::to_string(i) + "]";
    auto probs = as_numbers(j[i], field);
    if (probs.size() != game.num_actions(i)) {
      fail(field, "expected " + std::to_string(game.num_actions(i)) + " probabilities");
    }
    try {
      strategies.emplace_back(std::move(probs));
    } catch (const Error& e) {
      fail(field, e.what());
    }
  }
  return StrategyProfile(std::move(strategies));
}

Json correlated_to_json(const CorrelatedStrategy& sigma) {
  std::size_t cursor = 0;
  return build_nested(sigma.space().action_counts(), 0, cursor,
                      [&](std::size_t c) { return Json(sigma[c]); });
}

CorrelatedStrategy correlated_from_json(const Json& j, const Game& game) {
  std::vector<double> flat;
  std::vector<std::size_t> idx;
  walk(j, game.action_counts(), 0, idx, "candidate",
       [&](const Json& v, const std::string& f) { flat.push_back(as_number(v, f)); });
  try {
    return CorrelatedStrategy(game.space(), std::move(flat));
  } catch (const Error& e) {
    fail("candidate", e.what());
  }
}

Json witness_to_json(const Witness& w, const Game& game, std::size_t player) {
  const auto& labels = game.action_labels().at(player);
  Json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PureDeviation>) {
          j["type"] = "pure";
          j["action"] = v.action;
          j["label"] = labels[v.action];
        } else if constexpr (std::is_same_v<T, MixedDeviation>) {
          j["type"] = "mixed";
          j["strategy"] = v.strategy.probs();
        } else if constexpr (std::is_same_v<T, StrategyModification>) {
          j["type"] = "modification";
          j["map"] = v.map;
          Json pretty = Json::object();
          for (std::size_t a = 0; a < v.map.size(); ++a) pretty[labels[a]] = labels[v.map[a]];
          j["labels"] = pretty;
        } else {
          j["type"] = "conditional";
          j["recommended"] = v.recommended;
          j["response"] = v.response;
          j["labels"] = {labels[v.recommended], labels[v.response]};
        }
      },
      w);
  return j;
}

Json opt_config_to_json(const OptConfig& cfg) {
  return Json{{"num_starts", cfg.num_starts},
              {"max_iters", cfg.max_iters},
              {"step_init", cfg.step_init},
              {"eps_opt", cfg.eps_opt},
              {"seed", cfg.seed}};
}

OptConfig opt_config_from_json(const Json& j) {
  if (!j.is_object()) fail("opt_config", "expected an object");
  OptConfig cfg;
  if (j.contains("num_starts")) cfg.num_starts = static_cast<int>(as_count(j["num_starts"], "opt_config.num_starts"));
  if (j.contains("max_iters")) cfg.max_iters = static_cast<int>(as_count(j["max_iters"], "opt_config.max_iters"));
  if (j.contains("step_init")) cfg.step_init = as_number(j["step_init"], "opt_config.step_init");
  if (j.contains("eps_opt")) cfg.eps_opt = as_number(j["eps_opt"], "opt_config.eps_opt");
  if (j.contains("seed")) cfg.seed = as_count(j["seed"], "opt_config.seed");
  try {
    cfg.validate();
  } catch (const Error& e) {
    fail("opt_config", e.what());
  }
  return cfg;
}

Json report_to_json(const EquilibriumReport& report, const Game& game) {
  Json j;
  j["concept"] = std::string(to_string(report.concept_kind));
  j["verdict"] = report.verdict;
  j["tolerance"] = report.tolerance;
  j["players"] = Json::array();
  for (std::size_t i = 0; i < report.players.size(); ++i) {
    const auto& p = report.players[i];
    j["players"].push_back({{"max_gain", p.max_gain},
                            {"witness", witness_to_json(p.witness, game, i)},
                            {"value", p.value}});
  }
  if (report.opt_config) j["opt_config"] = opt_config_to_json(*report.opt_config);
  return j;
}

Json grid_scan_to_json(const GridScanResult& r) {
  Json j;
  j["resolution"] = r.resolution;
  j["profiles_evaluated"] = r.profiles_evaluated;
  j["min_max_gain"] = r.min_max_gain;
  j["argmin_profile"] = profile_to_json(r.argmin_profile);
  j["approx_equilibria"] = Json::array();
  for (std::size_t k = 0; k < r.approx_equilibria.size(); ++k) {
    j["approx_equilibria"].push_back(
        {{"profile", profile_to_json(r.approx_equilibria[k])}, {"max_gain", r.approx_gains[k]}});
  }
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace monfg::io
