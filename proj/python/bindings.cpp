// Python extension. Arguments and results cross the boundary as JSON text in
// the same schemas the CLI reads and writes; a JSON string argument names a
// catalog entry.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "monfg/catalog.hpp"
#include "monfg/equilibrium.hpp"
#include "monfg/error.hpp"
#include "monfg/io.hpp"
#include "monfg/learning.hpp"
#include "monfg/utility.hpp"

namespace py = pybind11;
using monfg::io::Json;

namespace {

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw monfg::Error(monfg::ErrorKind::ParseError, e.what());
  }
}

monfg::Game game_arg(const std::string& text) {
  const Json j = parse(text);
  return j.is_string() ? monfg::catalog::game(j.get<std::string>()) : monfg::io::game_from_json(j);
}

std::vector<monfg::UtilitySpec> utilities_arg(const std::string& text) {
  const Json j = parse(text);
  return j.is_string() ? monfg::catalog::utilities(j.get<std::string>())
                       : monfg::io::utilities_from_json(j);
}

monfg::Candidate candidate_arg(const std::string& text, const monfg::Game& game, bool correlated) {
  const Json j = parse(text);
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (correlated) return monfg::catalog::correlated(name);
    return monfg::catalog::profile(name);
  }
  if (correlated) return monfg::io::correlated_from_json(j, game);
  return monfg::io::profile_from_json(j, game);
}

monfg::OptConfig opt_config(std::uint64_t seed, std::optional<int> num_starts) {
  monfg::OptConfig cfg;
  cfg.seed = seed;
  if (num_starts) cfg.num_starts = *num_starts;
  cfg.validate();
  return cfg;
}

monfg::CeObjective objective_arg(const std::string& s) {
  if (s == "feasible") return monfg::CeObjective::feasible();
  if (s == "max-sum") return monfg::CeObjective::max_utility_sum();
  const std::string prefix = "max-player=";
  if (s.rfind(prefix, 0) == 0) {
    const int k = std::stoi(s.substr(prefix.size()));
    if (k < 1) throw monfg::Error(monfg::ErrorKind::InvalidArgument, "player index counts from 1");
    return monfg::CeObjective::max_player(static_cast<std::size_t>(k - 1));
  }
  throw monfg::Error(monfg::ErrorKind::InvalidArgument, "unknown objective '" + s + "'");
}

std::string entry_json(const std::string& name) {
  const auto& e = monfg::catalog::get(name);
  switch (e.kind) {
    case monfg::catalog::EntryKind::Game:
      return monfg::io::game_to_json(std::get<monfg::Game>(e.payload)).dump();
    case monfg::catalog::EntryKind::UtilityPair:
      return monfg::io::utilities_to_json(std::get<std::vector<monfg::UtilitySpec>>(e.payload)).dump();
    case monfg::catalog::EntryKind::Profile:
      return monfg::io::profile_to_json(std::get<monfg::StrategyProfile>(e.payload)).dump();
    case monfg::catalog::EntryKind::CorrelatedStrategy:
      return monfg::io::correlated_to_json(std::get<monfg::CorrelatedStrategy>(e.payload)).dump();
  }
  return "null";
}

}  // namespace

PYBIND11_MODULE(_monfg, m) {
  m.doc() = "Equilibrium checks and learning experiments for multi-objective normal-form games";

  py::register_exception<monfg::Error>(m, "MonfgError", PyExc_ValueError);

  m.def("catalog_names", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : monfg::catalog::list())
      out.emplace_back(e.name, std::string(monfg::catalog::to_string(e.kind)));
    return out;
  });
  m.def("catalog_entry", &entry_json, py::arg("name"));

  m.def(
      "utility_eval",
      [](const std::string& utility, const std::vector<double>& payoff) {
        return monfg::utility_eval(monfg::io::utility_from_json(parse(utility)), payoff);
      },
      py::arg("utility"), py::arg("payoff"));

  m.def(
      "verify",
      [](const std::string& concept_name, const std::string& game, const std::string& utilities,
         const std::string& candidate, double tol, std::uint64_t seed, std::optional<int> num_starts) {
        const auto kind = monfg::parse_concept(concept_name);
        const auto g = game_arg(game);
        const auto us = utilities_arg(utilities);
        const auto c = candidate_arg(candidate, g, monfg::is_correlated(kind));
        py::gil_scoped_release release;
        const auto report = monfg::verify(kind, g, us, c, tol, opt_config(seed, num_starts));
        return monfg::io::report_to_json(report, g).dump();
      },
      py::arg("concept"), py::arg("game"), py::arg("utilities"), py::arg("candidate"),
      py::arg("tol") = monfg::kDefaultTolerance, py::arg("seed") = 0, py::arg("num_starts") = py::none());

  m.def(
      "tradeoff_game",
      [](const std::string& game, const std::string& utilities) {
        return monfg::io::game_to_json(monfg::tradeoff_game(game_arg(game), utilities_arg(utilities))).dump();
      },
      py::arg("game"), py::arg("utilities"));

  m.def(
      "solve_ce_esr",
      [](const std::string& game, const std::string& utilities, const std::string& objective) {
        const auto sigma = monfg::solve_ce_esr(game_arg(game), utilities_arg(utilities), objective_arg(objective));
        return monfg::io::correlated_to_json(sigma).dump();
      },
      py::arg("game"), py::arg("utilities"), py::arg("objective") = "feasible");

  m.def(
      "scan_ne_ser_grid",
      [](const std::string& game, const std::string& utilities, std::size_t resolution, double tol,
         std::size_t cap, unsigned threads, std::uint64_t seed, std::optional<int> num_starts) {
        const auto g = game_arg(game);
        const auto us = utilities_arg(utilities);
        const auto cfg = opt_config(seed, num_starts);
        py::gil_scoped_release release;
        return monfg::io::grid_scan_to_json(monfg::scan_ne_ser_grid(g, us, resolution, tol, cfg, cap, threads))
            .dump();
      },
      py::arg("game"), py::arg("utilities"), py::arg("resolution"), py::arg("tol") = monfg::kDefaultTolerance,
      py::arg("cap") = monfg::kDefaultGridCap, py::arg("threads") = 1, py::arg("seed") = 0,
      py::arg("num_starts") = py::none());

  m.def(
      "run_experiment",
      [](const std::string& config, const std::string& out_dir, unsigned threads) {
        const auto cfg = monfg::experiment_config_from_json(parse(config));
        py::gil_scoped_release release;
        const auto metrics = monfg::run_experiment(cfg, threads);
        monfg::write_metrics(metrics, cfg, out_dir);
      },
      py::arg("config"), py::arg("out_dir"), py::arg("threads") = 1);
}
