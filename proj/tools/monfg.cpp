// monfg: command-line front end for verification, solving, scanning and
// learning experiments.
//
// Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or input
// error, 3 internal failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "monfg/catalog.hpp"
#include "monfg/equilibrium.hpp"
#include "monfg/error.hpp"
#include "monfg/io.hpp"
#include "monfg/learning.hpp"

namespace {

using monfg::Error;
using monfg::ErrorKind;
using monfg::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OptimizationFailed:
    case ErrorKind::Infeasible:
    case ErrorKind::Unbounded:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

// A catalog entry of the expected kind, or else a JSON file.
Json load_json_or_entry(const std::string& ref, monfg::catalog::EntryKind kind,
                        const monfg::catalog::Entry** entry) {
  *entry = nullptr;
  if (monfg::catalog::contains(ref)) {
    const auto& e = monfg::catalog::get(ref);
    if (e.kind != kind) {
      throw Error(ErrorKind::UnknownName, "'" + ref + "' is a " +
                                              std::string(monfg::catalog::to_string(e.kind)) +
                                              ", not a " +
                                              std::string(monfg::catalog::to_string(kind)));
    }
    *entry = &e;
    return {};
  }
  return monfg::io::read_json_file(ref);
}

monfg::Game load_game(const std::string& ref) {
  const monfg::catalog::Entry* entry = nullptr;
  auto j = load_json_or_entry(ref, monfg::catalog::EntryKind::Game, &entry);
  if (entry) return std::get<monfg::Game>(entry->payload);
  return monfg::io::game_from_json(j);
}

std::vector<monfg::UtilitySpec> load_utilities(const std::string& ref) {
  const monfg::catalog::Entry* entry = nullptr;
  auto j = load_json_or_entry(ref, monfg::catalog::EntryKind::UtilityPair, &entry);
  if (entry) return std::get<std::vector<monfg::UtilitySpec>>(entry->payload);
  return monfg::io::utilities_from_json(j);
}

monfg::Candidate load_candidate(const std::string& ref, const monfg::Game& game, bool correlated) {
  if (monfg::catalog::contains(ref)) {
    const auto& e = monfg::catalog::get(ref);
    if (correlated && e.kind == monfg::catalog::EntryKind::CorrelatedStrategy) {
      const auto& sigma = std::get<monfg::CorrelatedStrategy>(e.payload);
      sigma.check_against(game);
      return sigma;
    }
    if (!correlated && e.kind == monfg::catalog::EntryKind::Profile) {
      const auto& profile = std::get<monfg::StrategyProfile>(e.payload);
      profile.check_against(game);
      return profile;
    }
    throw Error(ErrorKind::ShapeMismatch,
                "candidate '" + ref + "' is a " + std::string(monfg::catalog::to_string(e.kind)) +
                    "; this concept needs a " + (correlated ? "correlated_strategy" : "profile"));
  }
  const auto j = monfg::io::read_json_file(ref);
  if (correlated) return monfg::io::correlated_from_json(j, game);
  return monfg::io::profile_from_json(j, game);
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + '\n';
  if (out.empty()) {
    std::cout << text;
  } else {
    monfg::io::write_text_file(out, text);
  }
}

unsigned default_threads() {
  if (const char* env = std::getenv("MONFG_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "monfg: ignoring invalid MONFG_THREADS='" << env << "'\n";
  }
  return 1;
}

monfg::CeObjective parse_objective(const std::string& s) {
  if (s == "feasible") return monfg::CeObjective::feasible();
  if (s == "max-sum") return monfg::CeObjective::max_utility_sum();
  const std::string prefix = "max-player=";
  if (s.rfind(prefix, 0) == 0) {
    const std::string digits = s.substr(prefix.size());
    // Players count from 1 on the command line, as in the learning output files.
    if (!digits.empty() && digits.size() < 9 &&
        digits.find_first_not_of("0123456789") == std::string::npos) {
      const auto k = std::stoul(digits);
      if (k >= 1) return monfg::CeObjective::max_player(k - 1);
    }
  }
  throw Error(ErrorKind::InvalidArgument,
              "objective must be feasible, max-sum or max-player=<k> with k >= 1, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium analysis and learning experiments for multi-objective normal-form games"};
  app.require_subcommand(1);

  std::string game_ref, utilities_ref, candidate_ref, concept_name, out, objective_name;
  std::string config_path, catalog_name;
  double tol = monfg::kDefaultTolerance;
  std::size_t resolution = 0;
  std::size_t cap = monfg::kDefaultGridCap;
  unsigned threads = default_threads();
  monfg::OptConfig opt;

  auto add_opt_flags = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "Optimizer seed (default 0)");
    cmd->add_option("--num-starts", opt.num_starts, "Random starts per best-response search");
  };

  auto* verify = app.add_subcommand("verify", "Check a candidate against an equilibrium concept");
  verify->add_option("--game", game_ref, "Catalog name or game JSON path")->required();
  verify->add_option("--utilities", utilities_ref, "Catalog name or utilities JSON path")->required();
  verify->add_option("--candidate", candidate_ref, "Catalog name or strategy JSON path")->required();
  verify->add_option("--concept", concept_name, "ne-esr | ne-ser | ce-esr | ce-ser-single | ce-ser-multi")
      ->required();
  verify->add_option("--tol", tol, "Deviation tolerance");
  add_opt_flags(verify);

  auto* tradeoff = app.add_subcommand("tradeoff", "Write the scalarised single-objective game");
  tradeoff->add_option("--game", game_ref)->required();
  tradeoff->add_option("--utilities", utilities_ref)->required();
  tradeoff->add_option("--out", out, "Output path (standard output if omitted)");

  auto* solve = app.add_subcommand("solve", "Compute an ESR correlated equilibrium by linear programming");
  solve->add_option("--game", game_ref)->required();
  solve->add_option("--utilities", utilities_ref)->required();
  solve->add_option("--concept", concept_name, "Only ce-esr is solvable")->default_val("ce-esr");
  solve->add_option("--objective", objective_name, "feasible | max-sum | max-player=<k> (k counts from 1)")
      ->default_val("feasible");
  solve->add_option("--out", out);

  auto* scan = app.add_subcommand("scan", "Grid search for approximate SER Nash equilibria");
  scan->add_option("--game", game_ref)->required();
  scan->add_option("--utilities", utilities_ref)->required();
  scan->add_option("--resolution", resolution, "Lattice resolution per simplex")->required();
  scan->add_option("--tol", tol);
  scan->add_option("--cap", cap, "Largest number of profiles to evaluate");
  scan->add_option("--threads", threads, "Worker threads (default $MONFG_THREADS or 1)");
  scan->add_option("--out", out);
  add_opt_flags(scan);

  auto* learn = app.add_subcommand("learn", "Run a seeded learning experiment");
  learn->add_option("--config", config_path, "Experiment config JSON")->required();
  learn->add_option("--out", out, "Output directory")->required();
  learn->add_option("--threads", threads, "Worker threads (default $MONFG_THREADS or 1)");

  auto* catalog = app.add_subcommand("catalog", "List or export built-in entries");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "Name, kind and description of every entry");
  auto* show = catalog->add_subcommand("show", "Export one entry as JSON");
  show->add_option("name", catalog_name)->required();
  show->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) {
      opt.validate();
      const auto concept_kind = monfg::parse_concept(concept_name);
      const auto game = load_game(game_ref);
      const auto utilities = load_utilities(utilities_ref);
      const auto candidate = load_candidate(candidate_ref, game, monfg::is_correlated(concept_kind));
      const auto report = monfg::verify(concept_kind, game, utilities, candidate, tol, opt);
      emit(monfg::io::report_to_json(report, game), "");
      return report.verdict ? kExitOk : kExitFalse;
    }
    if (*tradeoff) {
      const auto game = load_game(game_ref);
      const auto utilities = load_utilities(utilities_ref);
      emit(monfg::io::game_to_json(monfg::tradeoff_game(game, utilities)), out);
      return kExitOk;
    }
    if (*solve) {
      if (monfg::parse_concept(concept_name) != monfg::EquilibriumConcept::CeEsr) {
        throw Error(ErrorKind::InvalidArgument, "only ce-esr can be solved");
      }
      const auto objective = parse_objective(objective_name);
      const auto game = load_game(game_ref);
      const auto utilities = load_utilities(utilities_ref);
      const auto sigma = monfg::solve_ce_esr(game, utilities, objective);
      emit(monfg::io::correlated_to_json(sigma), out);
      return kExitOk;
    }
    if (*scan) {
      opt.validate();
      const auto game = load_game(game_ref);
      const auto utilities = load_utilities(utilities_ref);
      const auto result =
          monfg::scan_ne_ser_grid(game, utilities, resolution, tol, opt, cap, threads);
      auto j = monfg::io::grid_scan_to_json(result);
      j["opt_config"] = monfg::io::opt_config_to_json(opt);
      emit(j, out);
      return kExitOk;
    }
    if (*learn) {
      const auto cfg = monfg::experiment_config_from_json(monfg::io::read_json_file(config_path));
      const auto metrics = monfg::run_experiment(cfg, threads);
      monfg::write_metrics(metrics, cfg, out);
      return kExitOk;
    }
    if (*catalog) {
      if (*catalog->get_subcommand("list")) {
        for (const auto& e : monfg::catalog::list()) {
          std::cout << e.name << '\t' << monfg::catalog::to_string(e.kind) << '\t' << e.provenance
                    << '\n';
        }
        return kExitOk;
      }
      const auto& e = monfg::catalog::get(catalog_name);
      Json j;
      switch (e.kind) {
        case monfg::catalog::EntryKind::Game:
          j = monfg::io::game_to_json(std::get<monfg::Game>(e.payload));
          break;
        case monfg::catalog::EntryKind::UtilityPair:
          j = monfg::io::utilities_to_json(std::get<std::vector<monfg::UtilitySpec>>(e.payload));
          break;
        case monfg::catalog::EntryKind::Profile:
          j = monfg::io::profile_to_json(std::get<monfg::StrategyProfile>(e.payload));
          break;
        case monfg::catalog::EntryKind::CorrelatedStrategy:
          j = monfg::io::correlated_to_json(std::get<monfg::CorrelatedStrategy>(e.payload));
          break;
      }
      emit(j, out);
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "monfg: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "monfg: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
