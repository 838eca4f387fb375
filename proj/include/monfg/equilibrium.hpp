#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "monfg/game.hpp"
#include "monfg/optim.hpp"
#include "monfg/strategy.hpp"
#include "monfg/utility.hpp"

namespace monfg {

inline constexpr double kDefaultTolerance = 1e-6;

enum class EquilibriumConcept { NeEsr, NeSer, CeEsr, CeSerSingle, CeSerMulti };

std::string_view to_string(EquilibriumConcept c);
/// Accepts the CLI spellings: ne-esr, ne-ser, ce-esr, ce-ser-single, ce-ser-multi.
EquilibriumConcept parse_concept(std::string_view s);
bool is_correlated(EquilibriumConcept c);

/// Deviating to a single own action against the candidate.
struct PureDeviation {
  std::size_t action = 0;
  bool operator==(const PureDeviation&) const = default;
};
/// Deviating to a mixed strategy against the candidate.
struct MixedDeviation {
  MixedStrategy strategy;
  bool operator==(const MixedDeviation&) const = default;
};
/// Playing `response` whenever `recommended` is delivered (single-signal CE).
struct ConditionalDeviation {
  std::size_t recommended = 0;
  std::size_t response = 0;
  bool operator==(const ConditionalDeviation&) const = default;
};

using Witness = std::variant<PureDeviation, MixedDeviation, StrategyModification,
                             ConditionalDeviation>;

struct PlayerReport {
  double max_gain = 0.0;
  Witness witness;
  /// The player's value at the candidate on the side the witness is measured
  /// against (for single-signal CE: the utility given the witness's recommendation).
  double value = 0.0;
};

/// Verdict plus a per-player deviation certificate.
struct EquilibriumReport {
  EquilibriumConcept concept_kind = EquilibriumConcept::NeEsr;
  bool verdict = false;
  double tolerance = kDefaultTolerance;
  std::vector<PlayerReport> players;
  /// Present for concepts whose soundness rests on the best-response optimizer.
  std::optional<OptConfig> opt_config;

  double max_gain() const;
};

using Candidate = std::variant<StrategyProfile, CorrelatedStrategy>;

/// Single-objective game with payoff u_i(p_i(a)) for every profile a.
/// Throws ArityMismatch unless there is one utility per player.
Game tradeoff_game(const Game& game, std::span<const UtilitySpec> utilities);

EquilibriumReport verify_ne_esr(const Game& game, std::span<const UtilitySpec> utilities,
                                const StrategyProfile& profile, double tol = kDefaultTolerance);

EquilibriumReport verify_ne_ser(const Game& game, std::span<const UtilitySpec> utilities,
                                const StrategyProfile& profile, double tol = kDefaultTolerance,
                                const OptConfig& cfg = {});

struct BestResponse {
  MixedStrategy strategy;
  double value = 0.0;
};

/// max over own mixed strategies x of u(sum_a x_a * rows[a]).
BestResponse best_response_to_vectors(std::span<const PayoffVector> rows, const UtilitySpec& u,
                                      const OptConfig& cfg);

/// SER best response of `player` to the other entries of `profile`.
BestResponse best_response_ser(const Game& game, const UtilitySpec& u,
                               const StrategyProfile& profile, std::size_t player,
                               const OptConfig& cfg = {});

EquilibriumReport verify_ce_esr(const Game& game, std::span<const UtilitySpec> utilities,
                                const CorrelatedStrategy& sigma, double tol = kDefaultTolerance);

EquilibriumReport verify_ce_ser_single(const Game& game, std::span<const UtilitySpec> utilities,
                                       const CorrelatedStrategy& sigma,
                                       double tol = kDefaultTolerance);

inline constexpr std::size_t kMaxModifications = 1'000'000;

EquilibriumReport verify_ce_ser_multi(const Game& game, std::span<const UtilitySpec> utilities,
                                      const CorrelatedStrategy& sigma,
                                      double tol = kDefaultTolerance);

/// Dispatches on `concept_kind`; throws ShapeMismatch when the candidate kind
/// does not fit the concept.
EquilibriumReport verify(EquilibriumConcept concept_kind, const Game& game,
                         std::span<const UtilitySpec> utilities, const Candidate& candidate,
                         double tol = kDefaultTolerance, const OptConfig& cfg = {});

/// Recomputes the gain a witness achieves for `player`, independently of the
/// verifier that produced it.
double witness_gain(EquilibriumConcept concept_kind, const Game& game,
                    std::span<const UtilitySpec> utilities, const Candidate& candidate,
                    std::size_t player, const Witness& witness);

struct CeObjective {
  enum class Kind { Feasible, MaxUtilitySum, MaxPlayer };
  Kind kind = Kind::Feasible;
  std::size_t player = 0;

  static CeObjective feasible() { return {Kind::Feasible, 0}; }
  static CeObjective max_utility_sum() { return {Kind::MaxUtilitySum, 0}; }
  static CeObjective max_player(std::size_t k) { return {Kind::MaxPlayer, k}; }
};

/// Linear objective over the trade-off game's scalar payoffs for a CE objective.
std::vector<double> ce_objective_coefficients(const Game& tradeoff, const CeObjective& objective);

/// Computes an ESR correlated equilibrium by linear programming. The result is
/// re-verified at tolerance 1e-7 before it is returned.
CorrelatedStrategy solve_ce_esr(const Game& game, std::span<const UtilitySpec> utilities,
                                const CeObjective& objective);

struct GridScanResult {
  std::size_t resolution = 0;
  std::size_t profiles_evaluated = 0;
  double min_max_gain = 0.0;
  StrategyProfile argmin_profile{{}};
  std::vector<StrategyProfile> approx_equilibria;
  std::vector<double> approx_gains;
};

inline constexpr std::size_t kDefaultGridCap = 5'000'000;

/// Enumerates every profile on the lattice {c/resolution} of each player's
/// simplex and measures its SER Nash gain. Throws GridTooLarge above `cap`.
GridScanResult scan_ne_ser_grid(const Game& game, std::span<const UtilitySpec> utilities,
                                std::size_t resolution, double tol = kDefaultTolerance,
                                const OptConfig& cfg = {}, std::size_t cap = kDefaultGridCap,
                                unsigned threads = 1);

}  // namespace monfg
