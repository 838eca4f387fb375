#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "monfg/equilibrium.hpp"
#include "monfg/game.hpp"
#include "monfg/strategy.hpp"
#include "monfg/utility.hpp"

// JSON schemas shared by the CLI, the catalog and the Python bindings.
// Parse failures throw Error(ParseError) naming the offending field.

namespace monfg::io {

using Json = nlohmann::json;

/// {"players": n, "objectives": d, "actions": [[labels]...],
///  "payoffs": nested arrays indexed [a_1][a_2]...[player][objective]}
Json game_to_json(const Game& game);
Game game_from_json(const Json& j);

/// {"variant": "linear"|"polysum"|"product"|"threshold", ...fields, "nonneg_guard": bool}
Json utility_to_json(const UtilitySpec& u);
UtilitySpec utility_from_json(const Json& j);
/// A JSON array with one utility object per player.
Json utilities_to_json(const std::vector<UtilitySpec>& us);
std::vector<UtilitySpec> utilities_from_json(const Json& j);

/// Per-player probability lists.
Json profile_to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const Json& j, const Game& game);

/// Nested probability array over the joint-action space.
Json correlated_to_json(const CorrelatedStrategy& sigma);
CorrelatedStrategy correlated_from_json(const Json& j, const Game& game);

Json witness_to_json(const Witness& w, const Game& game, std::size_t player);
/// {"verdict": bool, "tolerance": t, "players": [{"max_gain", "witness", "value"}]}
Json report_to_json(const EquilibriumReport& report, const Game& game);
Json opt_config_to_json(const OptConfig& cfg);
OptConfig opt_config_from_json(const Json& j);
Json grid_scan_to_json(const GridScanResult& result);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Shortest string that reads back to the same double; '.' decimal, independent of the C locale.
std::string format_double(double v);

}  // namespace monfg::io
