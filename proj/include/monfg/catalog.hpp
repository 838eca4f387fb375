#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "monfg/game.hpp"
#include "monfg/strategy.hpp"
#include "monfg/utility.hpp"

namespace monfg::catalog {

enum class EntryKind { Game, UtilityPair, Profile, CorrelatedStrategy };

std::string_view to_string(EntryKind kind);

using Payload = std::variant<Game, std::vector<UtilitySpec>, StrategyProfile, CorrelatedStrategy>;

struct Entry {
  std::string name;
  EntryKind kind;
  Payload payload;
  std::string provenance;
  /// Name of the game a strategy entry is shaped for.
  std::optional<std::string> game;
};

/// Throws Error(UnknownName) for names not in the catalog.
const Entry& get(std::string_view name);
const std::vector<Entry>& list();
bool contains(std::string_view name);

const Game& game(std::string_view name);
const std::vector<UtilitySpec>& utilities(std::string_view name);
const StrategyProfile& profile(std::string_view name);
const CorrelatedStrategy& correlated(std::string_view name);

}  // namespace monfg::catalog
