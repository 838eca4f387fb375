#include "monfg/catalog.hpp"

#include "monfg/error.hpp"

namespace monfg::catalog {

std::string_view to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::Game: return "game";
    case EntryKind::UtilityPair: return "utility_pair";
    case EntryKind::Profile: return "profile";
    case EntryKind::CorrelatedStrategy: return "correlated_strategy";
  }
  return "unknown";
}

namespace {

using Labels = std::vector<std::vector<std::string>>;

// Two-player game whose two players receive the same payoff vector in each
// cell; `cells` is row-major over (row action, column action).
Game shared_vector_game(const Labels& labels, const std::vector<PayoffVector>& cells) {
  std::vector<double> flat;
  for (const auto& v : cells) {
    for (int player = 0; player < 2; ++player) flat.insert(flat.end(), v.begin(), v.end());
  }
  return Game(cells.front().size(), labels, std::move(flat));
}

std::vector<Entry> build() {
  const Labels sd = {{"S", "D"}, {"S", "D"}};
  const Labels lmr = {{"L", "M", "R"}, {"L", "M", "R"}};
  const Labels lr = {{"L", "R"}, {"L", "R"}};

  Game chicken(1, sd, {6, 6, 2, 7, 7, 2, 0, 0});
  Game imbalancing = shared_vector_game(
      lmr, {{4, 0}, {3, 1}, {2, 2}, {3, 1}, {2, 2}, {1, 3}, {2, 2}, {1, 3}, {0, 4}});
  Game imbalancing_tradeoff(
      1, lmr, {16, 0, 10, 3, 8, 4, 10, 3, 8, 4, 10, 3, 8, 4, 10, 3, 16, 0});
  Game game2 = shared_vector_game(lr, {{4, 0}, {2, 2}, {2, 2}, {0, 4}});
  Game game3 = shared_vector_game(
      lmr, {{4, 1}, {1, 2}, {2, 1}, {3, 1}, {3, 2}, {1, 2}, {1, 2}, {2, 1}, {1, 3}});

  std::vector<Entry> entries;
  auto add = [&](std::string name, EntryKind kind, Payload payload, std::string provenance,
                 std::optional<std::string> game = std::nullopt) {
    entries.push_back({std::move(name), kind, std::move(payload), std::move(provenance),
                       std::move(game)});
  };

  add("chicken", EntryKind::Game, chicken,
      "Chicken: single-objective 2x2 game, each driver swerves (S) or drives on (D)");
  add("chicken_ce", EntryKind::CorrelatedStrategy,
      CorrelatedStrategy(chicken.space(), {0.5, 0.25, 0.25, 0.0}),
      "Chicken correlated equilibrium: (S,S) 1/2, (S,D) 1/4, (D,S) 1/4", "chicken");
  add("imbalancing", EntryKind::Game, imbalancing,
      "(Im)balancing act: 3x3, two objectives, identical payoff vectors for both players");
  add("imbalancing_tradeoff", EntryKind::Game, imbalancing_tradeoff,
      "(Im)balancing act scalarised with the 'paper' utility pair (ESR trade-off game)",
      std::nullopt);
  add("imbalancing_ce", EntryKind::CorrelatedStrategy,
      CorrelatedStrategy(imbalancing.space(), {0, 0.75, 0, 0, 0, 0, 0, 0.25, 0}),
      "(Im)balancing act single-signal SER correlated equilibrium: (L,M) 3/4, (R,M) 1/4",
      "imbalancing");
  add("imbalancing_mixed", EntryKind::Profile,
      StrategyProfile({MixedStrategy({0.5, 0.0, 0.5}), MixedStrategy({0.0, 1.0, 0.0})}),
      "(Im)balancing act: row mixes L/R evenly, column plays M (ESR Nash, not SER Nash)",
      "imbalancing");
  add("game2", EntryKind::Game, game2, "(Im)balancing act with action M removed: 2x2, two objectives");
  add("game2_ce", EntryKind::CorrelatedStrategy,
      CorrelatedStrategy(game2.space(), {0.25, 0.25, 0.25, 0.25}),
      "(Im)balancing act without M: uniform correlated strategy", "game2");
  add("game3", EntryKind::Game, game3,
      "3x3 two-objective game: the diagonal pure profiles are ESR Nash; under SER only (M,M) is");
  add("game3_ce", EntryKind::CorrelatedStrategy,
      CorrelatedStrategy(game3.space(), {0.5, 0, 0, 0, 0.5, 0, 0, 0, 0}),
      "3x3 diagonal game: correlated strategy (L,L) 1/2, (M,M) 1/2", "game3");
  add("paper", EntryKind::UtilityPair,
      std::vector<UtilitySpec>{UtilitySpec::polysum({1, 1}, {2, 2}), UtilitySpec::product()},
      "player 1: u(p) = p1*p1 + p2*p2 (rewards imbalance); player 2: u(p) = p1*p2 (rewards balance)");
  add("identity", EntryKind::UtilityPair,
      std::vector<UtilitySpec>{UtilitySpec::identity(), UtilitySpec::identity()},
      "identity utilities for single-objective games");
  return entries;
}

template <class T>
const T& payload_as(std::string_view name, EntryKind kind) {
  const Entry& e = get(name);
  if (e.kind != kind) {
    throw Error(ErrorKind::UnknownName, "'" + std::string(name) + "' is a " +
                                            std::string(to_string(e.kind)) + ", not a " +
                                            std::string(to_string(kind)));
  }
  return std::get<T>(e.payload);
}

}  // namespace

const std::vector<Entry>& list() {
  static const std::vector<Entry> entries = build();
  return entries;
}

bool contains(std::string_view name) {
  for (const auto& e : list()) {
    if (e.name == name) return true;
  }
  return false;
}

const Entry& get(std::string_view name) {
  for (const auto& e : list()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorKind::UnknownName, "no catalog entry named '" + std::string(name) + "'");
}

const Game& game(std::string_view name) { return payload_as<Game>(name, EntryKind::Game); }

const std::vector<UtilitySpec>& utilities(std::string_view name) {
  return payload_as<std::vector<UtilitySpec>>(name, EntryKind::UtilityPair);
}

const StrategyProfile& profile(std::string_view name) {
  return payload_as<StrategyProfile>(name, EntryKind::Profile);
}

const CorrelatedStrategy& correlated(std::string_view name) {
  return payload_as<CorrelatedStrategy>(name, EntryKind::CorrelatedStrategy);
}

}  // namespace monfg::catalog
