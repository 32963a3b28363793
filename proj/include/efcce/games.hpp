#pragma once

// Benchmark instances: the generators behind GameSpec.

#include <stdexcept>
#include <string>
#include <string_view>

#include "efcce/game.hpp"
#include "efcce/games/battleship.hpp"
#include "efcce/games/goofspiel.hpp"
#include "efcce/games/kuhn.hpp"
#include "efcce/games/leduc.hpp"
#include "efcce/tree_builder.hpp"

namespace efcce {

enum class GameKind { kKuhn2, kKuhn3, kGoofspiel3, kLeduc3, kBattleship };

struct GameSpec {
  GameKind kind = GameKind::kKuhn3;
  int ranks = 3;
  int grid_width = 3;
  int grid_height = 2;
  int rounds = 3;
  int ship_length = 2;
  double loss_multiplier = 2.0;
};

inline GameKind parse_game_kind(std::string_view name) {
  if (name == "kuhn2") return GameKind::kKuhn2;
  if (name == "kuhn3") return GameKind::kKuhn3;
  if (name == "goofspiel3") return GameKind::kGoofspiel3;
  if (name == "leduc3") return GameKind::kLeduc3;
  if (name == "battleship") return GameKind::kBattleship;
  throw std::invalid_argument("unknown game '" + std::string(name) + "'");
}

inline std::string to_string(GameKind kind) {
  switch (kind) {
    case GameKind::kKuhn2: return "kuhn2";
    case GameKind::kKuhn3: return "kuhn3";
    case GameKind::kGoofspiel3: return "goofspiel3";
    case GameKind::kLeduc3: return "leduc3";
    case GameKind::kBattleship: return "battleship";
  }
  return "?";
}

inline void check_spec(const GameSpec& spec) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(to_string(spec.kind) + ": " + why);
  };
  switch (spec.kind) {
    case GameKind::kKuhn2:
      if (spec.ranks < 2) fail("ranks must be at least 2");
      break;
    case GameKind::kKuhn3:
      if (spec.ranks < 3) fail("ranks must be at least 3");
      break;
    case GameKind::kGoofspiel3:
    case GameKind::kLeduc3:
      if (spec.ranks < 2) fail("ranks must be at least 2");
      break;
    case GameKind::kBattleship:
      if (spec.rounds < 1) fail("rounds must be at least 1");
      if (spec.grid_width < 1 || spec.grid_height < 1) fail("grid must be non-empty");
      if (spec.ship_length < 1 ||
          (spec.ship_length > spec.grid_width && spec.ship_length > spec.grid_height)) {
        fail("ship does not fit in the grid");
      }
      if (spec.rounds > spec.grid_width * spec.grid_height) fail("more rounds than grid cells");
      if (!(spec.loss_multiplier > 0.0)) fail("loss multiplier must be positive");
      break;
  }
}

inline Game generate(const GameSpec& spec) {
  check_spec(spec);
  switch (spec.kind) {
    case GameKind::kKuhn2: return build_game(games::KuhnRules(2, spec.ranks));
    case GameKind::kKuhn3: return build_game(games::KuhnRules(3, spec.ranks));
    case GameKind::kGoofspiel3: return build_game(games::GoofspielRules(3, spec.ranks));
    case GameKind::kLeduc3: return build_game(games::LeducRules(3, spec.ranks));
    case GameKind::kBattleship: {
      games::BattleshipConfig config;
      config.width = spec.grid_width;
      config.height = spec.grid_height;
      config.ship_length = spec.ship_length;
      config.rounds = spec.rounds;
      config.loss_multiplier = spec.loss_multiplier;
      return build_game(games::BattleshipRules(config));
    }
  }
  throw std::invalid_argument("unknown game kind");
}

}  // namespace efcce
