#include "efcce/games.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "test_util.hpp"

namespace efcce {
namespace {

using testing::make_game;

void expect_sizes(const Game& game, std::vector<std::pair<int, int>> sizes) {
  ASSERT_EQ(game.num_players(), static_cast<int>(sizes.size()));
  for (int i = 0; i < game.num_players(); ++i) {
    EXPECT_EQ(game.treeplex(i).num_infosets(), sizes[i].first) << "player " << i + 1;
    EXPECT_EQ(game.treeplex(i).num_sequences(), sizes[i].second) << "player " << i + 1;
  }
}

// Chance and uniform play together put total probability 1 on the leaves.
double uniform_leaf_mass(const Game& game) {
  std::vector<SequenceFormStrategy> p;
  for (const auto& tp : game.treeplexes()) p.push_back(uniform_strategy(tp));
  double mass = 0.0;
  for (std::size_t z = 0; z < game.num_terminals(); ++z) {
    const TerminalEntry t = game.terminal(z);
    double reach = t.chance_prob;
    for (int i = 0; i < game.num_players(); ++i) reach *= p[i][t.last_seq[i]];
    mass += reach;
  }
  return mass;
}

TEST(Generators, KuhnThreePlayerFourRanks) {
  const Game game = make_game(GameKind::kKuhn3, 4);
  expect_sizes(game, {{16, 33}, {16, 33}, {16, 33}});
  EXPECT_NEAR(uniform_leaf_mass(game), 1.0, 1e-12);
}

TEST(Generators, KuhnTwoPlayerIsZeroSum) {
  const Game game = make_game(GameKind::kKuhn2, 3);
  expect_sizes(game, {{6, 13}, {6, 13}});
  for (std::size_t z = 0; z < game.num_terminals(); ++z) {
    const TerminalEntry t = game.terminal(z);
    EXPECT_EQ(t.payoffs[0] + t.payoffs[1], 0.0);
  }
  EXPECT_EQ(game.payoff_range(0), 4.0);
}

TEST(Generators, Goofspiel) {
  const Game game = make_game(GameKind::kGoofspiel3, 3);
  expect_sizes(game, {{837, 934}, {837, 934}, {837, 934}});
  EXPECT_NEAR(uniform_leaf_mass(game), 1.0, 1e-12);
  // prizes 1 + 2 + 3 are shared out or discarded on ties
  for (std::size_t z = 0; z < game.num_terminals(); ++z) {
    const TerminalEntry t = game.terminal(z);
    const double total = t.payoffs[0] + t.payoffs[1] + t.payoffs[2];
    EXPECT_GE(total, 0.0);
    EXPECT_LE(total, 6.0);
  }
}

TEST(Generators, Leduc) {
  const Game game = make_game(GameKind::kLeduc3, 3);
  expect_sizes(game, {{3294, 7687}, {3294, 7687}, {3294, 7687}});
  EXPECT_NEAR(uniform_leaf_mass(game), 1.0, 1e-9);
  for (std::size_t z = 0; z < game.num_terminals(); ++z) {
    const TerminalEntry t = game.terminal(z);
    EXPECT_NEAR(t.payoffs[0] + t.payoffs[1] + t.payoffs[2], 0.0, 1e-12);
  }
}

// These counts are those of OpenSpiel's battleship on the same grid, not
// the smaller table the benchmark was described with.
TEST(Generators, Battleship) {
  GameSpec spec;
  spec.kind = GameKind::kBattleship;
  const Game game = generate(spec);
  expect_sizes(game, {{18152, 73130}, {62875, 253940}});
  EXPECT_NEAR(uniform_leaf_mass(game), 1.0, 1e-9);
  std::set<double> values;
  for (double u : game.payoffs()) values.insert(u);
  EXPECT_EQ(values, (std::set<double>{-2.0, 0.0, 1.0}));
}

TEST(Generators, SmallBattleship) {
  GameSpec spec;
  spec.kind = GameKind::kBattleship;
  spec.grid_width = 2;
  spec.grid_height = 1;
  spec.ship_length = 1;
  spec.rounds = 1;
  const Game game = generate(spec);
  // player 1: the placement, then one shot per own placement; player 2:
  // the placement, then one shot per own placement after a miss
  EXPECT_EQ(game.treeplex(0).num_infosets(), 3);
  EXPECT_EQ(game.treeplex(1).num_infosets(), 3);
  EXPECT_NEAR(uniform_leaf_mass(game), 1.0, 1e-12);
}

TEST(GameSpec, ParseAndCheck) {
  EXPECT_EQ(parse_game_kind("leduc3"), GameKind::kLeduc3);
  EXPECT_EQ(to_string(GameKind::kGoofspiel3), "goofspiel3");
  EXPECT_THROW(parse_game_kind("chess"), std::invalid_argument);
  GameSpec spec;
  spec.kind = GameKind::kKuhn3;
  spec.ranks = 2;
  EXPECT_THROW(check_spec(spec), std::invalid_argument);
  spec.kind = GameKind::kBattleship;
  spec.ship_length = 4;
  EXPECT_THROW(check_spec(spec), std::invalid_argument);
  spec.ship_length = 2;
  spec.rounds = 7;
  EXPECT_THROW(check_spec(spec), std::invalid_argument);
  spec.rounds = 3;
  spec.loss_multiplier = 0.0;
  EXPECT_THROW(generate(spec), std::invalid_argument);
}

}  // namespace
}  // namespace efcce
