#include "efcce/serialize.hpp"

#include <gtest/gtest.h>

#include <string>

#include "test_util.hpp"

namespace efcce {
namespace {

using testing::make_game;

// Line number of the parse error raised by `text`, or 0 if it loads.
std::size_t error_line(const std::string& text) {
  try {
    load_from_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const char* kTiny =
    "efg-seq 1 2\n"
    "treeplex 0\n"
    "infoset 0 parent=0 actions=2\n"
    "treeplex 1\n"
    "terminals 2\n"
    "t 1 1 0 0.5 -0.5\n"
    "t 1 2 0 -1 1\n";

TEST(Serialize, RoundTripKuhn) {
  const Game game = make_game(GameKind::kKuhn3, 3);
  const std::string text = save_to_string(game);
  const Game back = load_from_string(text);
  EXPECT_TRUE(back == game);
  EXPECT_EQ(save_to_string(back), text);
}

TEST(Serialize, RoundTripKeepsSizes) {
  for (auto [kind, ranks] : {std::pair{GameKind::kGoofspiel3, 3}, std::pair{GameKind::kLeduc3, 3}}) {
    const Game game = make_game(kind, ranks);
    const Game back = load_from_string(save_to_string(game));
    for (int i = 0; i < game.num_players(); ++i) {
      EXPECT_EQ(back.treeplex(i).num_infosets(), game.treeplex(i).num_infosets());
      EXPECT_EQ(back.treeplex(i).num_sequences(), game.treeplex(i).num_sequences());
    }
    EXPECT_EQ(back.num_terminals(), game.num_terminals());
  }
}

TEST(Serialize, RealsRoundTripExactly) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.3333333333333333");
  Game game({testing::single_infoset(2, 0), testing::no_infosets(1)});
  game.add_terminal(1.0 / 3.0, std::vector<int>{1, 0}, std::vector<double>{1e-300, -2.5e17});
  EXPECT_TRUE(load_from_string(save_to_string(game)) == game);
}

TEST(Serialize, LoadsTinyGame) {
  const Game game = load_from_string(kTiny);
  ASSERT_EQ(game.num_players(), 2);
  EXPECT_EQ(game.treeplex(0).num_sequences(), 3);
  EXPECT_EQ(game.treeplex(1).num_sequences(), 1);
  EXPECT_EQ(game.num_terminals(), 2u);
  EXPECT_EQ(game.terminal(0).payoffs[0], 0.5);
}

TEST(Serialize, NonPreorderListingIsCanonicalized) {
  // Y is listed before Z although Z sits below X's first action
  const std::string text =
      "efg-seq 1 1\n"
      "treeplex 0\n"
      "infoset 0 parent=0 actions=2\n"
      "infoset 1 parent=0 actions=2\n"
      "infoset 2 parent=1 actions=3\n"
      "terminals 2\n"
      "t 0.5 4 7\n"
      "t 0.5 7 -7\n";
  const Game game = load_from_string(text);
  const Treeplex& tp = game.treeplex(0);
  EXPECT_EQ(tp.infoset(1).parent_seq, 1);
  // listed sequence 4 (Y's second action) is canonical 7, listed 7 is canonical 5
  EXPECT_EQ(game.terminal(0).last_seq[0], 7);
  EXPECT_EQ(game.terminal(1).last_seq[0], 5);
}

TEST(Serialize, UnsupportedVersion) {
  try {
    load_from_string("efg-seq 2 3\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
}

TEST(Serialize, ErrorsCarryLineNumbers) {
  std::string text = kTiny;
  EXPECT_EQ(error_line(text), 0u);
  // sequence 3 does not exist for player 1
  EXPECT_EQ(error_line(std::string(text).replace(text.find("t 1 2 0"), 7, "t 1 3 0")), 7u);
  // parent 5 is not defined yet
  EXPECT_EQ(error_line(std::string(text).replace(text.find("parent=0"), 8, "parent=5")), 3u);
  EXPECT_EQ(error_line(std::string(text).replace(text.find("infoset 0"), 9, "infoset 4")), 3u);
  EXPECT_EQ(error_line(std::string(text).replace(text.find("actions=2"), 9, "actions=0")), 3u);
  EXPECT_EQ(error_line(text + "t 1 1 0 0 0\n"), 8u);
  EXPECT_EQ(error_line(std::string(text).replace(text.find("terminals 2"), 11, "terminals 3")), 7u);
  EXPECT_EQ(error_line(std::string(text).replace(text.find("t 1 1"), 3, "t 0")), 6u);
  EXPECT_EQ(error_line(std::string(text).replace(text.find("0.5"), 3, "nan")), 6u);
  EXPECT_EQ(error_line(std::string(text).replace(text.find("0.5"), 3, "x")), 6u);
  EXPECT_EQ(error_line("efg-seq 1 0\n"), 1u);
}

TEST(Serialize, EmptyInput) { EXPECT_THROW(load_from_string(""), ParseError); }

}  // namespace
}  // namespace efcce
