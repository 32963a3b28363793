#pragma once

// Small hand-built games shared by the unit tests.

#include <vector>

#include "efcce/game.hpp"
#include "efcce/games.hpp"
#include "efcce/treeplex.hpp"

namespace efcce::testing {

// One player's tree: A at the root (sequences 1, 2); B and C both follow
// sequence 1 (sequences 3, 4 and 5, 6).
inline Treeplex three_infoset_tree(int player = 0) {
  const std::vector<InfosetSpec> specs = {{0, 2, "A"}, {1, 2, "B"}, {1, 2, "C"}};
  return Treeplex::from_infosets(player, specs);
}

inline Treeplex single_infoset(int actions, int player = 0) {
  const std::vector<InfosetSpec> specs = {{0, actions, "I"}};
  return Treeplex::from_infosets(player, specs);
}

inline Treeplex no_infosets(int player) { return Treeplex::from_infosets(player, {}); }

// Player 1 owns three_infoset_tree; after action 1 a fair coin decides
// whether they are at B or C. Player 2 picks one of two actions without
// seeing anything. Zero-sum; player 1's payoff at each leaf is `p1[k][a]`
// with k indexing player 1's last sequence (2, 3, 4, 5, 6) and a player 2's
// action.
inline Game three_infoset_game(const double (&p1)[5][2]) {
  Game game({three_infoset_tree(0), single_infoset(2, 1)});
  const int seqs[5] = {2, 3, 4, 5, 6};
  const double prob[5] = {1.0, 0.5, 0.5, 0.5, 0.5};
  for (int k = 0; k < 5; ++k) {
    for (int a = 0; a < 2; ++a) {
      const std::vector<int> last = {seqs[k], 1 + a};
      const std::vector<double> pay = {p1[k][a], -p1[k][a]};
      game.add_terminal(prob[k], last, pay);
    }
  }
  return game;
}

inline Game make_game(GameKind kind, int ranks) {
  GameSpec spec;
  spec.kind = kind;
  spec.ranks = ranks;
  return generate(spec);
}

}  // namespace efcce::testing
