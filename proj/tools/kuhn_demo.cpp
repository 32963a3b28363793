// Self-play on three-player Kuhn poker. Prints the EFCCE gap as it shrinks
// and, at the end, how often each player bets with each card on their first
// decision.

#include <cstdio>

#include "efcce/efcce.hpp"

int main() {
  efcce::GameSpec spec;
  spec.kind = efcce::GameKind::kKuhn3;
  spec.ranks = 4;
  const efcce::Game game = efcce::generate(spec);

  efcce::SelfPlay play(game);
  for (int t = 1; t <= 2000; ++t) {
    play.step();
    if ((t & (t - 1)) == 0 || t == 2000) std::printf("T=%5d  gap=%.6f\n", t, play.gap().overall);
  }

  // last iterate of player 1, root infosets only (one per private card)
  const efcce::Treeplex& tp = game.treeplex(0);
  const efcce::SequenceFormStrategy& x = play.profile()[0];
  std::printf("\nplayer 1, first decision (card:history  check  bet):\n");
  for (int i : tp.children(0)) {
    const efcce::Infoset& info = tp.infoset(i);
    std::printf("  %-8s", tp.name(i).c_str());
    for (int a = 0; a < info.num_actions; ++a) std::printf("  %.3f", x[info.first_seq + a]);
    std::printf("\n");
  }
  return 0;
}
