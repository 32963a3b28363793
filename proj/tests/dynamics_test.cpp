#include "efcce/dynamics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "efcce/oracle.hpp"
#include "test_util.hpp"

namespace efcce {
namespace {

using testing::make_game;

double max_phi_rate(const RunResult& run, int horizon) {
  double best = -std::numeric_limits<double>::infinity();
  for (double v : run.phi_regret) best = std::max(best, v / horizon);
  return best;
}

TEST(Dynamics, FirstIterateIsFixedPointOfUniformMixture) {
  const Game game = make_game(GameKind::kKuhn3, 4);
  SelfPlay play(game);
  play.step();
  for (int i = 0; i < 3; ++i) {
    const Treeplex& tp = game.treeplex(i);
    MixedDeviation dev;
    dev.weights.assign(tp.num_infosets(), 1.0 / tp.num_infosets());
    for (int k = 0; k < tp.num_infosets(); ++k) dev.points.push_back({k, uniform_strategy(tp, k)});
    EXPECT_EQ(play.profile()[i].values, fixed_point(tp, dev).values);
  }
}

TEST(Dynamics, Deterministic) {
  const Game game = make_game(GameKind::kKuhn3, 3);
  RunConfig config;
  config.iterations = 200;
  config.gap_every = 7;
  const RunResult a = run_dynamics(game, config);
  const RunResult b = run_dynamics(game, config);
  ASSERT_EQ(a.checkpoints.size(), b.checkpoints.size());
  for (std::size_t k = 0; k < a.checkpoints.size(); ++k) {
    EXPECT_EQ(a.checkpoints[k].iteration, b.checkpoints[k].iteration);
    EXPECT_EQ(a.checkpoints[k].gap.overall, b.checkpoints[k].gap.overall);
    EXPECT_EQ(a.checkpoints[k].gap.per_player, b.checkpoints[k].gap.per_player);
  }
  EXPECT_EQ(a.phi_regret, b.phi_regret);
}

TEST(Dynamics, ThreadsDoNotChangeResults) {
  const Game game = make_game(GameKind::kKuhn3, 4);
  RunConfig config;
  config.iterations = 100;
  config.record_iterates = true;
  const RunResult one = run_dynamics(game, config);
  config.threads = 3;
  const RunResult three = run_dynamics(game, config);
  ASSERT_EQ(one.iterates.size(), three.iterates.size());
  for (std::size_t t = 0; t < one.iterates.size(); ++t) {
    for (int i = 0; i < 3; ++i) EXPECT_EQ(one.iterates[t][i].values, three.iterates[t][i].values);
  }
  EXPECT_EQ(one.checkpoints.back().gap.overall, three.checkpoints.back().gap.overall);
}

TEST(Dynamics, CheckpointCadence) {
  const Game game = make_game(GameKind::kKuhn2, 2);
  RunConfig config;
  config.iterations = 25;
  config.gap_every = 10;
  std::vector<int> seen;
  const RunResult run = run_dynamics(game, config, [&](const Checkpoint& cp) { seen.push_back(cp.iteration); });
  EXPECT_EQ(seen, (std::vector<int>{10, 20, 25}));
  EXPECT_EQ(run.checkpoints.size(), 3u);
  EXPECT_TRUE(run.iterates.empty());
  for (std::size_t k = 1; k < run.checkpoints.size(); ++k) {
    EXPECT_GE(run.checkpoints[k].elapsed_ms, run.checkpoints[k - 1].elapsed_ms);
  }
}

TEST(Dynamics, ConfigChecks) {
  const Game game = make_game(GameKind::kKuhn2, 2);
  RunConfig config;
  config.iterations = 0;
  EXPECT_THROW(run_dynamics(game, config), std::invalid_argument);
  config.iterations = 5;
  config.gap_every = 0;
  EXPECT_THROW(run_dynamics(game, config), std::invalid_argument);
  config.gap_every = 1;
  config.threads = 0;
  EXPECT_THROW(run_dynamics(game, config), std::invalid_argument);
  GapAccumulator acc(game);
  EXPECT_THROW(efcce_gap(game, acc, 0), std::invalid_argument);
}

TEST(Gap, ConstantPayoffPlayerHasZeroGap) {
  const Game kuhn = make_game(GameKind::kKuhn2, 2);
  Game game({kuhn.treeplex(0), kuhn.treeplex(1)});
  for (std::size_t z = 0; z < kuhn.num_terminals(); ++z) {
    const TerminalEntry t = kuhn.terminal(z);
    game.add_terminal(t.chance_prob, t.last_seq, std::vector<double>{7.0, t.payoffs[1]});
  }
  RunConfig config;
  config.iterations = 50;
  const RunResult run = run_dynamics(game, config);
  for (const Checkpoint& cp : run.checkpoints) EXPECT_EQ(cp.gap.per_player[0], 0.0);
}

TEST(Gap, MatchesBruteForceOnKuhn) {
  const Game game = make_game(GameKind::kKuhn2, 2);
  RunConfig config;
  config.iterations = 10;
  config.record_iterates = true;
  const RunResult run = run_dynamics(game, config);
  const GapReport brute = oracle::brute_force_gap(game, run.iterates);
  const GapReport& fast = run.checkpoints.back().gap;
  EXPECT_NEAR(fast.overall, brute.overall, 1e-9);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(fast.per_player[i], brute.per_player[i], 1e-9);
  EXPECT_NEAR(fast.overall, max_phi_rate(run, 10), 1e-9);
}

TEST(Gap, EqualsTrackedRegretOverLongRun) {
  const Game game = make_game(GameKind::kKuhn2, 2);
  RunConfig config;
  config.iterations = 500;
  config.gap_every = 500;
  const RunResult run = run_dynamics(game, config);
  EXPECT_NEAR(run.checkpoints.back().gap.overall, max_phi_rate(run, 500), 1e-9);
}

TEST(Gap, TrackedRegretOnThreePlayers) {
  const Game game = make_game(GameKind::kKuhn3, 4);
  RunConfig config;
  config.iterations = 300;
  config.gap_every = 100;
  const RunResult run = run_dynamics(game, config);
  EXPECT_NEAR(run.checkpoints.back().gap.overall, max_phi_rate(run, 300), 1e-9);
}

// Player 1 plays A->1, B->3, C->5 and player 2 plays action 1.
TEST(Gap, HandComputedSingleProfile) {
  const double p1[5][2] = {{0, 0}, {1, 0}, {3, 0}, {2, 0}, {-1, 0}};
  const Game game = testing::three_infoset_game(p1);
  const std::vector<SequenceFormStrategy> profile = {{kFullScope, {1, 1, 0, 1, 0, 1, 0}},
                                                     {kFullScope, {1, 1, 0}}};
  GapAccumulator acc(game);
  const auto gains = utility_gradients(game, profile);
  for (int i = 0; i < 2; ++i) acc.add(i, profile[i], gains[i]);
  const GapReport gap = efcce_gap(game, acc, 1);
  // player 1 earns 1.5; switching to 4 at B gains (3 - 1) / 2, the same
  // as re-deciding at A; player 2 loses 1.5 and breaks even with action 2
  EXPECT_DOUBLE_EQ(gap.per_player[0], 1.0);
  EXPECT_DOUBLE_EQ(gap.per_player[1], 1.5);
  EXPECT_DOUBLE_EQ(gap.overall, 1.5);
  EXPECT_DOUBLE_EQ(acc.benefit(0, 2, 1), 0.0);
  EXPECT_DOUBLE_EQ(acc.baseline(0), 1.5);

  const std::vector<std::vector<SequenceFormStrategy>> log = {profile};
  const GapReport brute = oracle::brute_force_gap(game, log);
  EXPECT_DOUBLE_EQ(brute.per_player[0], 1.0);
  EXPECT_DOUBLE_EQ(brute.per_player[1], 1.5);
}

TEST(Gap, RepeatedProfileIndependentOfT) {
  const double p1[5][2] = {{0.5, -1}, {1, 2}, {3, -2}, {2, 0}, {-1, 4}};
  const Game game = testing::three_infoset_game(p1);
  const std::vector<SequenceFormStrategy> profile = {uniform_strategy(game.treeplex(0)),
                                                     {kFullScope, {1, 0.25, 0.75}}};
  const auto gains = utility_gradients(game, profile);
  GapAccumulator acc(game);
  for (int t = 1; t <= 8; ++t) {
    for (int i = 0; i < 2; ++i) acc.add(i, profile[i], gains[i]);
    const GapReport gap = efcce_gap(game, acc, t);
    const std::vector<std::vector<SequenceFormStrategy>> log(t, profile);
    const GapReport brute = oracle::brute_force_gap(game, log);
    EXPECT_NEAR(gap.overall, brute.overall, 1e-12);
    if (t > 1) {
      GapAccumulator once(game);
      for (int i = 0; i < 2; ++i) once.add(i, profile[i], gains[i]);
      EXPECT_NEAR(gap.overall, efcce_gap(game, once, 1).overall, 1e-12);
    }
  }
}

}  // namespace
}  // namespace efcce
