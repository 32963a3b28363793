#pragma once

// Self-play of one CtrMinimizer per player and the EFCCE gap of the
// expected empirical frequency of play (the uniform average of the product
// distributions played so far).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "efcce/game.hpp"
#include "efcce/trigger.hpp"

namespace efcce {

struct RunConfig {
  int iterations = 1000;
  int gap_every = 1;
  std::uint64_t seed = 0;  // unused: the dynamics are deterministic
  bool record_iterates = false;
  int threads = 1;
};

inline void check_config(const RunConfig& config) {
  if (config.iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (config.gap_every < 1) throw std::invalid_argument("gap_every must be at least 1");
  if (config.threads < 1) throw std::invalid_argument("threads must be at least 1");
}

struct GapReport {
  double overall = 0.0;
  std::vector<double> per_player;
};

// Running sums from which the gap is read at any time. For player i and
// trigger I:
//   deviate_I[s] = sum_t x_t[parent(I)] * c_t[s]    s at or below I
//   follow_I     = sum_t sum_{s at or below I} c_t[s] * x_t[s]
// where c_t is player i's utility gradient against the others at time t.
// Memory is independent of the number of iterations.
class GapAccumulator {
 public:
  explicit GapAccumulator(const Game& game) : game_(&game), players_(game.num_players()) {
    for (int i = 0; i < game.num_players(); ++i) {
      const Treeplex& tp = game.treeplex(i);
      PlayerSums& p = players_[i];
      p.offset.assign(tp.num_infosets() + 1, 0);
      for (int k = 0; k < tp.num_infosets(); ++k) p.offset[k + 1] = p.offset[k] + tp.scope_size(k);
      p.deviate.assign(p.offset.back(), 0.0);
      p.follow.assign(tp.num_infosets(), 0.0);
      p.prefix.assign(tp.num_sequences() + 1, 0.0);
    }
  }

  int iterations(int player) const { return players_[player].rounds; }

  void add(int player, const SequenceFormStrategy& x, std::span<const double> gain) {
    const Treeplex& tp = game_->treeplex(player);
    PlayerSums& p = players_[player];
    // subtree sequence ranges are contiguous, so follow_I is a prefix difference
    for (int s = 0; s < tp.num_sequences(); ++s) p.prefix[s + 1] = p.prefix[s] + gain[s] * x[s];
    p.baseline += p.prefix.back();
    for (int k = 0; k < tp.num_infosets(); ++k) {
      const Infoset& info = tp.infoset(k);
      const double reach = x[info.parent_seq];
      p.follow[k] += p.prefix[info.seq_end] - p.prefix[info.first_seq];
      if (reach == 0.0) continue;
      double* row = p.deviate.data() + p.offset[k];
      for (int s = info.first_seq; s < info.seq_end; ++s) row[s - info.first_seq] += reach * gain[s];
    }
    ++p.rounds;
  }

  // Sum over t of the player's expected utility.
  double baseline(int player) const { return players_[player].baseline; }

  // Average gain of the best deviation triggered at `trigger` over
  // `iterations` rounds.
  double benefit(int player, int trigger, int iterations) const {
    const Treeplex& tp = game_->treeplex(player);
    const PlayerSums& p = players_[player];
    std::span<const double> row{p.deviate.data() + p.offset[trigger],
                                static_cast<std::size_t>(tp.scope_size(trigger))};
    return (best_response_value(tp, row, trigger).value - p.follow[trigger]) / iterations;
  }

 private:
  struct PlayerSums {
    std::vector<std::size_t> offset;
    std::vector<double> deviate;
    std::vector<double> follow;
    std::vector<double> prefix;
    double baseline = 0.0;
    int rounds = 0;
  };

  const Game* game_;
  std::vector<PlayerSums> players_;
};

// Per-player gap is the best trigger benefit (0 for a player without
// infosets); overall gap is the largest per-player gap. Values are raw and
// may be negative.
inline GapReport efcce_gap(const Game& game, const GapAccumulator& acc, int iterations) {
  if (iterations <= 0) throw std::invalid_argument("gap needs at least one iteration");
  GapReport report;
  report.overall = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.num_players(); ++i) {
    const int triggers = game.treeplex(i).num_infosets();
    double best = triggers == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    for (int k = 0; k < triggers; ++k) best = std::max(best, acc.benefit(i, k, iterations));
    report.per_player.push_back(best);
    report.overall = std::max(report.overall, best);
  }
  return report;
}

namespace detail {

// Runs body(i) for i in [0, n) on up to `threads` threads.
template <class Body>
void parallel_for(int n, int threads, Body&& body) {
  const int workers = std::min(n, threads);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (int i = 0; i < n; i += workers) body(i);
}

}  // namespace detail

// All players learn simultaneously: each emits its strategy, then each
// observes its utility gradient against the others' strategies.
class SelfPlay {
 public:
  explicit SelfPlay(const Game& game, int threads = 1)
      : game_(&game), threads_(threads), accumulator_(game), profile_(game.num_players()) {
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
    minimizers_.reserve(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) minimizers_.emplace_back(game.treeplex(i));
  }

  int iteration() const { return iteration_; }
  const GapAccumulator& accumulator() const { return accumulator_; }
  const CtrMinimizer& minimizer(int player) const { return minimizers_[player]; }
  // Profile played in the last step.
  std::span<const SequenceFormStrategy> profile() const { return profile_; }

  void step() {
    const int n = game_->num_players();
    detail::parallel_for(n, threads_, [&](int i) { profile_[i] = minimizers_[i].next_element(); });
    const auto gains = utility_gradients(*game_, profile_);
    detail::parallel_for(n, threads_, [&](int i) {
      minimizers_[i].observe_utility(gains[i]);
      accumulator_.add(i, profile_[i], gains[i]);
    });
    ++iteration_;
  }

  GapReport gap() const { return efcce_gap(*game_, accumulator_, iteration_); }

 private:
  const Game* game_;
  int threads_;
  std::vector<CtrMinimizer> minimizers_;
  GapAccumulator accumulator_;
  std::vector<SequenceFormStrategy> profile_;
  int iteration_ = 0;
};

struct Checkpoint {
  int iteration = 0;
  double elapsed_ms = 0.0;
  GapReport gap;
};

struct RunResult {
  std::vector<Checkpoint> checkpoints;
  std::vector<double> phi_regret;  // per player, after the last iteration
  std::vector<std::vector<SequenceFormStrategy>> iterates;  // if recorded
};

inline bool is_checkpoint(int t, const RunConfig& config) {
  return t % config.gap_every == 0 || t == config.iterations;
}

// Runs the dynamics for config.iterations steps. A gap is evaluated after
// every gap_every-th step and after the last one; elapsed time excludes gap
// evaluation.
inline RunResult run_dynamics(const Game& game, const RunConfig& config,
                              const std::function<void(const Checkpoint&)>& on_checkpoint = {}) {
  check_config(config);
  using Clock = std::chrono::steady_clock;
  SelfPlay play(game, config.threads);
  RunResult result;
  Clock::duration spent{};
  for (int t = 1; t <= config.iterations; ++t) {
    const auto start = Clock::now();
    play.step();
    spent += Clock::now() - start;
    if (config.record_iterates) {
      result.iterates.emplace_back(play.profile().begin(), play.profile().end());
    }
    if (is_checkpoint(t, config)) {
      Checkpoint cp{t, std::chrono::duration<double, std::milli>(spent).count(), play.gap()};
      if (on_checkpoint) on_checkpoint(cp);
      result.checkpoints.push_back(std::move(cp));
    }
  }
  for (int i = 0; i < game.num_players(); ++i) {
    result.phi_regret.push_back(play.minimizer(i).phi_regret());
  }
  return result;
}

}  // namespace efcce
