#pragma once

// Self-check suites run by `efcce verify` and the acceptance binary. Each
// suite stops at the first counterexample and reports enough to reproduce
// it (game, player, seed and sample index).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "efcce/dynamics.hpp"
#include "efcce/games.hpp"
#include "efcce/oracle.hpp"
#include "efcce/regret.hpp"
#include "efcce/sampling.hpp"
#include "efcce/serialize.hpp"
#include "efcce/trigger.hpp"

namespace efcce::verify {

inline constexpr double kResidualTolerance = 1e-9;
inline constexpr double kEliminationTolerance = 1e-7;
inline constexpr double kGapTolerance = 1e-9;

struct SuiteResult {
  std::string name;
  bool passed = true;
  long checks = 0;
  std::string failure;  // first counterexample
};

using FixedPointFn = std::function<SequenceFormStrategy(const Treeplex&, const MixedDeviation&)>;

struct Options {
  FixedPointFn fixed_point = [](const Treeplex& tp, const MixedDeviation& dev) {
    return efcce::fixed_point(tp, dev);
  };
  std::uint64_t seed = 0x5eed;
  int deviations = 1000;  // per game
  int rounds = 500;       // regret sweeps
  std::size_t vertex_cap = 1000000;
};

// Deliberately broken fixed point for mutation smoke tests: always takes
// the weighted branch, dividing by a zero trigger mass where no trigger
// at or above an infoset carries weight.
inline SequenceFormStrategy fixed_point_skipping_uniform_branch(const Treeplex& tp,
                                                                const MixedDeviation& dev) {
  SequenceFormStrategy x{kFullScope, std::vector<double>(tp.num_sequences(), 0.0)};
  x[0] = 1.0;
  for (int i = 0; i < tp.num_infosets(); ++i) {
    const Infoset& info = tp.infoset(i);
    double mass = 0.0;
    for (int j : tp.ancestors(i)) mass += dev.weights[j];
    for (int a = 0; a < info.num_actions; ++a) {
      double acc = 0.0;
      for (int j : tp.ancestors(i)) {
        const Infoset& anc = tp.infoset(j);
        acc += dev.weights[j] * dev.points[j].continuation[info.first_seq + a - anc.first_seq] *
               x[anc.parent_seq];
      }
      x[info.first_seq + a] = acc / mass;
    }
  }
  return x;
}

struct SizeRow {
  std::string label;
  GameSpec spec;
  std::vector<std::pair<int, int>> expected;  // (infosets, sequences) per player
};

inline std::vector<SizeRow> golden_sizes() {
  auto spec = [](GameKind kind, int ranks) {
    GameSpec s;
    s.kind = kind;
    s.ranks = ranks;
    return s;
  };
  GameSpec battleship;
  battleship.kind = GameKind::kBattleship;
  return {
      {"kuhn3 ranks=4", spec(GameKind::kKuhn3, 4), {{16, 33}, {16, 33}, {16, 33}}},
      {"goofspiel3 ranks=3", spec(GameKind::kGoofspiel3, 3), {{837, 934}, {837, 934}, {837, 934}}},
      {"leduc3 ranks=3", spec(GameKind::kLeduc3, 3), {{3294, 7687}, {3294, 7687}, {3294, 7687}}},
      {"battleship grid=3x2 rounds=3", battleship, {{1413, 2965}, {1873, 4101}}},
  };
}

namespace detail {

inline void fail(SuiteResult& r, const std::string& what) {
  if (r.passed) r.failure = what;
  r.passed = false;
}

inline std::string describe_weights(const MixedDeviation& dev) {
  std::ostringstream out;
  out << "weights {";
  bool first = true;
  for (std::size_t k = 0; k < dev.weights.size(); ++k) {
    if (dev.weights[k] == 0.0) continue;
    out << (first ? "" : ", ") << k << ":" << dev.weights[k];
    first = false;
  }
  out << "}";
  return out.str();
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b, int* where = nullptr) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::abs(a[k] - b[k]);
    if (!(d <= worst)) {  // NaN counts as worst
      worst = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
      if (where != nullptr) *where = static_cast<int>(k);
    }
  }
  return worst;
}

inline GameSpec spec_of(GameKind kind, int ranks) {
  GameSpec s;
  s.kind = kind;
  s.ranks = ranks;
  return s;
}

}  // namespace detail

inline SuiteResult verify_sizes() {
  SuiteResult r;
  r.name = "sizes";
  for (const SizeRow& row : golden_sizes()) {
    const Game game = generate(row.spec);
    for (int i = 0; i < game.num_players(); ++i) {
      ++r.checks;
      const int got_i = game.treeplex(i).num_infosets();
      const int got_s = game.treeplex(i).num_sequences();
      if (got_i != row.expected[i].first || got_s != row.expected[i].second) {
        std::ostringstream msg;
        msg << row.label << " player " << i + 1 << ": " << got_i << " infosets / " << got_s
            << " sequences, expected " << row.expected[i].first << " / " << row.expected[i].second;
        if (!r.passed) r.failure += "; ";
        r.failure += msg.str();
        r.passed = false;
      }
    }
  }
  return r;
}

// Residual and membership of fixed points of random mixed deviations on the
// given games, plus agreement with Gaussian elimination on kuhn2.
inline SuiteResult verify_fixed_point(const Options& opt,
                                      std::vector<std::pair<std::string, GameSpec>> games = {
                                          {"kuhn3 ranks=4", detail::spec_of(GameKind::kKuhn3, 4)},
                                          {"goofspiel3 ranks=3", detail::spec_of(GameKind::kGoofspiel3, 3)}}) {
  SuiteResult r;
  r.name = "fixed-point";
  games.emplace_back("kuhn2 ranks=2", detail::spec_of(GameKind::kKuhn2, 2));
  for (std::size_t g = 0; g < games.size() && r.passed; ++g) {
    const bool with_elimination = g + 1 == games.size();
    const Game game = generate(games[g].second);
    sampling::Rng rng(opt.seed + g);
    for (int k = 0; k < opt.deviations && r.passed; ++k) {
      const int player = k % game.num_players();
      const Treeplex& tp = game.treeplex(player);
      const MixedDeviation dev = sampling::random_mixed_deviation(tp, rng);
      const SequenceFormStrategy q = opt.fixed_point(tp, dev);
      const SequenceFormStrategy image = apply_deviation(tp, dev, q);
      int at = -1;
      const double residual = detail::max_abs_diff(image.values, q.values, &at);
      ++r.checks;
      std::ostringstream where;
      where << games[g].first << " player " << player + 1 << " sample " << k << " (seed "
            << opt.seed + g << ", " << detail::describe_weights(dev) << ")";
      if (!(residual <= kResidualTolerance)) {
        detail::fail(r, where.str() + ": residual " + std::to_string(residual) + " at sequence " +
                            std::to_string(at) + ", x=" + std::to_string(q[at]) +
                            " dev(x)=" + std::to_string(image[at]));
        break;
      }
      if (!validate(q, tp)) {
        detail::fail(r, where.str() + ": fixed point violates the strategy constraints");
        break;
      }
      if (with_elimination) {
        const SequenceFormStrategy ref = oracle::fixed_point_by_elimination(tp, dev);
        const double diff = detail::max_abs_diff(q.values, ref.values, &at);
        ++r.checks;
        if (!(diff <= kEliminationTolerance)) {
          detail::fail(r, where.str() + ": differs from elimination by " + std::to_string(diff) +
                              " at sequence " + std::to_string(at));
        }
      }
    }
  }
  return r;
}

struct RegretCheck {
  std::string what;
  double regret = 0.0;
  double bound = 0.0;
};

// Regret of regret matching over m actions against random utilities in
// [-1, 1], with the hindsight best action.
inline RegretCheck regret_matching_sweep(std::size_t m, int rounds, sampling::Rng& rng) {
  RegretMatching rm(m);
  std::vector<double> totals(m, 0.0);
  double earned = 0.0;
  double range = 0.0;
  for (int t = 0; t < rounds; ++t) {
    const std::vector<double> x = rm.next_element();
    const std::vector<double> u = sampling::random_utility(m, rng);
    for (std::size_t a = 0; a < m; ++a) {
      totals[a] += u[a];
      earned += u[a] * x[a];
    }
    range = std::max(range, *std::max_element(u.begin(), u.end()) - *std::min_element(u.begin(), u.end()));
    rm.observe_utility(u);
  }
  const double best = *std::max_element(totals.begin(), totals.end());
  return {"regret matching m=" + std::to_string(m), best - earned,
          range * static_cast<double>(m) * std::sqrt(static_cast<double>(rounds))};
}

// Regret of CFR over one scope, hindsight maximum over enumerated vertices.
inline RegretCheck cfr_sweep(const Treeplex& tp, int root, int rounds, sampling::Rng& rng,
                             std::size_t cap) {
  const std::vector<SequenceFormStrategy> vertices = enumerate_pure_strategies(tp, root, cap);
  Cfr cfr(tp, root);
  const std::size_t size = tp.scope_size(root);
  std::vector<double> vertex_totals(vertices.size(), 0.0);
  double earned = 0.0;
  double range = 0.0;
  for (int t = 0; t < rounds; ++t) {
    const SequenceFormStrategy x = cfr.next_element();
    const std::vector<double> u = sampling::random_utility(size, rng);
    earned += utility_value(u, x);
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      const double val = utility_value(u, vertices[v]);
      vertex_totals[v] += val;
      hi = std::max(hi, val);
      lo = std::min(lo, val);
    }
    range = std::max(range, hi - lo);
    cfr.observe_utility(u);
  }
  const double best = *std::max_element(vertex_totals.begin(), vertex_totals.end());
  return {"cfr scope " + (root == kFullScope ? std::string("full") : "infoset " + std::to_string(root)),
          best - earned, range * static_cast<double>(size) * std::sqrt(static_cast<double>(rounds))};
}

// Regret of the deviation learner against random gains and random played
// strategies; every pure trigger deviation is applied as an explicit matrix.
inline RegretCheck psi_sweep(const Treeplex& tp, int rounds, sampling::Rng& rng, std::size_t cap) {
  std::vector<oracle::DenseMatrix> deviations;
  for (int k = 0; k < tp.num_infosets(); ++k) {
    for (const SequenceFormStrategy& v : enumerate_pure_strategies(tp, k, cap)) {
      deviations.push_back(oracle::deviation_matrix(tp, TriggerDeviation{k, v}));
      if (deviations.size() > cap) throw std::length_error("too many trigger deviations");
    }
  }
  PsiMinimizer psi = make_psi_minimizer(tp);
  std::vector<double> totals(deviations.size(), 0.0);
  double earned = 0.0;
  double range = 0.0;
  for (int t = 0; t < rounds; ++t) {
    const MixedDeviation& phi = psi.next_element();
    const SequenceFormStrategy x = sampling::random_strategy(tp, rng);
    const std::vector<double> gain = sampling::random_utility(tp.num_sequences(), rng);
    earned += utility_value(gain, apply_deviation(tp, phi, x));
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < deviations.size(); ++d) {
      const double val = utility_value(gain, deviations[d] * std::span<const double>(x.values));
      totals[d] += val;
      hi = std::max(hi, val);
      lo = std::min(lo, val);
    }
    range = std::max(range, hi - lo);
    psi.observe_utility(DeviationUtility::make(tp, gain, x.values));
  }
  const double best = *std::max_element(totals.begin(), totals.end());
  return {"trigger deviation learner", best - earned,
          2.0 * range * tp.num_sequences() * std::sqrt(static_cast<double>(rounds))};
}

inline SuiteResult verify_regret(const Options& opt,
                                 std::vector<std::pair<std::string, GameSpec>> games = {
                                     {"kuhn2 ranks=2", detail::spec_of(GameKind::kKuhn2, 2)},
                                     {"kuhn3 ranks=4", detail::spec_of(GameKind::kKuhn3, 4)}}) {
  SuiteResult r;
  r.name = "regret";
  for (std::size_t g = 0; g < games.size() && r.passed; ++g) {
    const Game game = generate(games[g].second);
    sampling::Rng rng(opt.seed + 100 + g);
    auto check = [&](const RegretCheck& c, int player) {
      ++r.checks;
      if (!(c.regret <= c.bound)) {
        std::ostringstream msg;
        msg << games[g].first << " player " << player + 1 << ", " << c.what << ": regret " << c.regret
            << " exceeds bound " << c.bound << " (seed " << opt.seed + 100 + g << ")";
        detail::fail(r, msg.str());
      }
    };
    for (int i = 0; i < game.num_players() && r.passed; ++i) {
      const Treeplex& tp = game.treeplex(i);
      check(regret_matching_sweep(std::max(2, tp.num_infosets()), opt.rounds, rng), i);
      check(cfr_sweep(tp, kFullScope, opt.rounds, rng, opt.vertex_cap), i);
      for (int k = 0; k < tp.num_infosets() && r.passed; ++k) {
        check(cfr_sweep(tp, k, opt.rounds, rng, opt.vertex_cap), i);
      }
      if (r.passed) check(psi_sweep(tp, opt.rounds, rng, opt.vertex_cap), i);
    }
  }
  return r;
}

// Gap from the running accumulators against brute-force enumeration and
// against the learners' own trigger regrets, on kuhn2.
inline SuiteResult verify_gap(const Options& opt, std::vector<int> horizons = {1, 10, 100}) {
  SuiteResult r;
  r.name = "gap";
  const Game game = generate(detail::spec_of(GameKind::kKuhn2, 2));
  for (int horizon : horizons) {
    RunConfig config;
    config.iterations = horizon;
    config.gap_every = horizon;
    config.record_iterates = true;
    const RunResult run = run_dynamics(game, config);
    const GapReport& fast = run.checkpoints.back().gap;
    const GapReport brute = oracle::brute_force_gap(game, run.iterates, opt.vertex_cap);
    double phi = -std::numeric_limits<double>::infinity();
    for (double v : run.phi_regret) phi = std::max(phi, v / horizon);
    ++r.checks;
    const std::string at = "kuhn2 T=" + std::to_string(horizon);
    if (!(std::abs(fast.overall - brute.overall) <= kGapTolerance)) {
      detail::fail(r, at + ": gap " + format_real(fast.overall) + " vs brute force " +
                          format_real(brute.overall));
      break;
    }
    for (std::size_t i = 0; i < fast.per_player.size(); ++i) {
      ++r.checks;
      if (!(std::abs(fast.per_player[i] - brute.per_player[i]) <= kGapTolerance)) {
        detail::fail(r, at + " player " + std::to_string(i + 1) + ": gap " +
                            format_real(fast.per_player[i]) + " vs brute force " +
                            format_real(brute.per_player[i]));
      }
    }
    ++r.checks;
    if (!(std::abs(fast.overall - phi) <= kGapTolerance)) {
      detail::fail(r, at + ": gap " + format_real(fast.overall) + " vs max trigger regret / T " +
                          format_real(phi));
    }
    if (!r.passed) break;
  }
  return r;
}

inline std::vector<std::string> suite_names() { return {"sizes", "fixed-point", "regret", "gap"}; }

inline SuiteResult run_suite(const std::string& name, const Options& opt) {
  if (name == "sizes") return verify_sizes();
  if (name == "fixed-point") return verify_fixed_point(opt);
  if (name == "regret") return verify_regret(opt);
  if (name == "gap") return verify_gap(opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace efcce::verify
