#pragma once

// Brute-force reference computations for small games. Everything here
// builds explicit |sequences| x |sequences| matrices or enumerates pure
// strategies, and is only meant to cross-check the fast paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "efcce/dynamics.hpp"
#include "efcce/game.hpp"
#include "efcce/trigger.hpp"

namespace efcce::oracle {

// Row-major square matrix.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit DenseMatrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

  std::vector<double> operator*(std::span<const double> x) const {
    std::vector<double> y(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) y[r] += a[r * n + c] * x[c];
    }
    return y;
  }
};

// Identity on rows outside the trigger's subtree; row s inside it has the
// single entry continuation[s] in the column of the trigger's parent
// sequence.
inline DenseMatrix deviation_matrix(const Treeplex& tp, const TriggerDeviation& dev) {
  DenseMatrix m(tp.num_sequences());
  const Infoset& info = tp.infoset(dev.trigger);
  for (int s = 0; s < tp.num_sequences(); ++s) {
    if (tp.owner(s) >= 0 && tp.in_subtree(s, dev.trigger)) {
      m(s, info.parent_seq) = dev.continuation[s - info.first_seq];
    } else {
      m(s, s) = 1.0;
    }
  }
  return m;
}

inline DenseMatrix deviation_matrix(const Treeplex& tp, const MixedDeviation& dev) {
  DenseMatrix m(tp.num_sequences());
  for (std::size_t k = 0; k < dev.weights.size(); ++k) {
    if (dev.weights[k] == 0.0) continue;
    const DenseMatrix part = deviation_matrix(tp, dev.points[k]);
    for (std::size_t e = 0; e < m.a.size(); ++e) m.a[e] += dev.weights[k] * part.a[e];
  }
  return m;
}

// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve(DenseMatrix a, std::vector<double> b) {
  const std::size_t n = a.n;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == 0.0) throw std::runtime_error("singular system");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a(r, c) * x[c];
    x[r] = acc / a(r, r);
  }
  return x;
}

// Fixed point of a mixed deviation from the linear system (M - I) x = 0
// with x[empty] = 1. Sequences below no weighted trigger are left
// unconstrained by M; they are pinned to the uniform split of their
// parent's mass.
inline SequenceFormStrategy fixed_point_by_elimination(const Treeplex& tp, const MixedDeviation& dev) {
  const std::size_t n = tp.num_sequences();
  DenseMatrix a = deviation_matrix(tp, dev);
  for (std::size_t s = 0; s < n; ++s) a(s, s) -= 1.0;
  std::vector<double> b(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) a(0, c) = 0.0;
  a(0, 0) = 1.0;
  b[0] = 1.0;
  for (int i = 0; i < tp.num_infosets(); ++i) {
    bool weighted = false;
    for (int j : tp.ancestors(i)) weighted = weighted || dev.weights[j] != 0.0;
    if (weighted) continue;
    const Infoset& info = tp.infoset(i);
    for (int k = 0; k < info.num_actions; ++k) {
      const std::size_t s = info.first_seq + k;
      for (std::size_t c = 0; c < n; ++c) a(s, c) = 0.0;
      a(s, s) = 1.0;
      a(s, info.parent_seq) = -1.0 / info.num_actions;
    }
  }
  return {kFullScope, solve(std::move(a), std::move(b))};
}

// Number of pure continuations summed over every (player, trigger) pair.
inline std::size_t count_deviations(const Game& game, std::size_t cap) {
  std::size_t total = 0;
  for (int i = 0; i < game.num_players(); ++i) {
    const Treeplex& tp = game.treeplex(i);
    for (int k = 0; k < tp.num_infosets(); ++k) {
      total += enumerate_pure_strategies(tp, k, cap).size();
      if (total > cap) {
        throw std::length_error("more than " + std::to_string(cap) + " deviations to enumerate");
      }
    }
  }
  return total;
}

// Gap of the uniform mixture of the logged product distributions, by
// applying every pure trigger deviation of every player to every iterate.
inline GapReport brute_force_gap(const Game& game,
                                 std::span<const std::vector<SequenceFormStrategy>> iterates,
                                 std::size_t vertex_cap = 1000000) {
  if (iterates.empty()) throw std::invalid_argument("brute-force gap of an empty log");
  count_deviations(game, vertex_cap);
  const double rounds = static_cast<double>(iterates.size());
  GapReport report;
  report.overall = -std::numeric_limits<double>::infinity();
  std::vector<double> played(iterates.size());
  for (int i = 0; i < game.num_players(); ++i) {
    for (std::size_t t = 0; t < iterates.size(); ++t) {
      played[t] = expected_utility(game, iterates[t])[i];
    }
    const Treeplex& tp = game.treeplex(i);
    double best = tp.num_infosets() == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    for (int k = 0; k < tp.num_infosets(); ++k) {
      for (const SequenceFormStrategy& cont : enumerate_pure_strategies(tp, k, vertex_cap)) {
        const DenseMatrix m = deviation_matrix(tp, TriggerDeviation{k, cont});
        double gain = 0.0;
        for (std::size_t t = 0; t < iterates.size(); ++t) {
          std::vector<SequenceFormStrategy> profile = iterates[t];
          profile[i].values = m * std::span<const double>(iterates[t][i].values);
          gain += expected_utility(game, profile)[i] - played[t];
        }
        best = std::max(best, gain / rounds);
      }
    }
    report.per_player.push_back(best);
    report.overall = std::max(report.overall, best);
  }
  return report;
}

}  // namespace efcce::oracle
