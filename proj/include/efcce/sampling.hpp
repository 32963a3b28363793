#pragma once

// Random strategies and deviations for property sweeps.

#include <cstddef>
#include <random>
#include <vector>

#include "efcce/treeplex.hpp"
#include "efcce/trigger.hpp"

namespace efcce::sampling {

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Behavioral strategy with independent normalized uniform weights at every
// infoset, in sequence form.
inline SequenceFormStrategy random_strategy(const Treeplex& tp, Rng& rng, int root = kFullScope) {
  const int begin = tp.scope_begin(root);
  std::vector<double> local(tp.scope_size(root), 0.0);
  for (int i = tp.scope_infoset_begin(root); i < tp.scope_infoset_end(root); ++i) {
    const Infoset& info = tp.infoset(i);
    double total = 0.0;
    for (int a = 0; a < info.num_actions; ++a) {
      const double w = uniform01(rng) + 1e-3;
      local[info.first_seq + a - begin] = w;
      total += w;
    }
    for (int a = 0; a < info.num_actions; ++a) local[info.first_seq + a - begin] /= total;
  }
  return behavioral_to_sequence_form(tp, local, root);
}

// Pure strategy drawn by uniform top-down action choices.
inline SequenceFormStrategy random_vertex(const Treeplex& tp, Rng& rng, int root = kFullScope) {
  const int begin = tp.scope_begin(root);
  std::vector<double> local(tp.scope_size(root), 0.0);
  for (int i = tp.scope_infoset_begin(root); i < tp.scope_infoset_end(root); ++i) {
    const Infoset& info = tp.infoset(i);
    const int a = std::uniform_int_distribution<int>(0, info.num_actions - 1)(rng);
    local[info.first_seq + a - begin] = 1.0;
  }
  return behavioral_to_sequence_form(tp, local, root);
}

// Mixed deviation whose weights are zero on each trigger with probability
// `zero_fraction` (at least one trigger keeps positive weight), so that the
// unweighted-prefix case of the fixed point gets exercised. Continuations
// are pure with probability `pure_fraction`, otherwise random interior.
inline MixedDeviation random_mixed_deviation(const Treeplex& tp, Rng& rng, double zero_fraction = 0.5,
                                             double pure_fraction = 0.25) {
  const int n = tp.num_infosets();
  MixedDeviation dev;
  dev.weights.assign(n, 0.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (uniform01(rng) >= zero_fraction) {
      dev.weights[i] = uniform01(rng) + 1e-3;
      total += dev.weights[i];
    }
  }
  if (total == 0.0) {
    const int keep = std::uniform_int_distribution<int>(0, n - 1)(rng);
    dev.weights[keep] = 1.0;
    total = 1.0;
  }
  for (double& w : dev.weights) w /= total;
  dev.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    dev.points.push_back({i, uniform01(rng) < pure_fraction ? random_vertex(tp, rng, i)
                                                            : random_strategy(tp, rng, i)});
  }
  return dev;
}

// Utility vector with entries uniform in [-scale, scale].
inline std::vector<double> random_utility(std::size_t size, Rng& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> u(size);
  for (double& v : u) v = dist(rng);
  return u;
}

}  // namespace efcce::sampling
