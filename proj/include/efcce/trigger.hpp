#pragma once

// Coarse trigger deviations and the no-regret learner whose iterates are
// fixed points of learned mixtures of them.
//
// A trigger deviation (I, q) leaves a strategy alone off the subtree of I
// and, on it, replaces the behavior with the continuation q scaled by the
// probability of reaching I:
//
//   out[s] = q[s] * x[parent(I)]   if s is at or below I
//   out[s] = x[s]                  otherwise

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "efcce/regret.hpp"
#include "efcce/treeplex.hpp"

namespace efcce {

struct TriggerDeviation {
  int trigger = 0;
  SequenceFormStrategy continuation;  // rooted at trigger
};

// Weights over every infoset of the treeplex (index = trigger infoset) and
// one deviation per infoset.
using MixedDeviation = ConvexCombination<TriggerDeviation>;

namespace detail {

inline void check_full(const Treeplex& tp, const SequenceFormStrategy& x) {
  if (x.root != kFullScope || static_cast<int>(x.size()) != tp.num_sequences()) {
    throw std::invalid_argument("expected a full-scope strategy over " +
                                std::to_string(tp.num_sequences()) + " sequences");
  }
}

inline void check_deviation(const Treeplex& tp, const TriggerDeviation& dev) {
  if (dev.trigger < 0 || dev.trigger >= tp.num_infosets()) {
    throw std::out_of_range("trigger infoset " + std::to_string(dev.trigger) + " out of range");
  }
  if (dev.continuation.root != dev.trigger ||
      static_cast<int>(dev.continuation.size()) != tp.scope_size(dev.trigger)) {
    throw std::invalid_argument("continuation scope does not match trigger infoset " +
                                std::to_string(dev.trigger));
  }
}

inline void check_deviation(const Treeplex& tp, const MixedDeviation& dev) {
  if (static_cast<int>(dev.weights.size()) != tp.num_infosets() ||
      dev.points.size() != dev.weights.size()) {
    throw std::invalid_argument("mixed deviation must carry one weight and one continuation per infoset");
  }
  for (int i = 0; i < tp.num_infosets(); ++i) {
    if (dev.points[i].trigger != i) {
      throw std::invalid_argument("mixed deviation entry " + std::to_string(i) + " triggers at " +
                                  std::to_string(dev.points[i].trigger));
    }
    check_deviation(tp, dev.points[i]);
  }
}

}  // namespace detail

inline SequenceFormStrategy apply_deviation(const Treeplex& tp, const TriggerDeviation& dev,
                                            const SequenceFormStrategy& x) {
  detail::check_full(tp, x);
  detail::check_deviation(tp, dev);
  SequenceFormStrategy out = x;
  const Infoset& info = tp.infoset(dev.trigger);
  const double reach = x[info.parent_seq];
  for (int s = info.first_seq; s < info.seq_end; ++s) {
    out[s] = dev.continuation[s - info.first_seq] * reach;
  }
  return out;
}

// Weighted sum of the single-trigger images. Each sequence only sees the
// triggers on its own path, O(|sequences| * depth).
inline SequenceFormStrategy apply_deviation(const Treeplex& tp, const MixedDeviation& dev,
                                            const SequenceFormStrategy& x) {
  detail::check_full(tp, x);
  detail::check_deviation(tp, dev);
  double total = 0.0;
  for (double w : dev.weights) total += w;
  SequenceFormStrategy out{kFullScope, std::vector<double>(x.size(), 0.0)};
  out[0] = total * x[0];
  for (int i = 0; i < tp.num_infosets(); ++i) {
    const Infoset& info = tp.infoset(i);
    for (int a = 0; a < info.num_actions; ++a) {
      const int s = info.first_seq + a;
      double moved = 0.0;
      double mass = 0.0;
      for (int j : tp.ancestors(i)) {
        const double w = dev.weights[j];
        if (w == 0.0) continue;
        const Infoset& anc = tp.infoset(j);
        mass += w;
        moved += w * dev.points[j].continuation[s - anc.first_seq] * x[anc.parent_seq];
      }
      out[s] = (total - mass) * x[s] + moved;
    }
  }
  return out;
}

// A linear utility over strategies (coefficients `gain`) seen through the
// deviations applied to the current strategy `played`:
//   phi -> <gain, phi(played)>
// `baseline` caches <gain, played>.
struct DeviationUtility {
  const Treeplex* treeplex = nullptr;
  std::span<const double> gain;
  std::span<const double> played;
  double baseline = 0.0;

  static DeviationUtility make(const Treeplex& tp, std::span<const double> gain,
                               std::span<const double> played) {
    if (static_cast<int>(gain.size()) != tp.num_sequences() ||
        static_cast<int>(played.size()) != tp.num_sequences()) {
      throw std::invalid_argument("deviation utility dimension mismatch");
    }
    double base = 0.0;
    for (std::size_t s = 0; s < gain.size(); ++s) base += gain[s] * played[s];
    return {&tp, gain, played, base};
  }
};

inline double utility_value(const DeviationUtility& u, const TriggerDeviation& dev) {
  const Infoset& info = u.treeplex->infoset(dev.trigger);
  const double reach = u.played[info.parent_seq];
  double change = 0.0;
  for (int s = info.first_seq; s < info.seq_end; ++s) {
    change += u.gain[s] * (dev.continuation[s - info.first_seq] * reach - u.played[s]);
  }
  return u.baseline + change;
}

// Continuation strategy at a trigger -> the trigger deviation it defines.
// Affine in the continuation; a utility pulls back to
//   coefficient[s] = gain[s] * played[parent(trigger)],  s at or below trigger.
class TriggerMap {
 public:
  using Output = TriggerDeviation;
  using Utility = DeviationUtility;

  TriggerMap(const Treeplex& tp, int trigger) : tp_(&tp), trigger_(trigger) {}

  int trigger() const { return trigger_; }

  TriggerDeviation apply(const SequenceFormStrategy& continuation) const {
    return {trigger_, continuation};
  }

  std::vector<double> pull_back(const DeviationUtility& u) const {
    const Infoset& info = tp_->infoset(trigger_);
    const double reach = u.played[info.parent_seq];
    std::vector<double> out(info.seq_end - info.first_seq);
    for (int s = info.first_seq; s < info.seq_end; ++s) out[s - info.first_seq] = u.gain[s] * reach;
    return out;
  }

 private:
  const Treeplex* tp_;
  int trigger_;
};

// Learner over mixtures of trigger deviations: one CFR per trigger, seen
// through its trigger map, mixed by regret matching.
using TriggerLearner = AffineImageCircuit<Cfr, TriggerMap>;
using PsiMinimizer = ConvexHullCircuit<TriggerLearner, RegretMatching>;

inline PsiMinimizer make_psi_minimizer(const Treeplex& tp) {
  if (tp.num_infosets() == 0) throw std::invalid_argument("player has no infosets to trigger on");
  std::vector<TriggerLearner> learners;
  learners.reserve(tp.num_infosets());
  for (int i = 0; i < tp.num_infosets(); ++i) learners.emplace_back(Cfr(tp, i), TriggerMap(tp, i));
  const std::size_t m = learners.size();
  return PsiMinimizer(std::move(learners), RegretMatching(m));
}

// Strategy x with dev(x) = x, computed top-down. At a sequence s of infoset
// I let w be the total weight of triggers at or above I. If w is zero the
// deviation is the identity there and x plays uniformly; otherwise
//   x[s] = sum over triggers J at or above I of weight[J] * cont_J[s] * x[parent(J)], / w
inline SequenceFormStrategy fixed_point(const Treeplex& tp, const MixedDeviation& dev) {
  detail::check_deviation(tp, dev);
  SequenceFormStrategy x{kFullScope, std::vector<double>(tp.num_sequences(), 0.0)};
  x[0] = 1.0;
  for (int i = 0; i < tp.num_infosets(); ++i) {
    const Infoset& info = tp.infoset(i);
    double mass = 0.0;
    for (int j : tp.ancestors(i)) mass += dev.weights[j];
    if (mass == 0.0) {
      const double share = x[info.parent_seq] / info.num_actions;
      for (int a = 0; a < info.num_actions; ++a) x[info.first_seq + a] = share;
      continue;
    }
    for (int a = 0; a < info.num_actions; ++a) {
      const int s = info.first_seq + a;
      double acc = 0.0;
      for (int j : tp.ancestors(i)) {
        const double w = dev.weights[j];
        if (w == 0.0) continue;
        const Infoset& anc = tp.infoset(j);
        acc += w * dev.points[j].continuation[s - anc.first_seq] * x[anc.parent_seq];
      }
      x[s] = acc / mass;
    }
  }
  return x;
}

// No-coarse-trigger-regret learner over a player's strategy polytope: plays
// the fixed point of the mixture proposed by the deviation learner, and
// scores every deviation against the strategy actually played.
//
// Also records, per trigger I, the running terms of its hindsight regret
//   best over continuations q of sum_t <gain_t, dev_(I,q)(x_t) - x_t>
// so phi_regret() is available at any time.
class CtrMinimizer {
 public:
  using Element = SequenceFormStrategy;
  using Utility = std::span<const double>;

  explicit CtrMinimizer(const Treeplex& tp)
      : tp_(&tp), deviate_offset_(tp.num_infosets() + 1, 0),
        followed_(tp.num_infosets(), 0.0) {
    for (int i = 0; i < tp.num_infosets(); ++i) {
      deviate_offset_[i + 1] = deviate_offset_[i] + tp.scope_size(i);
    }
    deviate_.assign(deviate_offset_.back(), 0.0);
    if (tp.num_infosets() > 0) psi_.emplace(make_psi_minimizer(tp));
  }

  const Treeplex& treeplex() const { return *tp_; }
  bool has_deviations() const { return psi_.has_value(); }
  const PsiMinimizer& deviation_learner() const { return *psi_; }
  // Mixed deviation whose fixed point was played last.
  const MixedDeviation& last_deviation() const { return psi_->last_element(); }
  int rounds() const { return rounds_; }

  const Element& next_element() {
    turn_.on_next("CtrMinimizer");
    if (psi_) {
      x_ = fixed_point(*tp_, psi_->next_element());
    } else {
      x_ = {kFullScope, {1.0}};  // nothing to decide
    }
    return x_;
  }

  void observe_utility(Utility gain) {
    if (static_cast<int>(gain.size()) != tp_->num_sequences()) {
      throw std::invalid_argument("CtrMinimizer: utility dimension mismatch");
    }
    turn_.on_observe("CtrMinimizer");
    if (psi_) psi_->observe_utility(DeviationUtility::make(*tp_, gain, x_.values));
    for (int i = 0; i < tp_->num_infosets(); ++i) {
      const Infoset& info = tp_->infoset(i);
      const double reach = x_[info.parent_seq];
      double* row = deviate_.data() + deviate_offset_[i];
      double kept = 0.0;
      for (int s = info.first_seq; s < info.seq_end; ++s) {
        row[s - info.first_seq] += gain[s] * reach;
        kept += gain[s] * x_[s];
      }
      followed_[i] += kept;
    }
    ++rounds_;
  }

  // Cumulative regret against the best single trigger deviation; 0 for a
  // player without infosets.
  double phi_regret() const {
    if (tp_->num_infosets() == 0) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < tp_->num_infosets(); ++i) best = std::max(best, trigger_regret(i));
    return best;
  }

  double trigger_regret(int trigger) const {
    std::span<const double> row{deviate_.data() + deviate_offset_[trigger],
                                static_cast<std::size_t>(tp_->scope_size(trigger))};
    return best_response_value(*tp_, row, trigger).value - followed_[trigger];
  }

 private:
  const Treeplex* tp_;
  std::optional<PsiMinimizer> psi_;
  SequenceFormStrategy x_;
  std::vector<std::size_t> deviate_offset_;
  std::vector<double> deviate_;
  std::vector<double> followed_;
  int rounds_ = 0;
  detail::Alternation turn_;
};

}  // namespace efcce
