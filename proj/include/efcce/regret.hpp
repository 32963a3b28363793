#pragma once

// Regret minimizers over simplices and treeplexes, and the two composition
// rules (convex hull, affine image) used to build the deviation learner.
//
// Every minimizer maximizes utility. Calls alternate strictly:
// next_element(), observe_utility(u), next_element(), ...

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "efcce/treeplex.hpp"

namespace efcce {

template <class R>
concept RegretMinimizer = requires(R r, const typename R::Utility& u) {
  typename R::Element;
  typename R::Utility;
  { r.next_element() } -> std::convertible_to<const typename R::Element&>;
  r.observe_utility(u);
};

namespace detail {

class Alternation {
 public:
  void on_next(const char* who) {
    if (pending_) throw std::logic_error(std::string(who) + ": next_element called twice");
    pending_ = true;
  }
  void on_observe(const char* who) {
    if (!pending_) {
      throw std::logic_error(std::string(who) + ": observe_utility without a preceding next_element");
    }
    pending_ = false;
  }
  bool pending() const { return pending_; }

 private:
  bool pending_ = false;
};

}  // namespace detail

// Positive-part normalization of cumulative regrets; uniform when no
// regret is positive.
inline void regret_matching_policy(std::span<const double> regrets, std::span<double> out) {
  double total = 0.0;
  for (std::size_t a = 0; a < regrets.size(); ++a) {
    out[a] = regrets[a] > 0.0 ? regrets[a] : 0.0;
    total += out[a];
  }
  if (total > 0.0) {
    for (double& p : out) p /= total;
  } else {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
  }
}

// r[a] += u[a] - <u, policy>
inline void regret_matching_update(std::span<double> regrets, std::span<const double> utility,
                                   std::span<const double> policy) {
  double expected = 0.0;
  for (std::size_t a = 0; a < utility.size(); ++a) expected += utility[a] * policy[a];
  for (std::size_t a = 0; a < utility.size(); ++a) regrets[a] += utility[a] - expected;
}

class RegretMatching {
 public:
  using Element = std::vector<double>;
  using Utility = std::span<const double>;

  explicit RegretMatching(std::size_t num_actions)
      : regrets_(num_actions, 0.0), policy_(num_actions, 1.0 / static_cast<double>(num_actions)) {
    if (num_actions == 0) throw std::invalid_argument("regret matching over an empty simplex");
  }

  std::size_t size() const { return regrets_.size(); }
  std::span<const double> regrets() const { return regrets_; }

  const Element& next_element() {
    turn_.on_next("RegretMatching");
    regret_matching_policy(regrets_, policy_);
    return policy_;
  }

  void observe_utility(Utility utility) {
    if (utility.size() != regrets_.size()) {
      throw std::invalid_argument("RegretMatching: utility has " + std::to_string(utility.size()) +
                                  " entries, expected " + std::to_string(regrets_.size()));
    }
    turn_.on_observe("RegretMatching");
    regret_matching_update(regrets_, utility, policy_);
  }

 private:
  std::vector<double> regrets_;
  std::vector<double> policy_;
  detail::Alternation turn_;
};

// Vanilla counterfactual regret minimization over the strategy polytope of
// a scope (the full treeplex, or the subtree rooted at one infoset), with
// simultaneous updates at every infoset.
class Cfr {
 public:
  using Element = SequenceFormStrategy;
  using Utility = std::span<const double>;

  explicit Cfr(const Treeplex& tp, int root = kFullScope)
      : tp_(&tp), root_(root), begin_(tp.scope_begin(root)),
        regrets_(tp.scope_size(root), 0.0), local_(tp.scope_size(root), 0.0),
        values_(tp.scope_size(root), 0.0), out_{root, std::vector<double>(tp.scope_size(root), 0.0)} {}

  int root() const { return root_; }
  const Treeplex& treeplex() const { return *tp_; }
  std::size_t size() const { return out_.size(); }

  // Regrets of the local minimizer at an infoset in scope, one per action.
  std::span<const double> local_regrets(int infoset) const {
    const Infoset& info = tp_->infoset(infoset);
    return {regrets_.data() + (info.first_seq - begin_), static_cast<std::size_t>(info.num_actions)};
  }

  const Element& next_element() {
    turn_.on_next("Cfr");
    const int ib = tp_->scope_infoset_begin(root_);
    const int ie = tp_->scope_infoset_end(root_);
    if (root_ == kFullScope) out_[0] = 1.0;
    for (int i = ib; i < ie; ++i) {
      const Infoset& info = tp_->infoset(i);
      const std::size_t k = info.first_seq - begin_;
      const std::size_t m = info.num_actions;
      regret_matching_policy({regrets_.data() + k, m}, {local_.data() + k, m});
      const double reach = i == root_ ? 1.0 : out_[info.parent_seq - begin_];
      for (std::size_t a = 0; a < m; ++a) out_[k + a] = reach * local_[k + a];
    }
    return out_;
  }

  void observe_utility(Utility utility) {
    if (utility.size() != out_.size()) {
      throw std::invalid_argument("Cfr: utility dimension " + std::to_string(utility.size()) +
                                  " does not match scope size " + std::to_string(out_.size()));
    }
    turn_.on_observe("Cfr");
    std::copy(utility.begin(), utility.end(), values_.begin());
    const int ib = tp_->scope_infoset_begin(root_);
    const int ie = tp_->scope_infoset_end(root_);
    for (int i = ie - 1; i >= ib; --i) {
      const Infoset& info = tp_->infoset(i);
      const std::size_t k = info.first_seq - begin_;
      const std::size_t m = info.num_actions;
      std::span<const double> cf{values_.data() + k, m};
      std::span<const double> policy{local_.data() + k, m};
      double value = 0.0;
      for (std::size_t a = 0; a < m; ++a) value += cf[a] * policy[a];
      regret_matching_update({regrets_.data() + k, m}, cf, policy);
      if (i != root_) values_[info.parent_seq - begin_] += value;
    }
  }

 private:
  const Treeplex* tp_;
  int root_;
  int begin_;
  std::vector<double> regrets_;
  std::vector<double> local_;
  std::vector<double> values_;
  SequenceFormStrategy out_;
  detail::Alternation turn_;
};

// Value of a linear utility, given as a coefficient vector, at a point.
inline double utility_value(std::span<const double> utility, std::span<const double> point) {
  if (utility.size() != point.size()) throw std::invalid_argument("utility/point dimension mismatch");
  return std::inner_product(utility.begin(), utility.end(), point.begin(), 0.0);
}
inline double utility_value(std::span<const double> utility, const SequenceFormStrategy& point) {
  return utility_value(utility, std::span<const double>(point.values));
}
inline double utility_value(std::span<const double> utility, const std::vector<double>& point) {
  return utility_value(utility, std::span<const double>(point));
}

template <class Point>
struct ConvexCombination {
  std::vector<double> weights;
  std::vector<Point> points;
};

// Minimizer over the convex hull of the children's sets: the mixer picks
// weights over children, each child picks a point in its own set.
template <RegretMinimizer Child, RegretMinimizer Mixer = RegretMatching>
class ConvexHullCircuit {
 public:
  using Element = ConvexCombination<typename Child::Element>;
  using Utility = typename Child::Utility;

  ConvexHullCircuit(std::vector<Child> children, Mixer mixer)
      : children_(std::move(children)), mixer_(std::move(mixer)), mixer_utility_(children_.size()) {
    if (children_.empty()) throw std::invalid_argument("convex hull of no sets");
    if (mixer_.size() != children_.size()) {
      throw std::invalid_argument("mixer dimension " + std::to_string(mixer_.size()) +
                                  " does not match " + std::to_string(children_.size()) +
                                  " children");
    }
    out_.points.resize(children_.size());
  }

  std::size_t size() const { return children_.size(); }
  const Child& child(std::size_t j) const { return children_[j]; }
  const Mixer& mixer() const { return mixer_; }
  // Output of the most recent next_element().
  const Element& last_element() const { return out_; }

  const Element& next_element() {
    turn_.on_next("ConvexHullCircuit");
    const auto& weights = mixer_.next_element();
    out_.weights.assign(weights.begin(), weights.end());
    for (std::size_t j = 0; j < children_.size(); ++j) out_.points[j] = children_[j].next_element();
    return out_;
  }

  void observe_utility(const Utility& utility) {
    turn_.on_observe("ConvexHullCircuit");
    for (std::size_t j = 0; j < children_.size(); ++j) {
      mixer_utility_[j] = utility_value(utility, out_.points[j]);
      children_[j].observe_utility(utility);
    }
    mixer_.observe_utility(mixer_utility_);
  }

 private:
  std::vector<Child> children_;
  Mixer mixer_;
  std::vector<double> mixer_utility_;
  Element out_;
  detail::Alternation turn_;
};

template <class M, class In>
concept AffineMap = requires(const M& map, const In& x, const typename M::Utility& u) {
  typename M::Output;
  typename M::Utility;
  { map.apply(x) } -> std::convertible_to<typename M::Output>;
  { map.pull_back(u) } -> std::convertible_to<std::vector<double>>;
};

// Minimizer over the image of the inner minimizer's set under an affine
// map. pull_back returns the linear part of the utility composed with the
// map; the constant term does not affect regret and is dropped.
template <RegretMinimizer Inner, class Map>
  requires AffineMap<Map, typename Inner::Element>
class AffineImageCircuit {
 public:
  using Element = typename Map::Output;
  using Utility = typename Map::Utility;

  AffineImageCircuit(Inner inner, Map map) : inner_(std::move(inner)), map_(std::move(map)) {}

  const Inner& inner() const { return inner_; }
  const Map& map() const { return map_; }

  const Element& next_element() {
    turn_.on_next("AffineImageCircuit");
    out_ = map_.apply(inner_.next_element());
    return out_;
  }

  void observe_utility(const Utility& utility) {
    turn_.on_observe("AffineImageCircuit");
    pulled_ = map_.pull_back(utility);
    inner_.observe_utility(pulled_);
  }

 private:
  Inner inner_;
  Map map_;
  Element out_{};
  std::vector<double> pulled_;
  detail::Alternation turn_;
};

// x -> A x + b with A dense row-major (rows = output dimension).
struct DenseAffineMap {
  using Output = std::vector<double>;
  using Utility = std::span<const double>;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> matrix;
  std::vector<double> offset;

  template <class In>
  Output apply(const In& x) const {
    if (x.size() != cols) throw std::invalid_argument("DenseAffineMap: input dimension mismatch");
    Output y(offset);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) y[r] += matrix[r * cols + c] * x[c];
    }
    return y;
  }

  std::vector<double> pull_back(Utility utility) const {
    if (utility.size() != rows) throw std::invalid_argument("DenseAffineMap: utility dimension mismatch");
    std::vector<double> out(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) out[c] += matrix[r * cols + c] * utility[r];
    }
    return out;
  }
};

}  // namespace efcce
