#pragma once

// Sequence-form view of a perfect-recall extensive-form game.
//
// A Treeplex stores one player's decision structure. Infosets are kept in
// depth-first preorder of the infoset forest and each infoset owns a
// contiguous block of sequences, so the sequences at or below any infoset
// form one contiguous index range. Index 0 is the empty sequence.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace efcce {

inline constexpr int kFullScope = -1;
inline constexpr double kPolytopeTolerance = 1e-9;

struct Infoset {
  int parent_seq = 0;       // sequence leading to this infoset (0 = empty)
  int parent_infoset = -1;  // infoset owning parent_seq, -1 for roots
  int first_seq = 0;        // first of num_actions contiguous sequences
  int num_actions = 0;
  int seq_end = 0;          // one past the last sequence in the subtree
  int infoset_end = 0;      // one past the last infoset in the subtree
  int depth = 1;            // number of infosets on the chain root..this
};

// Infoset description in an arbitrary topological order, used to build a
// Treeplex. Sequences are numbered provisionally: 0 is empty, then each
// infoset's actions in the order the infosets are listed.
struct InfosetSpec {
  int parent_seq = 0;
  int num_actions = 0;
  std::string name;
};

class Treeplex {
 public:
  Treeplex() = default;

  // Builds a canonical treeplex. `seq_remap`, when given, receives the map
  // from provisional sequence indices to canonical ones.
  static Treeplex from_infosets(int player, std::span<const InfosetSpec> specs,
                                std::vector<int>* seq_remap = nullptr) {
    const int n = static_cast<int>(specs.size());
    std::vector<int> prov_first(n);
    int num_seqs = 1;
    for (int k = 0; k < n; ++k) {
      if (specs[k].num_actions < 1) {
        throw std::invalid_argument("infoset " + std::to_string(k) + " has no actions");
      }
      if (specs[k].parent_seq < 0 || specs[k].parent_seq >= num_seqs) {
        throw std::invalid_argument("infoset " + std::to_string(k) +
                                    ": parent sequence is not defined by an earlier infoset");
      }
      prov_first[k] = num_seqs;
      num_seqs += specs[k].num_actions;
    }

    // children of each provisional sequence, in listing order
    std::vector<std::vector<int>> kids(num_seqs);
    for (int k = 0; k < n; ++k) kids[specs[k].parent_seq].push_back(k);

    Treeplex t;
    t.player_ = player;
    t.infosets_.resize(n);
    t.names_.resize(n);
    std::vector<int> remap(num_seqs, -1);
    remap[0] = 0;

    int next_infoset = 0;
    int next_seq = 1;
    // iterative preorder: (provisional infoset, canonical parent infoset)
    std::vector<std::pair<int, int>> stack;
    for (auto it = kids[0].rbegin(); it != kids[0].rend(); ++it) stack.emplace_back(*it, -1);
    std::vector<int> order;  // canonical index -> provisional index
    order.reserve(n);
    while (!stack.empty()) {
      auto [k, parent] = stack.back();
      stack.pop_back();
      const int idx = next_infoset++;
      order.push_back(k);
      Infoset& info = t.infosets_[idx];
      info.parent_seq = remap[specs[k].parent_seq];
      info.parent_infoset = parent;
      info.first_seq = next_seq;
      info.num_actions = specs[k].num_actions;
      info.depth = parent < 0 ? 1 : t.infosets_[parent].depth + 1;
      t.names_[idx] = specs[k].name;
      for (int a = 0; a < info.num_actions; ++a) remap[prov_first[k] + a] = next_seq + a;
      next_seq += info.num_actions;
      // push children of the last action first so the first action's subtree comes first
      for (int a = info.num_actions - 1; a >= 0; --a) {
        const auto& ch = kids[prov_first[k] + a];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.emplace_back(*it, idx);
      }
    }
    // every infoset is reachable because parents are defined before children
    t.finalize(num_seqs);
    if (seq_remap != nullptr) *seq_remap = std::move(remap);
    return t;
  }

  int player() const { return player_; }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  int num_sequences() const { return static_cast<int>(seq_owner_.size()); }
  int depth() const { return depth_; }

  const Infoset& infoset(int i) const { return infosets_[i]; }
  std::span<const Infoset> infosets() const { return infosets_; }
  const std::string& name(int i) const { return names_[i]; }

  // Infoset owning a sequence, -1 for the empty sequence.
  int owner(int seq) const { return seq_owner_[seq]; }

  // Infosets whose parent sequence is `seq`.
  std::span<const int> children(int seq) const {
    return {child_list_.data() + child_begin_[seq],
            static_cast<std::size_t>(child_begin_[seq + 1] - child_begin_[seq])};
  }
  // Infosets I' with I' preceding-or-equal I, root first, I last.
  std::span<const int> ancestors(int infoset) const {
    return {ancestor_list_.data() + ancestor_begin_[infoset],
            static_cast<std::size_t>(ancestor_begin_[infoset + 1] - ancestor_begin_[infoset])};
  }

  // Sequence range covered by a scope (kFullScope or a root infoset).
  int scope_begin(int root) const { return root == kFullScope ? 0 : infosets_[root].first_seq; }
  int scope_end(int root) const { return root == kFullScope ? num_sequences() : infosets_[root].seq_end; }
  int scope_size(int root) const { return scope_end(root) - scope_begin(root); }
  int scope_infoset_begin(int root) const { return root == kFullScope ? 0 : root; }
  int scope_infoset_end(int root) const {
    return root == kFullScope ? num_infosets() : infosets_[root].infoset_end;
  }

  // True iff `seq` is at or below infoset `root` (sigma succeeds-or-equals root).
  bool in_subtree(int seq, int root) const {
    return seq >= infosets_[root].first_seq && seq < infosets_[root].seq_end;
  }

  friend bool operator==(const Treeplex& a, const Treeplex& b) {
    if (a.player_ != b.player_ || a.infosets_.size() != b.infosets_.size()) return false;
    for (std::size_t i = 0; i < a.infosets_.size(); ++i) {
      if (a.infosets_[i].parent_seq != b.infosets_[i].parent_seq ||
          a.infosets_[i].num_actions != b.infosets_[i].num_actions) {
        return false;
      }
    }
    return true;
  }

 private:
  void finalize(int num_seqs) {
    const int n = num_infosets();
    seq_owner_.assign(num_seqs, -1);
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < infosets_[i].num_actions; ++a) seq_owner_[infosets_[i].first_seq + a] = i;
    }
    // subtree extents, children before parents in reverse preorder
    for (int i = 0; i < n; ++i) {
      infosets_[i].seq_end = infosets_[i].first_seq + infosets_[i].num_actions;
      infosets_[i].infoset_end = i + 1;
    }
    for (int i = n - 1; i >= 0; --i) {
      const int p = infosets_[i].parent_infoset;
      if (p >= 0) {
        infosets_[p].seq_end = std::max(infosets_[p].seq_end, infosets_[i].seq_end);
        infosets_[p].infoset_end = std::max(infosets_[p].infoset_end, infosets_[i].infoset_end);
      }
    }
    child_begin_.assign(num_seqs + 1, 0);
    for (const auto& info : infosets_) ++child_begin_[info.parent_seq + 1];
    for (int s = 0; s < num_seqs; ++s) child_begin_[s + 1] += child_begin_[s];
    child_list_.assign(n, 0);
    std::vector<int> fill(child_begin_.begin(), child_begin_.end() - 1);
    for (int i = 0; i < n; ++i) child_list_[fill[infosets_[i].parent_seq]++] = i;

    ancestor_begin_.assign(n + 1, 0);
    depth_ = 0;
    for (int i = 0; i < n; ++i) {
      ancestor_begin_[i + 1] = ancestor_begin_[i] + infosets_[i].depth;
      depth_ = std::max(depth_, infosets_[i].depth);
    }
    ancestor_list_.assign(ancestor_begin_[n], 0);
    for (int i = 0; i < n; ++i) {
      int pos = ancestor_begin_[i + 1];
      for (int j = i; j >= 0; j = infosets_[j].parent_infoset) ancestor_list_[--pos] = j;
    }
  }

  int player_ = 0;
  int depth_ = 0;
  std::vector<Infoset> infosets_;
  std::vector<std::string> names_;
  std::vector<int> seq_owner_;
  std::vector<int> child_begin_;
  std::vector<int> child_list_;
  std::vector<int> ancestor_begin_;
  std::vector<int> ancestor_list_;
};

// Realization-plan vector over a scope: the full sequence set (root ==
// kFullScope) or the sequences at or below a root infoset. Index k of a
// rooted strategy refers to sequence scope_begin(root) + k.
struct SequenceFormStrategy {
  int root = kFullScope;
  std::vector<double> values;

  double operator[](std::size_t k) const { return values[k]; }
  double& operator[](std::size_t k) { return values[k]; }
  std::size_t size() const { return values.size(); }
};

inline bool validate(const SequenceFormStrategy& q, const Treeplex& tp) {
  const int begin = tp.scope_begin(q.root);
  if (static_cast<int>(q.size()) != tp.scope_size(q.root)) {
    throw std::invalid_argument("strategy dimension " + std::to_string(q.size()) +
                                " does not match scope size " +
                                std::to_string(tp.scope_size(q.root)));
  }
  for (double v : q.values) {
    if (!(v >= 0.0)) return false;
  }
  if (q.root == kFullScope && std::abs(q[0] - 1.0) > kPolytopeTolerance) return false;
  for (int i = tp.scope_infoset_begin(q.root); i < tp.scope_infoset_end(q.root); ++i) {
    const Infoset& info = tp.infoset(i);
    double mass = 0.0;
    for (int a = 0; a < info.num_actions; ++a) mass += q[info.first_seq + a - begin];
    const double expected = i == q.root ? 1.0 : q[info.parent_seq - begin];
    if (std::abs(mass - expected) > kPolytopeTolerance) return false;
  }
  return true;
}

// Top-down product of a behavioral strategy given per-sequence local
// probabilities (entry (I,a) holds the probability of a at I).
inline SequenceFormStrategy behavioral_to_sequence_form(const Treeplex& tp,
                                                        std::span<const double> local,
                                                        int root = kFullScope) {
  const int begin = tp.scope_begin(root);
  SequenceFormStrategy q{root, std::vector<double>(tp.scope_size(root), 0.0)};
  if (root == kFullScope) q[0] = 1.0;
  for (int i = tp.scope_infoset_begin(root); i < tp.scope_infoset_end(root); ++i) {
    const Infoset& info = tp.infoset(i);
    const double reach = i == root ? 1.0 : q[info.parent_seq - begin];
    for (int a = 0; a < info.num_actions; ++a) {
      const int s = info.first_seq + a - begin;
      q[s] = reach * local[s];
    }
  }
  return q;
}

inline SequenceFormStrategy uniform_strategy(const Treeplex& tp, int root = kFullScope) {
  std::vector<double> local(tp.scope_size(root), 0.0);
  const int begin = tp.scope_begin(root);
  for (int i = tp.scope_infoset_begin(root); i < tp.scope_infoset_end(root); ++i) {
    const Infoset& info = tp.infoset(i);
    for (int a = 0; a < info.num_actions; ++a) {
      local[info.first_seq + a - begin] = 1.0 / info.num_actions;
    }
  }
  return behavioral_to_sequence_form(tp, local, root);
}

struct BestResponse {
  double value = 0.0;
  SequenceFormStrategy strategy;
};

// max over the scope's polytope of <gradient, q>, attained by a pure
// strategy. Ties go to the lowest action index.
inline BestResponse best_response_value(const Treeplex& tp, std::span<const double> gradient,
                                        int root = kFullScope) {
  const int begin = tp.scope_begin(root);
  const int size = tp.scope_size(root);
  if (static_cast<int>(gradient.size()) != size) {
    throw std::invalid_argument("gradient dimension does not match scope");
  }
  std::vector<double> seq_value(gradient.begin(), gradient.end());
  const int ib = tp.scope_infoset_begin(root);
  const int ie = tp.scope_infoset_end(root);
  std::vector<int> choice(ie - ib, 0);
  double root_value = root == kFullScope ? seq_value[0] : 0.0;
  for (int i = ie - 1; i >= ib; --i) {
    const Infoset& info = tp.infoset(i);
    int best = 0;
    double best_value = seq_value[info.first_seq - begin];
    for (int a = 1; a < info.num_actions; ++a) {
      const double v = seq_value[info.first_seq + a - begin];
      if (v > best_value) {
        best_value = v;
        best = a;
      }
    }
    choice[i - ib] = best;
    if (i == root) {
      root_value = best_value;
    } else if (info.parent_infoset >= ib || root == kFullScope) {
      seq_value[info.parent_seq - begin] += best_value;
    }
  }
  if (root == kFullScope) root_value = seq_value[0];

  std::vector<double> local(size, 0.0);
  for (int i = ib; i < ie; ++i) local[tp.infoset(i).first_seq + choice[i - ib] - begin] = 1.0;
  return {root_value, behavioral_to_sequence_form(tp, local, root)};
}

// All pure strategies of a scope, in lexicographic order of choices by
// infoset index. Throws if more than `cap` would be produced.
inline std::vector<SequenceFormStrategy> enumerate_pure_strategies(const Treeplex& tp,
                                                                   int root = kFullScope,
                                                                   std::size_t cap = 1000000) {
  const int begin = tp.scope_begin(root);
  const int ib = tp.scope_infoset_begin(root);
  const int ie = tp.scope_infoset_end(root);
  // number of pure strategies below each sequence / infoset, saturating
  const double limit = static_cast<double>(cap) + 1.0;
  std::vector<double> seq_count(tp.num_sequences(), 1.0);
  std::vector<double> info_count(tp.num_infosets(), 0.0);
  for (int i = ie - 1; i >= ib; --i) {
    const Infoset& info = tp.infoset(i);
    double c = 0.0;
    for (int a = 0; a < info.num_actions; ++a) c += seq_count[info.first_seq + a];
    info_count[i] = std::min(c, limit);
    seq_count[info.parent_seq] = std::min(seq_count[info.parent_seq] * info_count[i], limit);
  }
  double total = root == kFullScope ? seq_count[0] : info_count[root];
  if (total > static_cast<double>(cap)) {
    throw std::length_error("pure strategy count exceeds cap " + std::to_string(cap));
  }

  std::vector<SequenceFormStrategy> out;
  // recursive expansion: list of infosets still to decide, current vector
  SequenceFormStrategy cur{root, std::vector<double>(tp.scope_size(root), 0.0)};
  if (root == kFullScope) cur[0] = 1.0;
  std::vector<int> pending;
  if (root == kFullScope) {
    for (int c : tp.children(0)) pending.push_back(c);
  } else {
    pending.push_back(root);
  }
  auto rec = [&](auto&& self, std::vector<int>& todo) -> void {
    if (todo.empty()) {
      out.push_back(cur);
      return;
    }
    const int i = todo.back();
    todo.pop_back();
    const Infoset& info = tp.infoset(i);
    for (int a = 0; a < info.num_actions; ++a) {
      const int s = info.first_seq + a;
      cur[s - begin] = 1.0;
      const auto kids = tp.children(s);
      const std::size_t mark = todo.size();
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) todo.push_back(*it);
      self(self, todo);
      todo.resize(mark);
      cur[s - begin] = 0.0;
    }
    todo.push_back(i);
  };
  std::reverse(pending.begin(), pending.end());
  rec(rec, pending);
  return out;
}

}  // namespace efcce
