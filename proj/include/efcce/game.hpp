#pragma once

// n-player game in sequence form: one treeplex per player plus a sparse
// list of realized terminals.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "efcce/treeplex.hpp"

namespace efcce {

struct TerminalEntry {
  double chance_prob = 1.0;
  std::span<const int> last_seq;
  std::span<const double> payoffs;
};

class Game {
 public:
  Game() = default;
  explicit Game(std::vector<Treeplex> treeplexes) : treeplexes_(std::move(treeplexes)) {}

  int num_players() const { return static_cast<int>(treeplexes_.size()); }
  const Treeplex& treeplex(int player) const { return treeplexes_[player]; }
  std::span<const Treeplex> treeplexes() const { return treeplexes_; }

  std::size_t num_terminals() const { return chance_prob_.size(); }
  TerminalEntry terminal(std::size_t z) const {
    const std::size_t n = treeplexes_.size();
    return {chance_prob_[z], {last_seq_.data() + z * n, n}, {payoffs_.data() + z * n, n}};
  }
  std::span<const double> chance_probs() const { return chance_prob_; }
  std::span<const int> last_seqs() const { return last_seq_; }
  std::span<const double> payoffs() const { return payoffs_; }

  void add_terminal(double chance_prob, std::span<const int> last_seq,
                    std::span<const double> payoffs) {
    const int n = num_players();
    if (static_cast<int>(last_seq.size()) != n || static_cast<int>(payoffs.size()) != n) {
      throw std::invalid_argument("terminal arity does not match the number of players");
    }
    if (!(chance_prob > 0.0 && chance_prob <= 1.0)) {
      throw std::invalid_argument("terminal chance probability outside (0,1]");
    }
    for (int i = 0; i < n; ++i) {
      if (last_seq[i] < 0 || last_seq[i] >= treeplexes_[i].num_sequences()) {
        throw std::out_of_range("terminal sequence index out of range for player " +
                                std::to_string(i));
      }
    }
    chance_prob_.push_back(chance_prob);
    last_seq_.insert(last_seq_.end(), last_seq.begin(), last_seq.end());
    payoffs_.insert(payoffs_.end(), payoffs.begin(), payoffs.end());
  }

  // max_z u_i(z) - min_z u_i(z)
  double payoff_range(int player) const {
    if (num_terminals() == 0) return 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = treeplexes_.size();
    for (std::size_t z = 0; z < num_terminals(); ++z) {
      lo = std::min(lo, payoffs_[z * n + player]);
      hi = std::max(hi, payoffs_[z * n + player]);
    }
    return hi - lo;
  }

  friend bool operator==(const Game& a, const Game& b) {
    return a.treeplexes_ == b.treeplexes_ && a.chance_prob_ == b.chance_prob_ &&
           a.last_seq_ == b.last_seq_ && a.payoffs_ == b.payoffs_;
  }

 private:
  std::vector<Treeplex> treeplexes_;
  std::vector<double> chance_prob_;
  std::vector<int> last_seq_;
  std::vector<double> payoffs_;
};

using Profile = std::span<const SequenceFormStrategy>;

// Expected utility of every player under a profile of full-scope strategies.
inline std::vector<double> expected_utility(const Game& game, Profile profile) {
  const int n = game.num_players();
  std::vector<double> out(n, 0.0);
  for (std::size_t z = 0; z < game.num_terminals(); ++z) {
    const TerminalEntry t = game.terminal(z);
    double reach = t.chance_prob;
    for (int j = 0; j < n; ++j) reach *= profile[j][t.last_seq[j]];
    if (reach == 0.0) continue;
    for (int i = 0; i < n; ++i) out[i] += reach * t.payoffs[i];
  }
  return out;
}

// Gradient of player's expected utility w.r.t. their own sequence-form
// strategy; profile[player] is ignored.
inline std::vector<double> utility_gradient(const Game& game, int player, Profile profile) {
  const int n = game.num_players();
  std::vector<double> g(game.treeplex(player).num_sequences(), 0.0);
  for (std::size_t z = 0; z < game.num_terminals(); ++z) {
    const TerminalEntry t = game.terminal(z);
    double w = t.chance_prob * t.payoffs[player];
    for (int j = 0; j < n && w != 0.0; ++j) {
      if (j != player) w *= profile[j][t.last_seq[j]];
    }
    g[t.last_seq[player]] += w;
  }
  return g;
}

// Gradients of every player at once, one pass over the terminals.
inline std::vector<std::vector<double>> utility_gradients(const Game& game, Profile profile) {
  const int n = game.num_players();
  std::vector<std::vector<double>> g(n);
  for (int i = 0; i < n; ++i) g[i].assign(game.treeplex(i).num_sequences(), 0.0);
  std::vector<double> reach(n);
  for (std::size_t z = 0; z < game.num_terminals(); ++z) {
    const TerminalEntry t = game.terminal(z);
    for (int j = 0; j < n; ++j) reach[j] = profile[j][t.last_seq[j]];
    for (int i = 0; i < n; ++i) {
      double w = t.chance_prob * t.payoffs[i];
      for (int j = 0; j < n && w != 0.0; ++j) {
        if (j != i) w *= reach[j];
      }
      g[i][t.last_seq[i]] += w;
    }
  }
  return g;
}

}  // namespace efcce
