#pragma once

// Builds a sequence-form Game by exhaustive traversal of a game tree
// described by a rules type:
//
//   struct Rules {
//     struct State {
//       int player() const;               // player index, kChance or kTerminal
//       int num_actions() const;          // decision nodes
//       std::vector<double> chance_probs() const;  // chance nodes
//       std::string infoset_key() const;  // observation history of player()
//       std::vector<double> payoffs() const;       // terminal nodes
//       void apply(int action);
//     };
//     int num_players() const;
//     State initial_state() const;
//   };

#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "efcce/game.hpp"
#include "efcce/treeplex.hpp"

namespace efcce {

inline constexpr int kChance = -1;
inline constexpr int kTerminal = -2;

template <class R>
concept GameRules = requires(const R& rules, const typename R::State& s, typename R::State& m) {
  { rules.num_players() } -> std::convertible_to<int>;
  { rules.initial_state() } -> std::same_as<typename R::State>;
  { s.player() } -> std::convertible_to<int>;
  { s.num_actions() } -> std::convertible_to<int>;
  { s.chance_probs() } -> std::convertible_to<std::vector<double>>;
  { s.infoset_key() } -> std::convertible_to<std::string>;
  { s.payoffs() } -> std::convertible_to<std::vector<double>>;
  m.apply(0);
};

namespace detail {

class TerminalTable {
 public:
  explicit TerminalTable(int n) : n_(n) {}

  // Exact duplicates (same sequences and bit-identical payoffs) are merged
  // by summing their chance probability.
  void add(double prob, const std::vector<int>& seqs, const std::vector<double>& pay) {
    std::string key(reinterpret_cast<const char*>(seqs.data()), seqs.size() * sizeof(int));
    key.append(reinterpret_cast<const char*>(pay.data()), pay.size() * sizeof(double));
    auto [it, inserted] = index_.try_emplace(std::move(key), probs_.size());
    if (inserted) {
      probs_.push_back(prob);
      seqs_.insert(seqs_.end(), seqs.begin(), seqs.end());
      pays_.insert(pays_.end(), pay.begin(), pay.end());
    } else {
      probs_[it->second] += prob;
    }
  }

  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t z) const { return probs_[z]; }
  std::span<const int> seqs(std::size_t z) const { return {seqs_.data() + z * n_, std::size_t(n_)}; }
  std::span<const double> pays(std::size_t z) const {
    return {pays_.data() + z * n_, std::size_t(n_)};
  }

 private:
  int n_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> probs_;
  std::vector<int> seqs_;
  std::vector<double> pays_;
};

}  // namespace detail

template <GameRules Rules>
Game build_game(const Rules& rules) {
  using State = typename Rules::State;
  const int n = rules.num_players();

  struct PlayerTable {
    std::unordered_map<std::string, int> index;
    std::vector<InfosetSpec> specs;
    std::vector<int> first_seq;
    int next_seq = 1;
  };
  std::vector<PlayerTable> tables(n);
  detail::TerminalTable terminals(n);
  std::vector<int> current(n, 0);

  auto visit = [&](auto&& self, const State& s, double prob) -> void {
    const int p = s.player();
    if (p == kTerminal) {
      terminals.add(prob, current, s.payoffs());
      return;
    }
    if (p == kChance) {
      const std::vector<double> probs = s.chance_probs();
      double total = 0.0;
      for (double q : probs) total += q;
      if (std::abs(total - 1.0) > 1e-12) {
        throw std::logic_error("chance probabilities sum to " + std::to_string(total));
      }
      for (int a = 0; a < static_cast<int>(probs.size()); ++a) {
        if (probs[a] <= 0.0) continue;
        State child = s;
        child.apply(a);
        self(self, child, prob * probs[a]);
      }
      return;
    }
    PlayerTable& table = tables[p];
    const int num_actions = s.num_actions();
    std::string key = s.infoset_key();
    auto [it, inserted] = table.index.try_emplace(key, static_cast<int>(table.specs.size()));
    const int id = it->second;
    if (inserted) {
      table.specs.push_back({current[p], num_actions, std::move(key)});
      table.first_seq.push_back(table.next_seq);
      table.next_seq += num_actions;
    } else if (table.specs[id].parent_seq != current[p] || table.specs[id].num_actions != num_actions) {
      throw std::logic_error("imperfect recall at infoset '" + table.specs[id].name + "'");
    }
    const int saved = current[p];
    for (int a = 0; a < num_actions; ++a) {
      State child = s;
      child.apply(a);
      current[p] = table.first_seq[id] + a;
      self(self, child, prob);
    }
    current[p] = saved;
  };
  visit(visit, rules.initial_state(), 1.0);

  std::vector<Treeplex> treeplexes;
  std::vector<std::vector<int>> remaps(n);
  for (int i = 0; i < n; ++i) {
    treeplexes.push_back(Treeplex::from_infosets(i, tables[i].specs, &remaps[i]));
  }
  Game game(std::move(treeplexes));
  std::vector<int> seqs(n);
  for (std::size_t z = 0; z < terminals.size(); ++z) {
    const auto prov = terminals.seqs(z);
    for (int i = 0; i < n; ++i) seqs[i] = remaps[i][prov[i]];
    game.add_terminal(std::min(terminals.prob(z), 1.0), seqs, terminals.pays(z));
  }
  return game;
}

}  // namespace efcce
