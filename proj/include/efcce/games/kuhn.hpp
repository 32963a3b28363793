#pragma once

// n-player Kuhn poker with r ranks. One ante chip each, one private card.
// Players act in seat order choosing check or bet until someone bets; every
// other player then folds or calls, in seat order after the bettor.
// The highest card among the players still in wins the pot.

#include <string>
#include <vector>

#include "efcce/tree_builder.hpp"

namespace efcce::games {

class KuhnRules {
 public:
  KuhnRules(int num_players, int num_ranks) : players_(num_players), ranks_(num_ranks) {}

  int num_players() const { return players_; }

  class State {
   public:
    State(int players, int ranks)
        : players_(players), ranks_(ranks), cards_(), folded_(players, false),
          contributed_(players, 1) {}

    int player() const {
      if (static_cast<int>(cards_.size()) < players_) return kChance;
      if (done_) return kTerminal;
      return to_act_;
    }
    int num_actions() const { return 2; }

    std::vector<double> chance_probs() const {
      std::vector<double> p(ranks_, 0.0);
      const int left = ranks_ - static_cast<int>(cards_.size());
      for (int c = 0; c < ranks_; ++c) {
        bool used = false;
        for (int d : cards_) used = used || d == c;
        if (!used) p[c] = 1.0 / left;
      }
      return p;
    }

    std::string infoset_key() const { return std::to_string(cards_[to_act_]) + ":" + history_; }

    std::vector<double> payoffs() const {
      int pot = 0;
      for (int c : contributed_) pot += c;
      int winner = -1;
      for (int p = 0; p < players_; ++p) {
        if (!folded_[p] && (winner < 0 || cards_[p] > cards_[winner])) winner = p;
      }
      std::vector<double> u(players_);
      for (int p = 0; p < players_; ++p) u[p] = (p == winner ? pot : 0) - contributed_[p];
      return u;
    }

    void apply(int action) {
      if (static_cast<int>(cards_.size()) < players_) {
        cards_.push_back(action);
        return;
      }
      if (bettor_ < 0) {
        if (action == 0) {
          history_ += 'c';
          if (++to_act_ == players_) done_ = true;
        } else {
          history_ += 'b';
          bettor_ = to_act_;
          contributed_[to_act_] += 1;
          next_responder();
        }
        return;
      }
      if (action == 0) {
        history_ += 'f';
        folded_[to_act_] = true;
      } else {
        history_ += 'c';
        contributed_[to_act_] += 1;
      }
      next_responder();
    }

   private:
    void next_responder() {
      int next = (to_act_ + 1) % players_;
      if (next == bettor_) {
        done_ = true;
      } else {
        to_act_ = next;
      }
    }

    int players_;
    int ranks_;
    std::vector<int> cards_;
    std::vector<bool> folded_;
    std::vector<int> contributed_;
    std::string history_;
    int to_act_ = 0;
    int bettor_ = -1;
    bool done_ = false;
  };

  State initial_state() const { return State(players_, ranks_); }

 private:
  int players_;
  int ranks_;
};

}  // namespace efcce::games
