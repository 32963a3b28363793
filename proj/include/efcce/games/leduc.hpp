#pragma once

// n-player Leduc hold'em with three suits of r ranks. One ante chip each,
// one private card, a first betting round, one public board card, and a
// second betting round. Bets are 2 chips in the first round and 4 in the
// second. In a round every player may raise at most once; folding is only
// allowed when facing a bet. Suits never matter, so chance deals ranks with
// probability proportional to the number of remaining cards of that rank.
// At showdown a pair with the board beats any unpaired hand, then the higher
// private rank wins; ties split the pot.

#include <algorithm>
#include <string>
#include <vector>

#include "efcce/tree_builder.hpp"

namespace efcce::games {

class LeducRules {
 public:
  static constexpr int kSuits = 3;

  LeducRules(int num_players, int num_ranks) : players_(num_players), ranks_(num_ranks) {}

  int num_players() const { return players_; }

  class State {
   public:
    State(int players, int ranks)
        : players_(players), ranks_(ranks), remaining_(ranks, kSuits), folded_(players, false),
          raised_(players, false), contributed_(players, 1) {}

    int player() const {
      if (static_cast<int>(cards_.size()) < players_) return kChance;
      if (done_) return kTerminal;
      if (round_ == 2 && board_ < 0) return kChance;
      return queue_.front();
    }

    int num_actions() const { return static_cast<int>(legal().size()); }

    std::vector<double> chance_probs() const {
      int left = 0;
      for (int c : remaining_) left += c;
      std::vector<double> p(ranks_);
      for (int r = 0; r < ranks_; ++r) p[r] = static_cast<double>(remaining_[r]) / left;
      return p;
    }

    std::string infoset_key() const {
      const int p = queue_.front();
      std::string key = std::to_string(cards_[p]);
      if (board_ >= 0) key += "/" + std::to_string(board_);
      return key + ":" + history_;
    }

    std::vector<double> payoffs() const {
      int pot = 0;
      for (int c : contributed_) pot += c;
      std::vector<int> winners;
      int best = -1;
      for (int p = 0; p < players_; ++p) {
        if (folded_[p]) continue;
        const int strength = board_ >= 0 && cards_[p] == board_ ? ranks_ + cards_[p] : cards_[p];
        if (strength > best) {
          best = strength;
          winners.clear();
        }
        if (strength == best) winners.push_back(p);
      }
      std::vector<double> u(players_);
      for (int p = 0; p < players_; ++p) u[p] = -contributed_[p];
      for (int w : winners) u[w] += static_cast<double>(pot) / winners.size();
      return u;
    }

    void apply(int action) {
      if (static_cast<int>(cards_.size()) < players_) {
        cards_.push_back(action);
        --remaining_[action];
        if (static_cast<int>(cards_.size()) == players_) start_round();
        return;
      }
      if (round_ == 2 && board_ < 0) {
        board_ = action;
        --remaining_[action];
        history_ += '/';
        start_round();
        return;
      }
      const int p = queue_.front();
      const char move = legal()[action];
      queue_.erase(queue_.begin());
      history_ += move;
      if (move == 'f') {
        folded_[p] = true;
      } else if (move == 'c') {
        contributed_[p] = current_bet_;
      } else {
        current_bet_ += round_ == 1 ? 2 : 4;
        contributed_[p] = current_bet_;
        raised_[p] = true;
        // every other active player must respond, in seat order after p
        queue_.clear();
        for (int k = 1; k < players_; ++k) {
          const int q = (p + k) % players_;
          if (!folded_[q]) queue_.push_back(q);
        }
      }
      int active = 0;
      for (int q = 0; q < players_; ++q) active += folded_[q] ? 0 : 1;
      if (active == 1) {
        done_ = true;
      } else if (queue_.empty()) {
        if (round_ == 1) {
          round_ = 2;  // board card comes next
        } else {
          done_ = true;
        }
      }
    }

   private:
    // Legal moves of the player to act, a subset of "fcr" in that order.
    std::string legal() const {
      const int p = queue_.front();
      std::string moves;
      if (contributed_[p] < current_bet_) moves += 'f';
      moves += 'c';
      if (!raised_[p]) moves += 'r';
      return moves;
    }

    void start_round() {
      std::fill(raised_.begin(), raised_.end(), false);
      queue_.clear();
      for (int q = 0; q < players_; ++q) {
        if (!folded_[q]) queue_.push_back(q);
      }
    }

    int players_;
    int ranks_;
    std::vector<int> remaining_;
    std::vector<int> cards_;
    std::vector<bool> folded_;
    std::vector<bool> raised_;
    std::vector<int> contributed_;
    std::vector<int> queue_;
    std::string history_;
    int current_bet_ = 1;
    int board_ = -1;
    int round_ = 1;
    bool done_ = false;
  };

  State initial_state() const { return State(players_, ranks_); }

 private:
  int players_;
  int ranks_;
};

}  // namespace efcce::games
