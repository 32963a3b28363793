#pragma once

// n-player limited-information Goofspiel with r ranks. Each round chance
// reveals a prize card uniformly among the remaining ones, then every player
// privately bids a card from their hand 1..r. The unique highest bidder wins
// the prize; a tie at the top discards it. After each round the set of
// players that bid the highest card becomes public; bids themselves stay
// private. A player's payoff is the sum of the prizes they won.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "efcce/tree_builder.hpp"

namespace efcce::games {

class GoofspielRules {
 public:
  GoofspielRules(int num_players, int num_ranks) : players_(num_players), ranks_(num_ranks) {}

  int num_players() const { return players_; }

  class State {
   public:
    State(int players, int ranks)
        : players_(players), ranks_(ranks), prize_used_(ranks, false),
          hands_(players, std::vector<bool>(ranks, true)), bids_(players, -1),
          views_(players), score_(players, 0.0) {}

    int player() const {
      if (round_ == ranks_) return kTerminal;
      if (prize_ < 0) return kChance;
      return to_act_;
    }

    int num_actions() const { return ranks_ - round_; }

    std::vector<double> chance_probs() const {
      std::vector<double> p(ranks_, 0.0);
      for (int c = 0; c < ranks_; ++c) {
        if (!prize_used_[c]) p[c] = 1.0 / (ranks_ - round_);
      }
      return p;
    }

    std::string infoset_key() const { return views_[to_act_] + "p" + std::to_string(prize_ + 1); }

    std::vector<double> payoffs() const {
      double total = 0.0;
      for (double v : score_) total += v;
      if (total != awarded_) throw std::logic_error("goofspiel payoffs do not add up to awarded prizes");
      return score_;
    }

    void apply(int action) {
      if (prize_ < 0) {
        prize_ = action;
        prize_used_[action] = true;
        return;
      }
      // action indexes the remaining cards of the hand in increasing order
      int card = -1;
      for (int c = 0, k = 0; c < ranks_; ++c) {
        if (hands_[to_act_][c] && k++ == action) {
          card = c;
          break;
        }
      }
      hands_[to_act_][card] = false;
      bids_[to_act_] = card;
      if (++to_act_ < players_) return;

      const int top = *std::max_element(bids_.begin(), bids_.end());
      std::string winners;
      int count = 0;
      int winner = -1;
      for (int p = 0; p < players_; ++p) {
        if (bids_[p] == top) {
          winners += std::to_string(p);
          ++count;
          winner = p;
        }
      }
      if (count == 1) {
        score_[winner] += prize_ + 1;
        awarded_ += prize_ + 1;
      }
      for (int p = 0; p < players_; ++p) {
        views_[p] += "p" + std::to_string(prize_ + 1) + "b" + std::to_string(bids_[p] + 1) + "w" +
                     winners + "|";
      }
      to_act_ = 0;
      prize_ = -1;
      ++round_;
    }

   private:
    int players_;
    int ranks_;
    std::vector<bool> prize_used_;
    std::vector<std::vector<bool>> hands_;
    std::vector<int> bids_;
    std::vector<std::string> views_;
    std::vector<double> score_;
    double awarded_ = 0.0;
    int prize_ = -1;
    int round_ = 0;
    int to_act_ = 0;
  };

  State initial_state() const { return State(players_, ranks_); }

 private:
  int players_;
  int ranks_;
};

}  // namespace efcce::games
