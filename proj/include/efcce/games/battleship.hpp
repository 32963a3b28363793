#pragma once

// Two-player Battleship on a width x height grid. Each player secretly places
// one ship of the given length (horizontal placements first, then vertical,
// in row-major order of their top-left cell). Players then alternate shots at
// the opponent's grid, player 0 first, each firing at most `rounds` shots and
// never at the same cell twice. Shot cells and their hit/miss outcome are
// public. The game ends when a ship is sunk or both players ran out of shots.
// Sinking the opponent's ship earns its value; losing one's own ship costs
// its value times the loss multiplier.

#include <string>
#include <vector>

#include "efcce/tree_builder.hpp"

namespace efcce::games {

struct BattleshipConfig {
  int width = 3;
  int height = 2;
  int ship_length = 2;
  int rounds = 3;
  double ship_value = 1.0;
  double loss_multiplier = 2.0;
};

class BattleshipRules {
 public:
  explicit BattleshipRules(BattleshipConfig config) : config_(config) {
    const int w = config.width;
    const int h = config.height;
    const int len = config.ship_length;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x + len <= w; ++x) {
        std::vector<int> cells;
        for (int k = 0; k < len; ++k) cells.push_back(y * w + x + k);
        placements_.push_back(std::move(cells));
      }
    }
    if (len > 1) {
      for (int y = 0; y + len <= h; ++y) {
        for (int x = 0; x < w; ++x) {
          std::vector<int> cells;
          for (int k = 0; k < len; ++k) cells.push_back((y + k) * w + x);
          placements_.push_back(std::move(cells));
        }
      }
    }
  }

  int num_players() const { return 2; }
  int num_placements() const { return static_cast<int>(placements_.size()); }

  class State {
   public:
    explicit State(const BattleshipRules* rules)
        : rules_(rules), ship_(2, std::vector<bool>(rules->cells(), false)),
          shot_(2, std::vector<bool>(rules->cells(), false)) {}

    int player() const {
      if (placed_ < 2) return placed_;
      if (sunk_ >= 0 || (shots_[0] == rules_->config_.rounds && shots_[1] == rules_->config_.rounds)) {
        return kTerminal;
      }
      return turn_;
    }

    int num_actions() const {
      if (placed_ < 2) return rules_->num_placements();
      return rules_->cells() - shots_[turn_];
    }

    std::vector<double> chance_probs() const { return {}; }

    std::string infoset_key() const {
      if (placed_ < 2) return "place";
      return std::to_string(placement_[turn_]) + public_;
    }

    std::vector<double> payoffs() const {
      std::vector<double> u(2, 0.0);
      if (sunk_ >= 0) {
        u[1 - sunk_] += rules_->config_.ship_value;
        u[sunk_] -= rules_->config_.ship_value * rules_->config_.loss_multiplier;
      }
      return u;
    }

    void apply(int action) {
      if (placed_ < 2) {
        placement_[placed_] = action;
        for (int c : rules_->placements_[action]) ship_[placed_][c] = true;
        ++placed_;
        return;
      }
      // action indexes the not-yet-shot cells in increasing order
      int cell = -1;
      for (int c = 0, k = 0; c < rules_->cells(); ++c) {
        if (!shot_[turn_][c] && k++ == action) {
          cell = c;
          break;
        }
      }
      shot_[turn_][cell] = true;
      ++shots_[turn_];
      const int target = 1 - turn_;
      const bool hit = ship_[target][cell];
      public_ += "/" + std::to_string(turn_) + "." + std::to_string(cell) + (hit ? "H" : "M");
      if (hit && ++hits_[turn_] == rules_->config_.ship_length) sunk_ = target;
      turn_ = target;
    }

   private:
    const BattleshipRules* rules_;
    std::vector<std::vector<bool>> ship_;
    std::vector<std::vector<bool>> shot_;
    std::string public_;
    int placement_[2] = {-1, -1};
    int shots_[2] = {0, 0};
    int hits_[2] = {0, 0};
    int placed_ = 0;
    int turn_ = 0;
    int sunk_ = -1;
  };

  State initial_state() const { return State(this); }

 private:
  int cells() const { return config_.width * config_.height; }

  BattleshipConfig config_;
  std::vector<std::vector<int>> placements_;
};

}  // namespace efcce::games
