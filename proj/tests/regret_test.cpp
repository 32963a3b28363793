#include "efcce/regret.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "efcce/sampling.hpp"
#include "test_util.hpp"

namespace efcce {
namespace {

using testing::make_game;
using testing::single_infoset;

TEST(RegretMatching, FirstCallIsUniform) {
  RegretMatching rm(3);
  const auto x = rm.next_element();
  for (double p : x) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
}

TEST(RegretMatching, PositivePartNormalization) {
  std::vector<double> out(2);
  regret_matching_policy(std::vector<double>{0.5, -0.5}, out);
  EXPECT_EQ(out, (std::vector<double>{1, 0}));
  regret_matching_policy(std::vector<double>{-1, -2}, out);
  EXPECT_EQ(out, (std::vector<double>{0.5, 0.5}));
}

TEST(RegretMatching, HandComputedUpdate) {
  RegretMatching rm(2);
  rm.next_element();
  rm.observe_utility(std::vector<double>{1, 0});
  EXPECT_EQ(std::vector<double>(rm.regrets().begin(), rm.regrets().end()), (std::vector<double>{0.5, -0.5}));
  EXPECT_EQ(rm.next_element(), (std::vector<double>{1, 0}));
}

TEST(RegretMatching, ConstantUtilityLeavesRegrets) {
  RegretMatching rm(3);
  rm.next_element();
  rm.observe_utility(std::vector<double>{2, -1, 0.5});
  const std::vector<double> before(rm.regrets().begin(), rm.regrets().end());
  rm.next_element();
  rm.observe_utility(std::vector<double>{4, 4, 4});
  EXPECT_EQ(std::vector<double>(rm.regrets().begin(), rm.regrets().end()), before);
}

TEST(RegretMatching, CallsMustAlternate) {
  RegretMatching rm(2);
  EXPECT_THROW(rm.observe_utility(std::vector<double>{1, 0}), std::logic_error);
  rm.next_element();
  EXPECT_THROW(rm.next_element(), std::logic_error);
  EXPECT_THROW(rm.observe_utility(std::vector<double>{1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(RegretMatching(0), std::invalid_argument);
}

TEST(Cfr, FreshStateIsUniform) {
  const Game game = make_game(GameKind::kKuhn3, 3);
  const Treeplex& tp = game.treeplex(1);
  Cfr full(tp);
  EXPECT_EQ(full.next_element().values, uniform_strategy(tp).values);
  Cfr rooted(tp, 2);
  const SequenceFormStrategy& x = rooted.next_element();
  EXPECT_EQ(x.root, 2);
  EXPECT_EQ(x.values, uniform_strategy(tp, 2).values);
}

TEST(Cfr, SingleInfosetIsRegretMatching) {
  const Treeplex tp = single_infoset(3);
  Cfr cfr(tp, 0);
  RegretMatching rm(3);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    const auto& x = cfr.next_element();
    const auto& y = rm.next_element();
    EXPECT_EQ(x.values, y);
    const auto u = sampling::random_utility(3, rng);
    cfr.observe_utility(u);
    rm.observe_utility(u);
  }
}

TEST(Cfr, ZeroUtilityChangesNothing) {
  const Treeplex tp = testing::three_infoset_tree();
  Cfr cfr(tp);
  const auto first = cfr.next_element();
  cfr.observe_utility(std::vector<double>(7, 0.0));
  for (int i = 0; i < 3; ++i) {
    for (double r : cfr.local_regrets(i)) EXPECT_EQ(r, 0.0);
  }
  EXPECT_EQ(cfr.next_element().values, first.values);
}

TEST(Cfr, ChainHandExample) {
  // A at the root (1, 2), B after action 1 (3, 4)
  const std::vector<InfosetSpec> specs = {{0, 2, "A"}, {1, 2, "B"}};
  const Treeplex tp = Treeplex::from_infosets(0, specs);
  Cfr cfr(tp);
  cfr.next_element();
  cfr.observe_utility(std::vector<double>{0, 0, 1, 2, 4});
  // at B: values (2, 4) under (1/2, 1/2), so 3; at A: (0 + 3, 1), so 2
  EXPECT_EQ(std::vector<double>(cfr.local_regrets(1).begin(), cfr.local_regrets(1).end()),
            (std::vector<double>{-1, 1}));
  EXPECT_EQ(std::vector<double>(cfr.local_regrets(0).begin(), cfr.local_regrets(0).end()),
            (std::vector<double>{1, -1}));
  EXPECT_EQ(cfr.next_element().values, (std::vector<double>{1, 1, 0, 0, 1}));
}

TEST(Cfr, RegretBoundOnKuhn) {
  const Game game = make_game(GameKind::kKuhn2, 2);
  sampling::Rng rng(21);
  for (int i = 0; i < 2; ++i) {
    const Treeplex& tp = game.treeplex(i);
    for (int root = kFullScope; root < tp.num_infosets(); ++root) {
      const auto vertices = enumerate_pure_strategies(tp, root);
      Cfr cfr(tp, root);
      std::vector<double> totals(vertices.size(), 0.0);
      double earned = 0.0;
      const int rounds = 100;
      for (int t = 0; t < rounds; ++t) {
        const auto x = cfr.next_element();
        const auto u = sampling::random_utility(tp.scope_size(root), rng);
        earned += utility_value(u, x);
        for (std::size_t v = 0; v < vertices.size(); ++v) totals[v] += utility_value(u, vertices[v]);
        cfr.observe_utility(u);
      }
      const double regret = *std::max_element(totals.begin(), totals.end()) - earned;
      // every vertex value lies in [-|scope|, |scope|]
      const double range = 2.0 * tp.scope_size(root);
      EXPECT_LE(regret, range * tp.scope_size(root) * std::sqrt(double(rounds)));
    }
  }
}

// Regret matching over two actions, seen through a fixed map into R^3.
using MappedRm = AffineImageCircuit<RegretMatching, DenseAffineMap>;

DenseAffineMap random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1, 1);
  DenseAffineMap m{3, 2, std::vector<double>(6), std::vector<double>(3)};
  for (double& v : m.matrix) v = d(rng);
  for (double& v : m.offset) v = d(rng);
  return m;
}

TEST(ConvexHull, SingleChild) {
  std::mt19937_64 rng(2);
  const DenseAffineMap map = random_map(rng);
  std::vector<MappedRm> kids;
  kids.emplace_back(RegretMatching(2), map);
  ConvexHullCircuit<MappedRm> hull(std::move(kids), RegretMatching(1));
  MappedRm alone(RegretMatching(2), map);
  for (int t = 0; t < 10; ++t) {
    const auto& out = hull.next_element();
    EXPECT_EQ(out.weights, (std::vector<double>{1}));
    EXPECT_EQ(out.points[0], alone.next_element());
    const auto u = sampling::random_utility(3, rng);
    hull.observe_utility(u);
    alone.observe_utility(u);
  }
}

TEST(ConvexHull, MixerSeesChildValues) {
  // constant maps: every child always outputs its offset
  std::vector<MappedRm> kids;
  kids.emplace_back(RegretMatching(2), DenseAffineMap{3, 2, std::vector<double>(6, 0.0), {1, 0, 0}});
  kids.emplace_back(RegretMatching(2), DenseAffineMap{3, 2, std::vector<double>(6, 0.0), {0, 2, 0}});
  ConvexHullCircuit<MappedRm> hull(std::move(kids), RegretMatching(2));
  hull.next_element();
  hull.observe_utility(std::vector<double>{3, 1, 5});
  // mixer utility (3, 2) from uniform weights: regrets (0.5, -0.5)
  EXPECT_EQ(std::vector<double>(hull.mixer().regrets().begin(), hull.mixer().regrets().end()),
            (std::vector<double>{0.5, -0.5}));
}

TEST(ConvexHull, RegretDecomposes) {
  std::mt19937_64 rng(9);
  std::vector<DenseAffineMap> maps;
  std::vector<MappedRm> kids;
  for (int j = 0; j < 3; ++j) {
    maps.push_back(random_map(rng));
    kids.emplace_back(RegretMatching(2), maps.back());
  }
  ConvexHullCircuit<MappedRm> hull(std::move(kids), RegretMatching(3));
  // vertices of the hull: images of each child's simplex vertices
  std::vector<std::vector<double>> vertices;
  for (const auto& m : maps) {
    vertices.push_back(m.apply(std::vector<double>{1, 0}));
    vertices.push_back(m.apply(std::vector<double>{0, 1}));
  }
  std::vector<double> vertex_total(6, 0.0), child_earned(3, 0.0), mixer_total(3, 0.0);
  double earned = 0.0, mixer_earned = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto out = hull.next_element();
    const auto u = sampling::random_utility(3, rng);
    std::vector<double> point(3, 0.0);
    for (int j = 0; j < 3; ++j) {
      const double v = utility_value(u, out.points[j]);
      child_earned[j] += v;
      mixer_total[j] += v;
      mixer_earned += out.weights[j] * v;
      for (int k = 0; k < 3; ++k) point[k] += out.weights[j] * out.points[j][k];
    }
    earned += utility_value(u, point);
    for (int v = 0; v < 6; ++v) vertex_total[v] += utility_value(u, vertices[v]);
    hull.observe_utility(u);
  }
  const double r_hull = *std::max_element(vertex_total.begin(), vertex_total.end()) - earned;
  const double r_mixer = *std::max_element(mixer_total.begin(), mixer_total.end()) - mixer_earned;
  double r_child = -1e300;
  for (int j = 0; j < 3; ++j) {
    r_child = std::max(r_child, std::max(vertex_total[2 * j], vertex_total[2 * j + 1]) - child_earned[j]);
  }
  EXPECT_LE(r_hull, r_mixer + r_child + 1e-12);
}

TEST(ConvexHull, RejectsArityMismatch) {
  std::vector<MappedRm> kids;
  kids.emplace_back(RegretMatching(2), DenseAffineMap{3, 2, std::vector<double>(6, 0.0), {0, 0, 0}});
  EXPECT_THROW(ConvexHullCircuit<MappedRm>(kids, RegretMatching(2)), std::invalid_argument);
  EXPECT_THROW(ConvexHullCircuit<MappedRm>({}, RegretMatching(1)), std::invalid_argument);
}

TEST(AffineImage, IdentityBehavesLikeInner) {
  MappedRm mapped(RegretMatching(2), DenseAffineMap{2, 2, {1, 0, 0, 1}, {0, 0}});
  RegretMatching plain(2);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    EXPECT_EQ(mapped.next_element(), plain.next_element());
    const auto u = sampling::random_utility(2, rng);
    mapped.observe_utility(u);
    plain.observe_utility(u);
  }
  EXPECT_EQ(std::vector<double>(mapped.inner().regrets().begin(), mapped.inner().regrets().end()),
            std::vector<double>(plain.regrets().begin(), plain.regrets().end()));
}

TEST(AffineImage, ConstantMapForwardsZero) {
  const DenseAffineMap constant{3, 2, std::vector<double>(6, 0.0), {1, 2, 3}};
  EXPECT_EQ(constant.pull_back(std::vector<double>{5, -1, 2}), (std::vector<double>{0, 0}));
  MappedRm mapped(RegretMatching(2), constant);
  mapped.next_element();
  mapped.observe_utility(std::vector<double>{5, -1, 2});
  for (double r : mapped.inner().regrets()) EXPECT_EQ(r, 0.0);
}

}  // namespace
}  // namespace efcce
