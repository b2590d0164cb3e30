#include <gtest/gtest.h>

#include <random>

#include "symcirc/cfi.hpp"
#include "symcirc/wl.hpp"

using namespace symcirc;

namespace {

Graph shuffled(const Graph& g, std::mt19937_64& rng) {
  std::vector<std::size_t> p(g.n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng);
  return relabel(g, p);
}

}  // namespace

TEST(WL, GraphAgainstItself) {
  auto g = builtin_graph("petersen").graph;
  for (unsigned k : {1u, 2u}) {
    auto r = wl_equivalent(g, g, k);
    EXPECT_TRUE(r.equivalent);
    EXPECT_FALSE(r.distinguishing_round);
  }
  EXPECT_FALSE(wl_distinguishing_round(g, g, 1));
}

TEST(WL, CyclesVersusTriangles) {
  auto c6 = cycle_graph(6), two = disjoint_union(cycle_graph(3), cycle_graph(3));
  auto r1 = wl_equivalent(c6, two, 1);
  EXPECT_TRUE(r1.equivalent);
  EXPECT_EQ(r1.classes, 1u);
  EXPECT_FALSE(wl_equivalent(c6, two, 2).equivalent);
  EXPECT_FALSE(wl_equivalent(c6, two, 3).equivalent);
}

TEST(WL, TriangleVersusPath) {
  // Round 0 colours single vertices by their atomic type only, so the degree
  // difference shows up after the first refinement.
  auto k3 = complete_graph(3), p3 = path_graph(3);
  EXPECT_EQ(wl_distinguishing_round(k3, p3, 1), std::optional<std::size_t>(1));
  // Pairs already see adjacency in round 0.
  EXPECT_EQ(wl_distinguishing_round(k3, p3, 2), std::optional<std::size_t>(0));
}

TEST(WL, DifferentSizesAreDistinguishedAtOnce) {
  EXPECT_EQ(wl_distinguishing_round(cycle_graph(4), cycle_graph(5), 1), std::optional<std::size_t>(0));
}

TEST(WL, CFIPairBelowTreewidth) {
  auto base = builtin_graph("k4");
  auto x = build_cfi(base, false).graph, tx = build_cfi(base, true).graph;
  EXPECT_TRUE(wl_equivalent(x, tx, 1).equivalent);
  auto r2 = wl_equivalent(x, tx, 2);
  EXPECT_TRUE(r2.equivalent);
  EXPECT_FALSE(wl_distinguishing_round(x, tx, 2));
}

TEST(WL, RefinementIsMonotone) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto a = random_graph(9, 0.35, rng), b = random_graph(9, 0.35, rng);
    for (unsigned k : {1u, 2u}) {
      auto r = wl_equivalent(a, b, k);
      for (std::size_t i = 1; i < r.classes_per_round.size(); ++i)
        EXPECT_GE(r.classes_per_round[i], r.classes_per_round[i - 1]);
      EXPECT_EQ(r.classes_per_round.size(), r.rounds + 1);
      EXPECT_EQ(r.classes_per_round.back(), r.classes);
    }
  }
}

TEST(WL, ShuffledCopiesAreEquivalent) {
  std::mt19937_64 rng(20240917);
  for (int t = 0; t < 20; ++t) {
    auto g = random_graph(6 + rng() % 6, 0.4, rng);
    auto h = shuffled(g, rng);
    EXPECT_TRUE(wl_equivalent(g, h, 1).equivalent) << t;
    EXPECT_TRUE(wl_equivalent(g, h, 2).equivalent) << t;
  }
}

TEST(WL, Hierarchy) {
  std::mt19937_64 rng(77);
  std::vector<std::pair<Graph, Graph>> pairs = {
      {cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))},
      {complete_graph(3), path_graph(3)},
      {builtin_graph("k33").graph, relabel(builtin_graph("k33").graph, {5, 4, 3, 2, 1, 0})},
  };
  for (int t = 0; t < 12; ++t) {
    // Regular-ish random pairs with equal edge counts often fool 1-WL.
    pairs.emplace_back(random_graph(8, 0.5, rng), random_graph(8, 0.5, rng));
  }
  for (const auto& [a, b] : pairs) {
    bool e1 = wl_equivalent(a, b, 1).equivalent;
    bool e2 = wl_equivalent(a, b, 2).equivalent;
    bool e3 = wl_equivalent(a, b, 3).equivalent;
    if (e3) {
      EXPECT_TRUE(e2);
    }
    if (e2) {
      EXPECT_TRUE(e1);
    }
  }
}

TEST(WL, VerdictIsLabelIndependent) {
  std::mt19937_64 rng(12);
  auto c6 = cycle_graph(6), two = disjoint_union(cycle_graph(3), cycle_graph(3));
  for (int t = 0; t < 5; ++t)
    for (unsigned k : {1u, 2u}) {
      auto base = wl_equivalent(c6, two, k);
      auto moved = wl_equivalent(shuffled(c6, rng), shuffled(two, rng), k);
      EXPECT_EQ(base.equivalent, moved.equivalent);
      EXPECT_EQ(base.distinguishing_round, moved.distinguishing_round);
      EXPECT_EQ(base.classes_per_round, moved.classes_per_round);
    }
}

TEST(WL, WorkerCountDoesNotChangeResults) {
  auto base = builtin_graph("k4");
  auto x = build_cfi(base, false).graph, tx = build_cfi(base, true).graph;
  auto one = wl_equivalent(x, tx, 2, 1);
  auto four = wl_equivalent(x, tx, 2, 4);
  EXPECT_EQ(one.equivalent, four.equivalent);
  EXPECT_EQ(one.classes_per_round, four.classes_per_round);
}

TEST(WL, Errors) {
  auto g = cycle_graph(4);
  EXPECT_THROW(wl_equivalent(g, g, 0), InvalidArgument);
  EXPECT_THROW(wl_equivalent(g, g, 4), InvalidArgument);
  auto big = cycle_graph(101);
  EXPECT_THROW(wl_equivalent(big, big, 3), BudgetExceeded);
}
