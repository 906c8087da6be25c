#include <gtest/gtest.h>

#include "support.hpp"

using namespace sagin;
using namespace sagin::testing;

TEST(Pathing, PicksCheaperTwoHopRoute) {
  SlotGraph g(0, NodeCatalog{0, 4, 0});
  g.add_link({LinkKind::u2u, 0, 3, 1.0});
  g.add_link({LinkKind::u2u, 0, 1, 4.0});
  g.add_link({LinkKind::u2u, 1, 3, 4.0});
  const auto p = shortest_path(g, 0, 3, transmission_cost(1.0));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->nodes, (std::vector<int>{0, 1, 3}));
  EXPECT_DOUBLE_EQ(p->total_cost_s, 0.5);
}

TEST(Pathing, UnreachableGivesNothing) {
  SlotGraph g(0, NodeCatalog{0, 3, 0});
  g.add_link({LinkKind::u2u, 0, 1, 1.0});
  EXPECT_FALSE(shortest_path(g, 0, 2, transmission_cost(1.0)));
  EXPECT_EQ(time_to_destination(g, 0, 2, 1.0), kUnreachable);
}

TEST(Pathing, SourceEqualsDestination) {
  SlotGraph g(0, NodeCatalog{0, 2, 0});
  const auto p = shortest_path(g, 1, 1, transmission_cost(1.0));
  ASSERT_TRUE(p);
  EXPECT_TRUE(p->empty());
  EXPECT_EQ(p->total_cost_s, 0.0);
}

TEST(Pathing, FailedNodesAreAvoided) {
  SlotGraph g(0, NodeCatalog{0, 3, 0});
  g.add_link({LinkKind::u2u, 0, 1, 100.0});
  g.add_link({LinkKind::u2u, 1, 2, 100.0});
  g.add_link({LinkKind::u2u, 0, 2, 1.0});
  g.failed[1] = 1;
  const auto p = shortest_path(g, 0, 2, transmission_cost(1.0));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->nodes, (std::vector<int>{0, 2}));
}

TEST(Pathing, StorageLinksAreNotRoutedWithinASlot) {
  SlotGraph g(0, NodeCatalog{0, 2, 0});
  g.add_link({LinkKind::storage, 0, 0, 0});
  EXPECT_FALSE(shortest_path(g, 0, 1, transmission_cost(1.0)));
}

TEST(Pathing, EqualCostTiesKeepLowerIndexParent) {
  SlotGraph g(0, NodeCatalog{0, 4, 0});
  g.add_link({LinkKind::u2u, 0, 2, 1.0});
  g.add_link({LinkKind::u2u, 0, 1, 1.0});
  g.add_link({LinkKind::u2u, 1, 3, 1.0});
  g.add_link({LinkKind::u2u, 2, 3, 1.0});
  EXPECT_EQ(shortest_path(g, 0, 3, transmission_cost(1.0))->nodes, (std::vector<int>{0, 1, 3}));
}

TEST(Pathing, UnitTimesScaleWithData) {
  Stream s = seeded_stream(3, "tiny");
  const SlotGraph g = random_graph(s, 6, 0.5);
  const auto unit = unit_times_to(g, 5);
  for (int n = 0; n < 6; ++n) {
    const double t = time_to_destination(g, n, 5, 8.0);
    if (unit[n] == kUnreachable) EXPECT_EQ(t, kUnreachable);
    else EXPECT_DOUBLE_EQ(unit[n] * 8.0, t);
  }
}

TEST(Pathing, MatchesBruteForceOnRandomGraphs) {
  Stream s = seeded_stream(77, "tiny");
  for (int i = 0; i < 50; ++i) {
    const int n = uniform_int(s, 2, 7);
    const SlotGraph g = random_graph(s, n);
    const auto cost = transmission_cost(1.0);
    for (int dst = 0; dst < n; ++dst) {
      const auto p = shortest_path(g, 0, dst, cost);
      const double want = brute_force_cost(g, 0, dst, cost);
      EXPECT_EQ(p ? p->total_cost_s : kUnreachable, want);
    }
  }
}

TEST(Pathing, NearestUavSkipsFailedUavs) {
  SlotGraph g(0, NodeCatalog{1, 2, 0});
  g.positions = {{0, 0, 0}, {10, 0, 100}, {500, 0, 100}};
  EXPECT_EQ(nearest_uav({0, 0, 0}, g), 1);
  g.failed[1] = 1;
  EXPECT_EQ(nearest_uav({0, 0, 0}, g), 2);
  g.failed[2] = 1;
  EXPECT_THROW(nearest_uav({0, 0, 0}, g), NoAccessError);
}
