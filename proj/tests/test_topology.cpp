#include <gtest/gtest.h>

#include "sagin/sagin.hpp"

using namespace sagin;

namespace {

Scenario small_scenario(std::uint64_t seed = 4) {
  Scenario sc = default_scenario(seed);
  sc.geometry.uav_count = 8;
  sc.time.slot_count = 6;
  return sc;
}

}  // namespace

TEST(Topology, CatalogNumbersLayersInOrder) {
  const NodeCatalog c{4, 30, 2};
  EXPECT_EQ(c.size(), 36);
  EXPECT_EQ(c.global(Layer::uav, 0), 4);
  EXPECT_EQ(c.global(Layer::satellite, 1), 35);
  EXPECT_EQ(c.layer(33), Layer::uav);
  EXPECT_EQ(c.local(34), 0);
  EXPECT_EQ(c.label(5), "U1");
  EXPECT_EQ(to_string(c.id(34, 7)), "S0@7");
}

TEST(Topology, InitialPositionsKeepSeparation) {
  const Scenario sc = default_scenario(11);
  Stream s = seeded_stream(11, "uav-init");
  const auto pos = initial_uav_positions(sc.geometry, 100.0, s);
  ASSERT_EQ(pos.size(), 30u);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    EXPECT_GE(pos[i].x, 0);
    EXPECT_LE(pos[i].x, 2000);
    for (std::size_t j = 0; j < i; ++j) EXPECT_GE(distance(pos[i], pos[j]), 20.0);
  }
}

TEST(Topology, MobilityStepsHaveFixedLengthOrHover) {
  const Scenario sc = small_scenario();
  const auto traj = trajectory(sc);
  ASSERT_EQ(traj.size(), 7u);
  const NodeCatalog cat = catalog_of(sc);
  for (std::size_t t = 1; t < traj.size(); ++t)
    for (int u = 0; u < cat.uav; ++u) {
      const int n = cat.global(Layer::uav, u);
      const double d = distance(traj[t - 1][n], traj[t][n]);
      EXPECT_TRUE(d == 0 || std::abs(d - 60.0) < 1e-9) << d;
    }
}

TEST(Topology, SatellitesStayOnTheirOrbit) {
  const OrbitSpec o{};
  for (int t = 0; t < 20; ++t) {
    const Vec3 p = satellite_position(o, t, 5.0);
    EXPECT_NEAR(distance(p, {1000, 1000, -kEarthRadius}), kEarthRadius + 550e3, 1e-6);
  }
}

TEST(Topology, LinksMatchLayersAndRates) {
  const Scenario sc = small_scenario();
  const auto traj = trajectory(sc);
  const NodeCatalog cat = catalog_of(sc);
  const SlotGraph g = build_slot_graph(sc, 0, traj[0], std::vector<char>(cat.size(), 0));
  int storage = 0;
  for (const auto& l : g.links) {
    if (l.kind == LinkKind::storage) {
      EXPECT_EQ(l.from, l.to);
      ++storage;
      continue;
    }
    EXPECT_TRUE(kind_matches_layers(l.kind, cat.layer(l.from), cat.layer(l.to)));
    EXPECT_DOUBLE_EQ(l.rate_bps, link_rate(l.kind, sc.params, traj[0][l.from], traj[0][l.to]));
    if (l.kind == LinkKind::u2u) EXPECT_LE(distance(traj[0][l.from], traj[0][l.to]), 500.0);
  }
  EXPECT_EQ(storage, cat.size());
}

TEST(Topology, FailedNodesLoseEveryLink) {
  const Scenario sc = small_scenario();
  const auto traj = trajectory(sc);
  const NodeCatalog cat = catalog_of(sc);
  std::vector<char> failed(cat.size(), 0);
  failed[cat.global(Layer::uav, 2)] = 1;
  failed[cat.global(Layer::satellite, 0)] = 1;
  const SlotGraph g = build_slot_graph(sc, 1, traj[1], failed);
  for (const auto& l : g.links) {
    EXPECT_FALSE(failed[l.from]);
    EXPECT_FALSE(failed[l.to]);
  }
}

TEST(Topology, LastSlotHasNoStorageLinks) {
  const Scenario sc = small_scenario();
  const auto traj = trajectory(sc);
  const SlotGraph g = build_slot_graph(sc, 5, traj[5], std::vector<char>(catalog_of(sc).size(), 0));
  for (const auto& l : g.links) EXPECT_NE(l.kind, LinkKind::storage);
}

TEST(Topology, StorageLinksLeadIntoNextSlot) {
  SlotGraph g(3, NodeCatalog{1, 1, 0});
  g.add_link({LinkKind::storage, 1, 1, 0});
  EXPECT_EQ(g.to_id(g.links[0]).slot, 4);
  EXPECT_EQ(g.from_id(g.links[0]).slot, 3);
  EXPECT_EQ(g.find(1, 1), nullptr);
}

TEST(Topology, EdgeListNamesNodesWithSlot) {
  SlotGraph g(2, NodeCatalog{1, 1, 0});
  g.add_link({LinkKind::g2u, 0, 1, 1e6});
  std::ostringstream os;
  write_edge_list(os, g);
  EXPECT_NE(os.str().find("G0@2 U0@2 G2U"), std::string::npos);
}
