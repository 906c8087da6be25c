#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sagin/channel.hpp"
#include "sagin/rng.hpp"
#include "sagin/scenario.hpp"

namespace sagin {

enum class Layer { ground, uav, satellite };

inline char layer_letter(Layer l) { return l == Layer::ground ? 'G' : l == Layer::uav ? 'U' : 'S'; }

struct NodeId {
  Layer layer = Layer::ground;
  int index = 0;
  int slot = 0;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline std::string to_string(const NodeId& n) {
  return std::string(1, layer_letter(n.layer)) + std::to_string(n.index) + "@" + std::to_string(n.slot);
}

// Dense numbering of physical nodes: ground stations, then UAVs, then
// satellites. The same number denotes the same physical node in every slot.
struct NodeCatalog {
  int ground = 0;
  int uav = 0;
  int satellite = 0;

  int size() const { return ground + uav + satellite; }
  int first(Layer l) const { return l == Layer::ground ? 0 : l == Layer::uav ? ground : ground + uav; }
  int count(Layer l) const { return l == Layer::ground ? ground : l == Layer::uav ? uav : satellite; }
  int global(Layer l, int index) const { return first(l) + index; }
  Layer layer(int node) const {
    return node < ground ? Layer::ground : node < ground + uav ? Layer::uav : Layer::satellite;
  }
  int local(int node) const { return node - first(layer(node)); }
  bool is_ground(int node) const { return node < ground; }
  NodeId id(int node, int slot) const { return {layer(node), local(node), slot}; }
  std::string label(int node) const { return std::string(1, layer_letter(layer(node))) + std::to_string(local(node)); }
  friend bool operator==(const NodeCatalog&, const NodeCatalog&) = default;
};

inline NodeCatalog catalog_of(const Scenario& sc) {
  return {static_cast<int>(sc.geometry.ground_stations.size()), sc.geometry.uav_count,
          static_cast<int>(sc.geometry.satellites.size())};
}

// Directed link between dense node numbers within one slot. STORAGE links
// have from == to and lead into the next slot.
struct Link {
  LinkKind kind = LinkKind::u2u;
  int from = 0;
  int to = 0;
  double rate_bps = 0;
  friend bool operator==(const Link&, const Link&) = default;
};

inline bool kind_matches_layers(LinkKind k, Layer from, Layer to) {
  switch (k) {
    case LinkKind::g2u: return from == Layer::ground && to == Layer::uav;
    case LinkKind::u2g: return from == Layer::uav && to == Layer::ground;
    case LinkKind::u2u: return from == Layer::uav && to == Layer::uav;
    case LinkKind::u2s: return from == Layer::uav && to == Layer::satellite;
    case LinkKind::s2s: return from == Layer::satellite && to == Layer::satellite;
    case LinkKind::s2g: return from == Layer::satellite && to == Layer::ground;
    case LinkKind::storage: return from == to;
  }
  return false;
}

class SlotGraph {
 public:
  int slot = 0;
  NodeCatalog nodes;
  std::vector<Vec3> positions;
  std::vector<Link> links;
  std::vector<char> failed;

  SlotGraph() = default;
  SlotGraph(int slot_, NodeCatalog catalog)
      : slot(slot_), nodes(catalog), positions(catalog.size()), failed(catalog.size(), 0) {}

  int node_count() const { return nodes.size(); }
  bool is_failed(int node) const { return failed[node] != 0; }

  void add_link(const Link& l) {
    links.push_back(l);
    indexed_ = false;
  }

  // Outgoing link indices of `node` (storage links included).
  const std::vector<int>& out_links(int node) const {
    ensure_index();
    return out_[node];
  }

  const Link* find(int from, int to) const {
    for (int li : out_links(from))
      if (links[li].to == to && links[li].kind != LinkKind::storage) return &links[li];
    return nullptr;
  }

  NodeId from_id(const Link& l) const { return nodes.id(l.from, slot); }
  NodeId to_id(const Link& l) const { return nodes.id(l.to, l.kind == LinkKind::storage ? slot + 1 : slot); }

  friend bool operator==(const SlotGraph& a, const SlotGraph& b) {
    return a.slot == b.slot && a.nodes == b.nodes && a.positions == b.positions && a.links == b.links &&
           a.failed == b.failed;
  }

 private:
  void ensure_index() const {
    if (indexed_) return;
    out_.assign(nodes.size(), {});
    for (int i = 0; i < static_cast<int>(links.size()); ++i) out_[links[i].from].push_back(i);
    indexed_ = true;
  }

  mutable std::vector<std::vector<int>> out_;
  mutable bool indexed_ = false;
};

inline std::vector<Vec3> initial_uav_positions(const Geometry& g, double altitude, Stream& stream) {
  std::vector<Vec3> pos;
  if (g.uav_initial_positions) {
    for (const auto& p : *g.uav_initial_positions) pos.push_back({p.x, p.y, altitude});
    return pos;
  }
  const int max_attempts = 100000;
  for (int i = 0; i < g.uav_count; ++i) {
    Vec3 cand{};
    bool placed = false;
    for (int a = 0; a < max_attempts && !placed; ++a) {
      cand = {uniform(stream, 0.0, g.area_side_m), uniform(stream, 0.0, g.area_side_m), altitude};
      placed = true;
      for (const auto& q : pos)
        if (distance(cand, q) < g.min_uav_separation_m) placed = false;
    }
    if (!placed) throw ValidationError("cannot place UAVs with the required separation");
    pos.push_back(cand);
  }
  return pos;
}

// Random-heading move of length speed * tau per UAV. A move leaving the
// square or coming closer than the separation distance to any UAV's current
// position is redrawn; after `max_retries` failures the UAV hovers.
inline std::vector<Vec3> step_uav_positions(const std::vector<Vec3>& prev, const Geometry& g, double speed,
                                            double tau, Stream& stream, int max_retries = 16) {
  std::vector<Vec3> next = prev;
  const double step = speed * tau;
  for (std::size_t i = 0; i < next.size(); ++i) {
    for (int attempt = 0; attempt < max_retries; ++attempt) {
      const double heading = uniform(stream, 0.0, 2.0 * std::numbers::pi);
      if (step == 0) break;
      Vec3 cand{prev[i].x + step * std::cos(heading), prev[i].y + step * std::sin(heading), prev[i].z};
      if (cand.x < 0 || cand.x > g.area_side_m || cand.y < 0 || cand.y > g.area_side_m) continue;
      bool clear = true;
      for (std::size_t j = 0; j < next.size() && clear; ++j)
        if (j != i && distance(cand, next[j]) < g.min_uav_separation_m) clear = false;
      if (!clear) continue;
      next[i] = cand;
      break;
    }
  }
  return next;
}

inline double orbit_radius(const OrbitSpec& o) { return kEarthRadius + o.altitude_m; }

inline double orbit_period(const OrbitSpec& o) {
  const double r = orbit_radius(o);
  return 2.0 * std::numbers::pi * std::sqrt(r * r * r / kEarthMu);
}

inline Vec3 satellite_position(const OrbitSpec& o, int slot, double tau, double area_side_m = 2000.0) {
  const double omega = 2.0 * std::numbers::pi / orbit_period(o);
  const double theta = o.phase_rad + omega * slot * tau;
  const double psi = o.inclination_deg * std::numbers::pi / 180.0;
  const double r = orbit_radius(o);
  const Vec3 centre{area_side_m / 2, area_side_m / 2, -kEarthRadius};
  return centre + Vec3{r * std::cos(theta) * std::cos(psi), r * std::cos(theta) * std::sin(psi), r * std::sin(theta)};
}

// Node positions of every slot, from the "uav-init" and "mobility" streams.
inline std::vector<std::vector<Vec3>> trajectory(const Scenario& sc) {
  const NodeCatalog cat = catalog_of(sc);
  Stream init = seeded_stream(sc.seed, "uav-init");
  Stream mob = seeded_stream(sc.seed, "mobility");
  std::vector<Vec3> uavs = initial_uav_positions(sc.geometry, sc.params.uav_altitude_m, init);
  std::vector<std::vector<Vec3>> out;
  // One extra slot so the last slot's movement energy is defined.
  for (int t = 0; t <= sc.time.slot_count; ++t) {
    if (t > 0) uavs = step_uav_positions(uavs, sc.geometry, sc.params.uav_speed_mps, sc.time.slot_length_s, mob);
    std::vector<Vec3> pos(cat.size());
    for (int g = 0; g < cat.ground; ++g)
      pos[g] = {sc.geometry.ground_stations[g].x, sc.geometry.ground_stations[g].y, 0.0};
    for (int u = 0; u < cat.uav; ++u) pos[cat.global(Layer::uav, u)] = uavs[u];
    for (int s = 0; s < cat.satellite; ++s)
      pos[cat.global(Layer::satellite, s)] =
          satellite_position(sc.geometry.satellites[s], t, sc.time.slot_length_s, sc.geometry.area_side_m);
    out.push_back(std::move(pos));
  }
  return out;
}

inline SlotGraph build_slot_graph(const Scenario& sc, int slot, const std::vector<Vec3>& positions,
                                  const std::vector<char>& failed) {
  const NodeCatalog cat = catalog_of(sc);
  SlotGraph g(slot, cat);
  g.positions = positions;
  g.failed = failed;
  g.failed.resize(cat.size(), 0);
  const auto& p = sc.params;
  const auto& geo = sc.geometry;
  auto live = [&](int n) { return !g.is_failed(n); };
  auto add = [&](LinkKind k, int a, int b) { g.add_link({k, a, b, link_rate(k, p, positions[a], positions[b])}); };
  auto visible = [&](int from, int sat) {
    return positions[sat].z > 0 && distance(positions[from], positions[sat]) <= p.max_slant_range_m;
  };

  for (int gs = 0; gs < cat.ground; ++gs) {
    for (int u = 0; u < cat.uav; ++u) {
      const int un = cat.global(Layer::uav, u);
      if (!live(un)) continue;
      if (distance(positions[gs], positions[un]) <= geo.ground_access_radius_m) {
        add(LinkKind::g2u, gs, un);
        add(LinkKind::u2g, un, gs);
      }
    }
  }
  for (int a = 0; a < cat.uav; ++a) {
    const int an = cat.global(Layer::uav, a);
    if (!live(an)) continue;
    for (int b = 0; b < cat.uav; ++b) {
      const int bn = cat.global(Layer::uav, b);
      if (a == b || !live(bn)) continue;
      const double d = distance(positions[an], positions[bn]);
      if (d > 0 && d <= geo.uav_comm_range_m) add(LinkKind::u2u, an, bn);
    }
    for (int s = 0; s < cat.satellite; ++s) {
      const int sn = cat.global(Layer::satellite, s);
      if (live(sn) && visible(an, sn)) add(LinkKind::u2s, an, sn);
    }
  }
  for (int s = 0; s < cat.satellite; ++s) {
    const int sn = cat.global(Layer::satellite, s);
    if (!live(sn)) continue;
    for (int t = 0; t < cat.satellite; ++t) {
      const int tn = cat.global(Layer::satellite, t);
      if (s != t && live(tn) && distance(positions[sn], positions[tn]) > 0) add(LinkKind::s2s, sn, tn);
    }
    for (int gs = 0; gs < cat.ground; ++gs)
      if (visible(gs, sn)) add(LinkKind::s2g, sn, gs);
  }
  if (slot + 1 < sc.time.slot_count)
    for (int n = 0; n < cat.size(); ++n)
      if (live(n)) g.add_link({LinkKind::storage, n, n, 0.0});
  return g;
}

// Line-based edge list: "<from> <to> <kind> <rate_bps>" with node ids such as
// U3@7 (layer letter, index, slot).
inline void write_edge_list(std::ostream& os, const SlotGraph& g) {
  char buf[64];
  for (const auto& l : g.links) {
    std::snprintf(buf, sizeof buf, "%.17g", l.rate_bps);
    os << to_string(g.from_id(l)) << ' ' << to_string(g.to_id(l)) << ' ' << link_kind_name(l.kind) << ' ' << buf
       << '\n';
  }
}

}  // namespace sagin
