#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "sagin/topology.hpp"

namespace sagin {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

class NoAccessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Path {
  std::vector<int> nodes;
  std::vector<Link> links;
  double total_cost_s = 0;
  bool empty() const { return links.empty(); }
};

using LinkCost = std::function<double(const Link&)>;

// Transmission time of `data_bits` over a link; storage links cost one slot.
inline LinkCost transmission_cost(double data_bits, double slot_length_s = 5.0) {
  return [data_bits, slot_length_s](const Link& l) {
    if (l.kind == LinkKind::storage) return slot_length_s;
    return l.rate_bps > 0 ? data_bits / l.rate_bps : kUnreachable;
  };
}

inline int nearest_uav(Vec3 point, const SlotGraph& g) {
  int best = -1;
  double best_d = kUnreachable;
  for (int u = 0; u < g.nodes.uav; ++u) {
    const int n = g.nodes.global(Layer::uav, u);
    if (g.is_failed(n)) continue;
    const double d = distance(point, g.positions[n]);
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  if (best < 0) throw NoAccessError("no live UAV available");
  return best;
}

namespace detail {

struct DijkstraResult {
  std::vector<double> dist;
  std::vector<int> via;  // link index used to reach each node
};

// Settles nodes in (distance, node index) order; relaxations only accept a
// strictly shorter distance, so equal-cost ties keep the lower-index parent.
inline DijkstraResult dijkstra(const SlotGraph& g, int src, const LinkCost& cost, int stop_at = -1) {
  const int n = g.node_count();
  DijkstraResult r{std::vector<double>(n, kUnreachable), std::vector<int>(n, -1)};
  std::vector<char> visited(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  r.dist[src] = 0;
  open.push({0.0, src});
  while (!open.empty()) {
    auto [d, cur] = open.top();
    open.pop();
    if (visited[cur]) continue;
    visited[cur] = 1;
    if (cur == stop_at) break;
    for (int li : g.out_links(cur)) {
      const Link& l = g.links[li];
      if (l.kind == LinkKind::storage || visited[l.to] || g.is_failed(l.to)) continue;
      const double c = cost(l);
      if (!(c >= 0) || c == kUnreachable) continue;
      const double cand = d + c;
      if (cand < r.dist[l.to]) {
        r.dist[l.to] = cand;
        r.via[l.to] = li;
        open.push({cand, l.to});
      }
    }
  }
  return r;
}

}  // namespace detail

// Minimum-cost path inside one slot graph; nullopt when dst is unreachable.
inline std::optional<Path> shortest_path(const SlotGraph& g, int src, int dst, const LinkCost& cost) {
  if (g.is_failed(src) || g.is_failed(dst)) return std::nullopt;
  Path p;
  if (src == dst) {
    p.nodes = {src};
    return p;
  }
  auto r = detail::dijkstra(g, src, cost, dst);
  if (r.dist[dst] == kUnreachable) return std::nullopt;
  for (int v = dst; v != src; v = g.links[r.via[v]].from) p.links.push_back(g.links[r.via[v]]);
  std::reverse(p.links.begin(), p.links.end());
  p.nodes.push_back(src);
  for (const auto& l : p.links) p.nodes.push_back(l.to);
  p.total_cost_s = r.dist[dst];
  return p;
}

inline double time_to_destination(const SlotGraph& g, int node, int dst, double data_bits) {
  if (node == dst) return 0.0;
  auto p = shortest_path(g, node, dst, transmission_cost(data_bits));
  return p ? p->total_cost_s : kUnreachable;
}

// Seconds-per-bit distance from every node to `dst`; multiplying by the data
// amount gives time_to_destination for all nodes in one pass.
inline std::vector<double> unit_times_to(const SlotGraph& g, int dst) {
  const int n = g.node_count();
  SlotGraph rev(g.slot, g.nodes);
  rev.failed = g.failed;
  for (const auto& l : g.links)
    if (l.kind != LinkKind::storage) rev.add_link({l.kind, l.to, l.from, l.rate_bps});
  std::vector<double> out(n, kUnreachable);
  if (g.is_failed(dst)) return out;
  auto r = detail::dijkstra(rev, dst, transmission_cost(1.0));
  return r.dist;
}

}  // namespace sagin
