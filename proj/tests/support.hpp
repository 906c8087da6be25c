#pragma once

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sagin/sagin.hpp"

namespace sagin::testing {

// One line of the frozen formula vectors written by
// tests/oracles/channel_energy_calc.py.
struct FormulaVector {
  std::string name;
  std::vector<double> args;
  double expected = 0;
};

inline std::vector<FormulaVector> load_formula_vectors(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::vector<FormulaVector> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    FormulaVector v;
    ss >> v.name;
    std::string tok;
    while (ss >> tok && tok != "=") v.args.push_back(std::stod(tok));
    ss >> tok;
    v.expected = std::stod(tok);
    out.push_back(v);
  }
  return out;
}

inline std::string formula_vectors_path() { return std::string(SAGIN_TEST_DATA_DIR) + "/formula_golden.txt"; }

// Evaluates a named formula through the library with default parameters.
inline double evaluate_formula(const FormulaVector& v) {
  const ParameterSet p = default_parameters();
  const auto& a = v.args;
  if (v.name == "rate_g2u") return link_rate(LinkKind::g2u, p, {a[3], a[4], a[5]}, {a[0], a[1], a[2]});
  if (v.name == "rate_u2g") return link_rate(LinkKind::u2g, p, {a[0], a[1], a[2]}, {a[3], a[4], a[5]});
  if (v.name == "path_loss_u2u") return path_loss_u2u(a[0], p.uu_carrier_hz);
  if (v.name == "rate_u2u") return link_rate(LinkKind::u2u, p, {0, 0, 100}, {a[0], 0, 100});
  if (v.name == "rate_s2g") return link_rate(LinkKind::s2g, p, {0, 0, a[0]}, {0, 0, 0});
  if (v.name == "rate_u2s") return link_rate(LinkKind::u2s, p, {0, 0, 0}, {0, 0, a[0]});
  if (v.name == "rate_s2s") return link_rate(LinkKind::s2s, p, {0, 0, 0}, {a[0], 0, 0});
  if (v.name == "hover_power") return hover_power(p);
  if (v.name == "move_power") return move_power(p, a[0]);
  if (v.name == "uav_path_energy")
    return uav_slot_energy(p, {a[0], a[1], a[2]}, {a[3], a[4], a[5]}, a[6], {}).path;
  if (v.name == "uav_comm_energy_u2u") {
    const Transfer t{LinkKind::u2u, a[0], a[1]};
    return uav_slot_energy(p, {}, {}, 0.0, std::span(&t, 1)).communication;
  }
  if (v.name == "sat_energy") {
    const Transfer rx{LinkKind::u2s, a[0], a[1]};
    const Transfer tx{LinkKind::s2g, a[2], a[3]};
    return satellite_slot_energy(p, std::span(&rx, 1), std::span(&tx, 1), a[4]).total();
  }
  if (v.name == "compute_energy") {
    EnergyLedger ledger(1, 1e12, p.compute_energy_j_per_unit);
    ledger.charge_compute(0, a[0]);
    return ledger.amount(0, EnergyCategory::compute);
  }
  throw std::runtime_error("unknown formula " + v.name);
}

inline double relative_error(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Random directed graph on n nodes (all UAVs) with integer-valued rates so
// that path costs are exact sums of small dyadic fractions.
inline SlotGraph random_graph(Stream& s, int n, double density = 0.45) {
  SlotGraph g(0, NodeCatalog{0, n, 0});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && uniform(s, 0, 1) < density)
        g.add_link({LinkKind::u2u, i, j, static_cast<double>(1 << uniform_int(s, 0, 6))});
  return g;
}

// Cheapest simple path cost by exhaustive DFS; infinity when unreachable.
inline double brute_force_cost(const SlotGraph& g, int src, int dst, const LinkCost& cost) {
  if (g.is_failed(src) || g.is_failed(dst)) return kUnreachable;
  if (src == dst) return 0;
  double best = kUnreachable;
  std::vector<char> seen(g.node_count(), 0);
  auto dfs = [&](auto&& self, int at, double acc) -> void {
    if (at == dst) {
      best = std::min(best, acc);
      return;
    }
    seen[at] = 1;
    for (int li : g.out_links(at)) {
      const Link& l = g.links[li];
      if (l.kind == LinkKind::storage || seen[l.to] || g.is_failed(l.to)) continue;
      self(self, l.to, acc + cost(l));
    }
    seen[at] = 0;
  };
  dfs(dfs, src, 0.0);
  return best;
}

// Recovery-shaped matching instance: each SFC lists a random subset of nodes,
// each node ranks the SFCs that list it.
inline MatchingProblem random_matching_problem(Stream& s, int max_sfcs = 6, int max_nodes = 5, int max_cap = 2) {
  const int ns = uniform_int(s, 1, max_sfcs);
  const int nn = uniform_int(s, 1, max_nodes);
  MatchingProblem pb;
  pb.proposer_prefs.resize(ns);
  pb.receiver_ranking.resize(nn);
  for (int r = 0; r < nn; ++r) pb.capacity.push_back(uniform_int(s, 0, max_cap));
  for (int p = 0; p < ns; ++p) {
    std::vector<int> nodes(nn);
    for (int r = 0; r < nn; ++r) nodes[r] = r;
    std::shuffle(nodes.begin(), nodes.end(), s);
    nodes.resize(uniform_int(s, 0, nn));
    pb.proposer_prefs[p] = nodes;
    for (int r : nodes) pb.receiver_ranking[r].push_back(p);
  }
  for (auto& ranking : pb.receiver_ranking) std::shuffle(ranking.begin(), ranking.end(), s);
  return pb;
}

}  // namespace sagin::testing
