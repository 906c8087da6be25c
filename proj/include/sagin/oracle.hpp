#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sagin/audit.hpp"
#include "sagin/engine.hpp"
#include "sagin/report.hpp"

namespace sagin {

inline constexpr std::string_view kTinySchema = "sagin-tiny/v1";
inline constexpr double kEnumerationLimit = 1e7;

struct TinyNode {
  Layer layer = Layer::uav;
  NodeResources resources;
  friend bool operator==(const TinyNode&, const TinyNode&) = default;
};

struct TinyLink {
  int from = 0;
  int to = 0;
  double rate_bps = 0;
  friend bool operator==(const TinyLink&, const TinyLink&) = default;
};

// A fully static instance small enough for exhaustive search: nodes listed
// ground first, then UAVs, then satellites; links fixed over time except that
// failed nodes lose theirs.
struct TinyInstance {
  int slot_count = 4;
  double slot_length_s = 5.0;
  std::vector<TinyNode> nodes;
  std::vector<TinyLink> links;
  std::vector<std::pair<int, int>> failures;  // (slot, node)
  std::vector<SimSfc> sfcs;
  friend bool operator==(const TinyInstance& a, const TinyInstance& b) {
    auto same_sfcs = [&] {
      if (a.sfcs.size() != b.sfcs.size()) return false;
      for (std::size_t i = 0; i < a.sfcs.size(); ++i) {
        const auto &x = a.sfcs[i], &y = b.sfcs[i];
        if (x.id != y.id || x.data_bits != y.data_bits || x.origin != y.origin || x.destination != y.destination ||
            x.sigma != y.sigma)
          return false;
      }
      return true;
    };
    return a.slot_count == b.slot_count && a.slot_length_s == b.slot_length_s && a.nodes == b.nodes &&
           a.links == b.links && a.failures == b.failures && same_sfcs();
  }
};

inline NodeCatalog catalog_of(const TinyInstance& inst) {
  NodeCatalog c;
  for (const auto& n : inst.nodes) {
    if (n.layer == Layer::ground) ++c.ground;
    if (n.layer == Layer::uav) ++c.uav;
    if (n.layer == Layer::satellite) ++c.satellite;
  }
  return c;
}

inline LinkKind tiny_link_kind(Layer from, Layer to) {
  if (from == Layer::ground && to == Layer::uav) return LinkKind::g2u;
  if (from == Layer::uav && to == Layer::ground) return LinkKind::u2g;
  if (from == Layer::uav && to == Layer::uav) return LinkKind::u2u;
  if (from == Layer::uav && to == Layer::satellite) return LinkKind::u2s;
  if (from == Layer::satellite && to == Layer::satellite) return LinkKind::s2s;
  if (from == Layer::satellite && to == Layer::ground) return LinkKind::s2g;
  throw ValidationError("no link kind joins those layers");
}

inline void validate(const TinyInstance& inst) {
  auto fail = [](const std::string& what) { throw ValidationError("invariant violated: " + what); };
  const int n = static_cast<int>(inst.nodes.size());
  if (n < 2 || n > 5) fail("2 <= node count <= 5");
  if (inst.slot_count < 1 || inst.slot_count > 4) fail("1 <= slot count <= 4");
  if (inst.sfcs.empty() || inst.sfcs.size() > 2) fail("1 <= SFC count <= 2");
  for (int i = 1; i < n; ++i)
    if (static_cast<int>(inst.nodes[i].layer) < static_cast<int>(inst.nodes[i - 1].layer))
      fail("nodes ordered ground, uav, satellite");
  const NodeCatalog cat = catalog_of(inst);
  for (const auto& l : inst.links) {
    if (l.from < 0 || l.from >= n || l.to < 0 || l.to >= n || l.from == l.to) fail("link endpoints are distinct nodes");
    tiny_link_kind(inst.nodes[l.from].layer, inst.nodes[l.to].layer);
    if (!(l.rate_bps > 0)) fail("link rate > 0");
  }
  for (const auto& [slot, node] : inst.failures)
    if (slot < 0 || slot >= inst.slot_count || node < 0 || node >= n || cat.is_ground(node))
      fail("failures name a non-ground node and a valid slot");
  for (const auto& s : inst.sfcs) {
    if (s.sigma.empty() || s.sigma.size() > 2) fail("1 <= VNFs per SFC <= 2");
    if (!cat.is_ground(s.origin) || !cat.is_ground(s.destination) || s.origin == s.destination)
      fail("SFC endpoints are distinct ground stations");
    if (!(s.data_bits > 0)) fail("data amount > 0");
  }
}

inline SimInput to_sim_input(const TinyInstance& inst, Policy policy = Policy::frmg, std::uint64_t seed = 1) {
  SimInput in;
  in.nodes = catalog_of(inst);
  in.slot_count = inst.slot_count;
  in.slot_length_s = inst.slot_length_s;
  for (const auto& n : inst.nodes) in.resources.push_back(n.resources);
  in.sfcs = inst.sfcs;
  in.failed_by_slot.assign(inst.slot_count, std::vector<char>(inst.nodes.size(), 0));
  for (const auto& [slot, node] : inst.failures) in.failed_by_slot[slot][node] = 1;
  for (const auto& n : inst.nodes)
    if (n.layer != Layer::ground) in.params.compute_energy_j_per_unit = n.resources.compute_energy;
  in.policy = policy;
  in.seed = seed;
  const auto shared = std::make_shared<const TinyInstance>(inst);
  const NodeCatalog cat = in.nodes;
  in.graph_at = [shared, cat](int slot, const std::vector<char>& failed) {
    SlotGraph g(slot, cat);
    g.failed = failed;
    for (const auto& l : shared->links)
      if (!failed[l.from] && !failed[l.to])
        g.add_link({tiny_link_kind(shared->nodes[l.from].layer, shared->nodes[l.to].layer), l.from, l.to, l.rate_bps});
    if (slot + 1 < shared->slot_count)
      for (int n = 0; n < cat.size(); ++n)
        if (!failed[n]) g.add_link({LinkKind::storage, n, n, 0.0});
    return g;
  };
  return in;
}

// ---- JSON ------------------------------------------------------------------

inline std::string_view layer_name(Layer l) {
  return l == Layer::ground ? "ground" : l == Layer::uav ? "uav" : "satellite";
}

inline Layer parse_layer(const std::string& s) {
  if (s == "ground") return Layer::ground;
  if (s == "uav") return Layer::uav;
  if (s == "satellite") return Layer::satellite;
  throw SchemaError("nodes.layer", "unknown layer '" + s + "'");
}

inline nlohmann::ordered_json to_json(const TinyInstance& inst) {
  nlohmann::ordered_json j;
  j["schema"] = std::string(kTinySchema);
  j["slot_count"] = inst.slot_count;
  j["slot_length_s"] = inst.slot_length_s;
  for (const auto& n : inst.nodes) {
    const auto& r = n.resources;
    j["nodes"].push_back({{"layer", std::string(layer_name(n.layer))},
                          {"compute_capacity", r.compute_capacity},
                          {"storage_capacity_bits", r.storage_capacity},
                          {"energy_capacity_j", r.energy_capacity},
                          {"compute_ability", r.compute_ability},
                          {"compute_energy_j_per_unit", r.compute_energy},
                          {"operation_power_w", r.operation_power_w}});
  }
  j["links"] = nlohmann::ordered_json::array();
  for (const auto& l : inst.links) j["links"].push_back({{"from", l.from}, {"to", l.to}, {"rate_bps", l.rate_bps}});
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& [slot, node] : inst.failures) j["failures"].push_back({{"slot", slot}, {"node", node}});
  for (const auto& s : inst.sfcs)
    j["sfcs"].push_back({{"id", s.id},
                         {"data_bits", s.data_bits},
                         {"origin", s.origin},
                         {"destination", s.destination},
                         {"sigma", s.sigma}});
  return j;
}

inline TinyInstance tiny_from_json(const nlohmann::json& j) {
  try {
    if (j.value("schema", std::string()) != kTinySchema)
      throw SchemaError("schema", "expected \"" + std::string(kTinySchema) + "\"");
    TinyInstance inst;
    inst.slot_count = j.at("slot_count").get<int>();
    inst.slot_length_s = j.value("slot_length_s", 5.0);
    for (const auto& n : j.at("nodes")) {
      TinyNode node;
      node.layer = parse_layer(n.at("layer").get<std::string>());
      auto& r = node.resources;
      r.compute_capacity = n.value("compute_capacity", 0.0);
      r.storage_capacity = n.value("storage_capacity_bits", 0.0);
      r.energy_capacity = n.value("energy_capacity_j", 0.0);
      r.compute_ability = n.value("compute_ability", 0.0);
      r.compute_energy = n.value("compute_energy_j_per_unit", 0.0);
      r.operation_power_w = n.value("operation_power_w", 0.0);
      inst.nodes.push_back(node);
    }
    for (const auto& l : j.at("links"))
      inst.links.push_back({l.at("from").get<int>(), l.at("to").get<int>(), l.at("rate_bps").get<double>()});
    if (j.contains("failures"))
      for (const auto& f : j.at("failures")) inst.failures.emplace_back(f.at("slot").get<int>(), f.at("node").get<int>());
    for (const auto& s : j.at("sfcs"))
      inst.sfcs.push_back({s.at("id").get<int>(), s.at("data_bits").get<double>(), s.at("origin").get<int>(),
                           s.at("destination").get<int>(), s.at("sigma").get<std::vector<double>>()});
    validate(inst);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("tiny instance", e.what());
  }
}

inline TinyInstance load_tiny(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("document", e.what());
  }
  return tiny_from_json(j);
}

// Random instance: two ground stations joined through two or three UAVs and
// possibly one satellite, per-hop times of about one slot, and with
// probability one half a single UAV failure after the first slot.
inline TinyInstance random_tiny_instance(std::uint64_t seed) {
  Stream rng = seeded_stream(seed, "tiny");
  TinyInstance inst;
  inst.slot_count = 4;
  const int uavs = uniform_int(rng, 2, 3);
  const int sats = uavs == 2 ? uniform_int(rng, 0, 1) : 0;
  auto node = [&](Layer l) {
    TinyNode n;
    n.layer = l;
    if (l != Layer::ground) {
      n.resources = {static_cast<double>(uniform_int(rng, 1, 2)), 60e6, 1e5, 0.2, 50.0, l == Layer::uav ? 2.0 : 10.0};
    }
    inst.nodes.push_back(n);
  };
  node(Layer::ground);
  node(Layer::ground);
  for (int i = 0; i < uavs; ++i) node(Layer::uav);
  for (int i = 0; i < sats; ++i) node(Layer::satellite);
  const NodeCatalog cat = catalog_of(inst);
  auto rate = [&] { return uniform(rng, 5e6, 20e6); };
  auto maybe = [&](int a, int b, double p) {
    if (uniform(rng, 0.0, 1.0) < p) inst.links.push_back({a, b, rate()});
  };
  const int u0 = cat.first(Layer::uav);
  // Guaranteed spine G0 -> U0 -> U1 -> G1.
  inst.links.push_back({0, u0, rate()});
  inst.links.push_back({u0, u0 + 1, rate()});
  inst.links.push_back({u0 + 1, 1, rate()});
  for (int g = 0; g < 2; ++g)
    for (int u = 0; u < uavs; ++u) {
      const int un = u0 + u;
      if (!(g == 0 && u == 0)) maybe(g, un, 0.5);
      if (!(g == 1 && u == 1)) maybe(un, g, 0.5);
    }
  for (int a = 0; a < uavs; ++a)
    for (int b = 0; b < uavs; ++b)
      if (a != b && !(a == 0 && b == 1)) maybe(u0 + a, u0 + b, 0.5);
  if (sats) {
    const int s = cat.first(Layer::satellite);
    for (int u = 0; u < uavs; ++u) maybe(u0 + u, s, 0.5);
    maybe(s, 1, 0.8);
    maybe(s, 0, 0.3);
  }
  std::sort(inst.links.begin(), inst.links.end(),
            [](const TinyLink& a, const TinyLink& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  const int k = uniform_int(rng, 1, 2);
  for (int i = 0; i < k; ++i) {
    SimSfc s{i, uniform(rng, 10e6, 30e6), 0, 1, {}};
    const int vnfs = uniform_int(rng, 1, 2);
    for (int m = 0; m < vnfs; ++m) s.sigma.push_back(uniform(rng, 0.5, 1.5));
    inst.sfcs.push_back(s);
  }
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    const int slot = uniform_int(rng, 1, inst.slot_count - 1);
    const int victim = u0 + uniform_int(rng, 0, uavs - 1);
    for (int t = slot; t < std::min(inst.slot_count, slot + 2); ++t) inst.failures.emplace_back(t, victim);
  }
  validate(inst);
  return inst;
}

// ---- exhaustive search -------------------------------------------------------

// Upper bound on the number of complete decision sequences: initial routes and
// VNF placements per SFC, the SFC priority order, and one recovery choice
// (any node or wait) per SFC per slot from the first failure on.
inline double enumeration_bound(const TinyInstance& inst) {
  const SimInput in = to_sim_input(inst);
  const SlotGraph g0 = in.graph_at(0, std::vector<char>(in.nodes.size(), 0));
  double bound = 1;
  for (const auto& s : inst.sfcs) {
    const auto paths = detail::simple_paths(g0, s.origin, s.destination);
    double per = 0;
    for (const auto& p : paths) {
      const auto hosts = hosting_nodes(in.nodes, p);
      per += std::max<std::size_t>(1, detail::monotone_maps(static_cast<int>(s.sigma.size()), static_cast<int>(hosts.size())).size());
    }
    bound *= std::max(1.0, per);
  }
  for (std::size_t k = 2; k <= inst.sfcs.size(); ++k) bound *= static_cast<double>(k);
  int first_failure = inst.slot_count;
  for (const auto& f : inst.failures) first_failure = std::min(first_failure, f.first);
  const double recovery_slots = static_cast<double>(inst.slot_count - first_failure) * inst.sfcs.size();
  bound *= std::pow(static_cast<double>(inst.nodes.size() + 1), recovery_slots);
  return bound;
}

class EnumerationRefused : public std::runtime_error {
 public:
  EnumerationRefused(double estimate)
      : std::runtime_error("search space estimate " + std::to_string(estimate) + " exceeds the limit of " +
                           std::to_string(kEnumerationLimit)),
        estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

struct OracleResult {
  double optimum = std::numeric_limits<double>::infinity();
  bool feasible = false;            // some schedule completes every SFC
  std::vector<int> witness;         // decision sequence reaching the optimum
  SimResult witness_run;
  long schedules = 0;
};

namespace detail {

class ReplayHook : public DecisionHook {
 public:
  explicit ReplayHook(std::vector<int> prefix) : prefix_(std::move(prefix)) {}
  int choose(Kind, int, int option_count, int) override {
    const int c = pos_ < prefix_.size() ? prefix_[pos_] : 0;
    ++pos_;
    choices.push_back(c);
    arity.push_back(option_count);
    return c;
  }
  std::vector<int> choices, arity;

 private:
  std::vector<int> prefix_;
  std::size_t pos_ = 0;
};

inline double run_total(const SimResult& r) {
  double total = 0;
  for (const auto& s : r.state.sfcs) total += delay_breakdown(r.state.log, s.id, r.horizon_s).total;
  return total;
}

}  // namespace detail

// Depth-first walk over every decision sequence the engine can take, each
// scored with the same delay accounting as a normal run.
inline OracleResult enumerate_optimal(const TinyInstance& inst) {
  const double estimate = enumeration_bound(inst);
  if (estimate > kEnumerationLimit) throw EnumerationRefused(estimate);
  const SimInput in = to_sim_input(inst);
  OracleResult best;
  std::vector<int> prefix;
  while (true) {
    detail::ReplayHook hook(prefix);
    SimResult r = run_simulation(in, &hook);
    ++best.schedules;
    const double total = detail::run_total(r);
    const bool complete = std::all_of(r.state.sfcs.begin(), r.state.sfcs.end(), [](const SfcState& s) { return s.done(); });
    if (complete) best.feasible = true;
    if (total < best.optimum) {
      best.optimum = total;
      best.witness = hook.choices;
      best.witness_run = std::move(r);
    }
    int i = static_cast<int>(hook.choices.size()) - 1;
    while (i >= 0 && hook.choices[i] + 1 >= hook.arity[i]) --i;
    if (i < 0) break;
    prefix.assign(hook.choices.begin(), hook.choices.begin() + i);
    prefix.push_back(hook.choices[i] + 1);
  }
  return best;
}

inline double heuristic_total(const TinyInstance& inst, Policy policy = Policy::frmg) {
  return detail::run_total(run_simulation(to_sim_input(inst, policy)));
}

// ---- LP export ---------------------------------------------------------------

struct IlpCounts {
  long placement = 0;   // x
  long link_use = 0;    // y
  long storage = 0;     // z
  long redeploy = 0;    // w
  long arrival = 0;     // a
  long start = 0;       // s (continuous)
  long total() const { return placement + link_use + storage + redeploy + arrival + start; }
};

namespace detail {

inline std::string lp_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct LpRow {
  std::string name;
  std::vector<std::pair<double, std::string>> terms;
  std::string op;
  double rhs;
};

inline void write_terms(std::ostream& os, const std::vector<std::pair<double, std::string>>& terms) {
  int col = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double c = terms[i].first;
    os << (c < 0 ? " - " : (i ? " + " : " ")) << lp_num(std::fabs(c)) << ' ' << terms[i].second;
    if (++col % 6 == 0 && i + 1 < terms.size()) os << "\n  ";
  }
  if (terms.empty()) os << " 0 dummy_zero";
}

}  // namespace detail

// Writes the instance as a CPLEX-LP model. Variables: x_k_m_i_t (VNF m of SFC
// k processed on node i in slot t), y_k_i_j_t (SFC k crosses link i->j in
// slot t), z_k_i_t (SFC k held at node i from slot t to t+1), w_k_m (VNF
// redeployed), a_k_t (SFC k reaches its destination in slot t), s_k_m (VNF
// start time, continuous).
inline std::string export_ilp(const TinyInstance& inst, IlpCounts* counts = nullptr) {
  validate(inst);
  const SimInput in = to_sim_input(inst);
  const int n = in.nodes.size();
  const int T = inst.slot_count;
  const double tau = inst.slot_length_s;
  double sigma_over_phi = 0;
  double min_phi = std::numeric_limits<double>::infinity();
  for (const auto& nd : inst.nodes)
    if (nd.resources.compute_ability > 0) min_phi = std::min(min_phi, nd.resources.compute_ability);
  for (const auto& s : inst.sfcs)
    for (double sg : s.sigma) sigma_over_phi += sg / min_phi;
  const double big_m = T * tau + sigma_over_phi;

  std::vector<SlotGraph> graphs;
  for (int t = 0; t < T; ++t) graphs.push_back(in.graph_at(t, in.failed_by_slot[t]));
  auto xs = [](int k, int m, int i, int t) { return "x_" + std::to_string(k) + "_" + std::to_string(m) + "_" + std::to_string(i) + "_" + std::to_string(t); };
  auto ys = [](int k, int i, int j, int t) { return "y_" + std::to_string(k) + "_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(t); };
  auto zs = [](int k, int i, int t) { return "z_" + std::to_string(k) + "_" + std::to_string(i) + "_" + std::to_string(t); };
  auto ws = [](int k, int m) { return "w_" + std::to_string(k) + "_" + std::to_string(m); };
  auto as = [](int k, int t) { return "a_" + std::to_string(k) + "_" + std::to_string(t); };
  auto ss = [](int k, int m) { return "s_" + std::to_string(k) + "_" + std::to_string(m); };

  IlpCounts c;
  std::vector<std::string> binaries, continuous;
  std::vector<std::pair<double, std::string>> objective;
  std::vector<detail::LpRow> rows;
  const int K = static_cast<int>(inst.sfcs.size());

  // A node that fails at any later slot forces redeployment of work placed on it.
  auto fails_after = [&](int node, int slot) {
    for (int t = slot + 1; t < T; ++t)
      if (in.failed_by_slot[t][node]) return true;
    return false;
  };

  for (int k = 0; k < K; ++k) {
    const auto& s = inst.sfcs[k];
    const int l = static_cast<int>(s.sigma.size());
    for (int m = 0; m < l; ++m)
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < T; ++t) {
          binaries.push_back(xs(k, m, i, t));
          ++c.placement;
          const double phi = in.resources[i].compute_ability;
          objective.push_back({phi > 0 ? s.sigma[m] / phi : big_m, xs(k, m, i, t)});
        }
    for (int t = 0; t < T; ++t)
      for (const auto& lk : graphs[t].links) {
        if (lk.kind == LinkKind::storage) continue;
        binaries.push_back(ys(k, lk.from, lk.to, t));
        ++c.link_use;
        objective.push_back({s.data_bits / lk.rate_bps, ys(k, lk.from, lk.to, t)});
      }
    for (int t = 0; t + 1 < T; ++t)
      for (int i = 0; i < n; ++i) {
        binaries.push_back(zs(k, i, t));
        ++c.storage;
        objective.push_back({tau, zs(k, i, t)});
      }
    for (int m = 0; m < l; ++m) {
      binaries.push_back(ws(k, m));
      ++c.redeploy;
      objective.push_back({tau, ws(k, m)});
      continuous.push_back(ss(k, m));
      ++c.start;
    }
    for (int t = 0; t < T; ++t) {
      binaries.push_back(as(k, t));
      ++c.arrival;
    }

    // Each VNF placed exactly once.
    for (int m = 0; m < l; ++m) {
      detail::LpRow r{"place_" + std::to_string(k) + "_" + std::to_string(m), {}, "=", 1};
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < T; ++t) r.terms.push_back({1, xs(k, m, i, t)});
      rows.push_back(r);
    }
    // Flow balance per (node, slot): one unit leaves the origin in slot 0 and
    // is absorbed at the destination in the arrival slot.
    for (int t = 0; t < T; ++t)
      for (int i = 0; i < n; ++i) {
        detail::LpRow r{"flow_" + std::to_string(k) + "_" + std::to_string(i) + "_" + std::to_string(t), {}, "=", 0};
        for (const auto& lk : graphs[t].links) {
          if (lk.kind == LinkKind::storage) continue;
          if (lk.from == i) r.terms.push_back({1, ys(k, i, lk.to, t)});
          if (lk.to == i) r.terms.push_back({-1, ys(k, lk.from, i, t)});
        }
        if (t + 1 < T) r.terms.push_back({1, zs(k, i, t)});
        if (t > 0) r.terms.push_back({-1, zs(k, i, t - 1)});
        if (i == s.destination) r.terms.push_back({1, as(k, t)});
        r.rhs = (i == s.origin && t == 0) ? 1 : 0;
        rows.push_back(r);
      }
    {
      detail::LpRow r{"arrive_" + std::to_string(k), {}, "=", 1};
      for (int t = 0; t < T; ++t) r.terms.push_back({1, as(k, t)});
      rows.push_back(r);
    }
    // Processing only where the data is: reached in slot t, or held over from t-1.
    for (int m = 0; m < l; ++m)
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < T; ++t) {
          detail::LpRow r{"visit_" + std::to_string(k) + "_" + std::to_string(m) + "_" + std::to_string(i) + "_" + std::to_string(t), {{1, xs(k, m, i, t)}}, "<=", (i == s.origin && t == 0) ? 1.0 : 0.0};
          for (const auto& lk : graphs[t].links)
            if (lk.kind != LinkKind::storage && lk.to == i) r.terms.push_back({-1, ys(k, lk.from, i, t)});
          if (t > 0) r.terms.push_back({-1, zs(k, i, t - 1)});
          rows.push_back(r);
        }
    // Sequencing with big-M slot windows.
    for (int m = 0; m < l; ++m)
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < T; ++t) {
          rows.push_back({"after_" + std::to_string(k) + "_" + std::to_string(m) + "_" + std::to_string(i) + "_" + std::to_string(t),
                          {{1, ss(k, m)}, {-big_m, xs(k, m, i, t)}}, ">=", tau * t - big_m});
          rows.push_back({"within_" + std::to_string(k) + "_" + std::to_string(m) + "_" + std::to_string(i) + "_" + std::to_string(t),
                          {{1, ss(k, m)}, {big_m, xs(k, m, i, t)}}, "<=", tau * (t + 1) + big_m});
        }
    for (int m = 0; m + 1 < l; ++m) {
      const double phi = min_phi;
      rows.push_back({"order_" + std::to_string(k) + "_" + std::to_string(m), {{1, ss(k, m + 1)}, {-1, ss(k, m)}}, ">=", s.sigma[m] / phi});
    }
    // Redeployment when the host fails later on.
    for (int m = 0; m < l; ++m)
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < T; ++t)
          if (fails_after(i, t))
            rows.push_back({"redeploy_" + std::to_string(k) + "_" + std::to_string(m) + "_" + std::to_string(i) + "_" + std::to_string(t),
                            {{1, ws(k, m)}, {-1, xs(k, m, i, t)}}, ">=", 0});
  }

  for (int t = 0; t < T; ++t) {
    for (const auto& lk : graphs[t].links) {
      if (lk.kind == LinkKind::storage) continue;
      detail::LpRow r{"link_" + std::to_string(lk.from) + "_" + std::to_string(lk.to) + "_" + std::to_string(t), {}, "<=", lk.rate_bps * tau};
      for (int k = 0; k < K; ++k) r.terms.push_back({inst.sfcs[k].data_bits, ys(k, lk.from, lk.to, t)});
      rows.push_back(r);
    }
    for (int i = 0; i < n; ++i) {
      detail::LpRow r{"compute_" + std::to_string(i) + "_" + std::to_string(t), {}, "<=",
                      in.failed_by_slot[t][i] ? 0.0 : in.resources[i].compute_capacity};
      for (int k = 0; k < K; ++k)
        for (int m = 0; m < static_cast<int>(inst.sfcs[k].sigma.size()); ++m)
          r.terms.push_back({inst.sfcs[k].sigma[m], xs(k, m, i, t)});
      rows.push_back(r);
      if (t + 1 < T && !in.nodes.is_ground(i)) {
        detail::LpRow st{"storage_" + std::to_string(i) + "_" + std::to_string(t), {}, "<=", in.resources[i].storage_capacity};
        for (int k = 0; k < K; ++k) st.terms.push_back({inst.sfcs[k].data_bits, zs(k, i, t)});
        rows.push_back(st);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (in.nodes.is_ground(i)) continue;
    detail::LpRow r{"energy_" + std::to_string(i), {}, "<=", in.resources[i].energy_capacity};
    for (int k = 0; k < K; ++k)
      for (int m = 0; m < static_cast<int>(inst.sfcs[k].sigma.size()); ++m)
        for (int t = 0; t < T; ++t)
          r.terms.push_back({inst.sfcs[k].sigma[m] * in.resources[i].compute_energy, xs(k, m, i, t)});
    rows.push_back(r);
  }

  std::ostringstream os;
  os << "\\ SFC deployment and recovery model, " << K << " SFCs, " << n << " nodes, " << T << " slots\n"
     << "\\ objective: processing + transmission + storage seconds, plus tau per redeployed VNF\n"
     << "\\ omitted: waiting caused by other SFCs' redeployment (not linear in these variables)\n"
     << "\\ omitted: per-slot operation energy (needs node-activity indicators)\n"
     << "\\ big-M = " << detail::lp_num(big_m) << "\n";
  os << "Minimize\n obj:";
  detail::write_terms(os, objective);
  os << "\nSubject To\n";
  for (const auto& r : rows) {
    const bool trivial = r.op == "=" ? r.rhs == 0 : r.op == "<=" ? r.rhs >= 0 : r.rhs <= 0;
    if (r.terms.empty() && trivial) continue;
    os << ' ' << r.name << ':';
    detail::write_terms(os, r.terms);
    os << ' ' << r.op << ' ' << detail::lp_num(r.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : continuous) os << " 0 <= " << v << " <= " << detail::lp_num(big_m) << '\n';
  os << "Binaries\n";
  for (std::size_t i = 0; i < binaries.size(); ++i) os << (i % 8 ? " " : (i ? "\n " : " ")) << binaries[i];
  os << "\nEnd\n";
  if (counts) *counts = c;
  return os.str();
}

}  // namespace sagin
