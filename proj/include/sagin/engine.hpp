#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sagin/energy.hpp"
#include "sagin/failure.hpp"
#include "sagin/pathing.hpp"
#include "sagin/recovery.hpp"
#include "sagin/state.hpp"

namespace sagin {

// Lets a caller override the heuristic at each decision point. The engine
// lists the options and the heuristic's own pick; returning that pick
// reproduces the heuristic exactly.
class DecisionHook {
 public:
  enum class Kind { route, hosting, priority, recovery };
  virtual ~DecisionHook() = default;
  virtual int choose(Kind kind, int sfc, int option_count, int heuristic_choice) = 0;
};

inline SimInput make_sim_input(const Scenario& sc) {
  SimInput in;
  in.nodes = catalog_of(sc);
  in.slot_count = sc.time.slot_count;
  in.slot_length_s = sc.time.slot_length_s;
  const auto& p = sc.params;
  for (int n = 0; n < in.nodes.size(); ++n) {
    NodeResources r;
    if (!in.nodes.is_ground(n)) {
      r.compute_capacity = p.compute_capacity_units;
      r.storage_capacity = p.storage_capacity_bits;
      r.energy_capacity = p.energy_capacity_j;
      r.compute_ability = p.compute_ability_units_per_s;
      r.compute_energy = p.compute_energy_j_per_unit;
      r.operation_power_w =
          in.nodes.layer(n) == Layer::uav ? p.uav_operation_power_w : p.sat_operation_power_w;
    }
    in.resources.push_back(r);
  }
  for (const auto& s : sc.sfcs)
    in.sfcs.push_back({s.id, s.data_bits, in.nodes.global(Layer::ground, s.origin),
                       in.nodes.global(Layer::ground, s.destination), s.sigma});
  in.failed_by_slot = failure_schedule(sc);
  in.positions = trajectory(sc);
  auto shared = std::make_shared<const Scenario>(sc);
  auto positions = std::make_shared<const std::vector<std::vector<Vec3>>>(in.positions);
  in.graph_at = [shared, positions](int slot, const std::vector<char>& failed) {
    return build_slot_graph(*shared, slot, (*positions)[slot], failed);
  };
  in.params = sc.params;
  in.policy = sc.policy;
  in.weights = sc.weights;
  in.seed = sc.seed;
  return in;
}

struct SimResult {
  DeploymentState state;
  std::vector<FailureEvent> failures;
  std::vector<double> processed_ratio;  // per slot
  std::vector<int> completed;           // cumulative, per slot
  EnergyLedger energy;
  int slots_run = 0;
  double horizon_s = 0;
  double first_tx_time = -1;
};

namespace detail {

// Simple paths src -> dst over transmission links, depth-first with
// neighbours in link order. Stops after `limit` paths.
inline std::vector<std::vector<int>> simple_paths(const SlotGraph& g, int src, int dst, std::size_t limit = 4096) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur{src};
  std::vector<char> on(g.node_count(), 0);
  on[src] = 1;
  auto rec = [&](auto&& self, int u) -> void {
    if (out.size() >= limit) return;
    if (u == dst) {
      out.push_back(cur);
      return;
    }
    for (int li : g.out_links(u)) {
      const Link& l = g.links[li];
      if (l.kind == LinkKind::storage || on[l.to] || g.is_failed(l.to)) continue;
      on[l.to] = 1;
      cur.push_back(l.to);
      self(self, l.to);
      cur.pop_back();
      on[l.to] = 0;
    }
  };
  if (!g.is_failed(src) && !g.is_failed(dst)) rec(rec, src);
  return out;
}

// Non-decreasing maps of `count` VNFs onto `slots` hosts, lexicographic.
inline std::vector<std::vector<int>> monotone_maps(int count, int slots) {
  std::vector<std::vector<int>> out;
  if (slots <= 0) return out;
  std::vector<int> cur(count, 0);
  while (true) {
    out.push_back(cur);
    int i = count - 1;
    while (i >= 0 && cur[i] == slots - 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < count; ++j) cur[j] = cur[i];
  }
  return out;
}

}  // namespace detail

class Simulation {
 public:
  explicit Simulation(const SimInput& in, DecisionHook* hook = nullptr)
      : in_(in), hook_(hook), policy_stream_(seeded_stream(in.seed, "policy")) {}

  SimResult run() {
    init_state();
    plan_initial_routes();
    choose_priority();
    const double tau = in_.slot_length_s;
    int t = 0;
    for (; t < in_.slot_count; ++t) {
      if (all_done()) break;
      st_.slot = t;
      st_.slot_start = t * tau;
      slot_end_ = (t + 1) * tau;
      update_failures(t);
      graph_ = in_.graph_at(t, st_.failed);
      begin_slot();
      recover();
      run_events();
      end_slot();
    }
    res_.slots_run = t;
    res_.horizon_s = in_.slot_count * tau;
    res_.state = st_;
    return std::move(res_);
  }

 private:
  using Kind = DecisionHook::Kind;

  int ask(Kind kind, int sfc, int count, int def) {
    if (!hook_ || count <= 1) return def;
    const int c = hook_->choose(kind, sfc, count, def);
    if (c < 0 || c >= count) throw std::out_of_range("decision hook returned an invalid option");
    return c;
  }

  bool all_done() const {
    return std::all_of(st_.sfcs.begin(), st_.sfcs.end(), [](const SfcState& s) { return s.done(); });
  }

  const NodeResources& res(int node) const { return in_.resources[node]; }

  void init_state() {
    const int n = in_.nodes.size();
    st_.nodes = in_.nodes;
    st_.resident_bits.assign(n, 0.0);
    st_.storage_capacity.assign(n, 0.0);
    for (int i = 0; i < n; ++i) st_.storage_capacity[i] = res(i).storage_capacity;
    st_.failed.assign(n, 0);
    for (const auto& f : in_.sfcs) {
      SfcState s;
      s.id = f.id;
      s.data_bits = f.data_bits;
      s.origin = f.origin;
      s.destination = f.destination;
      s.sigma = f.sigma;
      s.at = f.origin;
      s.route = {f.origin};
      s.host.assign(f.sigma.size(), -1);
      s.redeploy.assign(f.sigma.size(), 0);
      st_.resident_bits[s.at] += s.data_bits;
      st_.sfcs.push_back(std::move(s));
    }
    res_.energy = EnergyLedger(n, 0.0, in_.params.compute_energy_j_per_unit);
    for (int i = 0; i < n; ++i) res_.energy.set_budget(i, in_.nodes.is_ground(i) ? kUnreachable : res(i).energy_capacity);
    busy_until_.clear();
  }

  void assign_hosts(SfcState& s, const std::vector<int>& hosts, const std::vector<int>& map) {
    for (int m = s.next_vnf, i = 0; m < s.vnf_count(); ++m, ++i) s.host[m] = hosts.empty() ? -1 : hosts[map[i]];
  }

  std::vector<int> default_map(int hosts, int count) const {
    std::vector<int> idx(hosts);
    std::iota(idx.begin(), idx.end(), 0);
    return spread_hosts(idx, count);
  }

  // Each SFC starts on the cheapest path of the
  // failure-free first slot with its VNFs spread along the path.
  void plan_initial_routes() {
    const SlotGraph g0 = in_.graph_at(0, std::vector<char>(in_.nodes.size(), 0));
    for (auto& s : st_.sfcs) {
      auto best = shortest_path(g0, s.origin, s.destination, transmission_cost(s.data_bits, in_.slot_length_s));
      std::vector<int> route = best ? best->nodes : std::vector<int>{s.origin};
      if (hook_) {
        auto options = detail::simple_paths(g0, s.origin, s.destination);
        auto it = std::find(options.begin(), options.end(), route);
        if (it != options.end()) {
          const int c = ask(Kind::route, s.id, static_cast<int>(options.size()), static_cast<int>(it - options.begin()));
          route = options[c];
        }
      }
      s.route = route;
      const auto hosts = hosting_nodes(st_.nodes, route);
      std::vector<int> map = default_map(static_cast<int>(hosts.size()), s.vnf_count());
      if (hook_ && !hosts.empty()) {
        auto options = detail::monotone_maps(s.vnf_count(), static_cast<int>(hosts.size()));
        auto it = std::find(options.begin(), options.end(), map);
        const int c = ask(Kind::hosting, s.id, static_cast<int>(options.size()), static_cast<int>(it - options.begin()));
        map = options[c];
      }
      assign_hosts(s, hosts, map);
    }
  }

  // One SFC order for the whole run; RSSP reshuffles it every slot.
  void choose_priority() {
    std::vector<int> order(st_.sfcs.size());
    std::iota(order.begin(), order.end(), 0);
    const bool desc = in_.policy == Policy::flts;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const auto& x = st_.sfcs[a];
      const auto& y = st_.sfcs[b];
      if (x.data_bits != y.data_bits) return desc ? x.data_bits > y.data_bits : x.data_bits < y.data_bits;
      return x.id < y.id;
    });
    if (hook_ && order.size() <= 6) {
      std::vector<int> perm(order.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::vector<int>> all;
      do all.push_back(perm);
      while (std::next_permutation(perm.begin(), perm.end()));
      const int def = static_cast<int>(std::find(all.begin(), all.end(), order) - all.begin());
      order = all[ask(Kind::priority, -1, static_cast<int>(all.size()), def)];
    }
    rank_.assign(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) rank_[order[i]] = static_cast<int>(i);
  }

  void update_failures(int t) {
    const auto& want = in_.failed_by_slot.empty() ? std::vector<char>(in_.nodes.size(), 0) : in_.failed_by_slot[t];
    if (want == st_.failed) return;
    std::fill(st_.failed.begin(), st_.failed.end(), 0);
    std::vector<int> list;
    for (int n = 0; n < static_cast<int>(want.size()); ++n)
      if (want[n]) list.push_back(n);
    if (list.empty()) return;
    res_.failures.push_back(apply_failures(st_, list));
  }

  void begin_slot() {
    const int n = in_.nodes.size();
    residual_.assign(n, 0.0);
    for (int i = 0; i < n; ++i) residual_[i] = st_.failed[i] ? 0.0 : res(i).compute_capacity;
    closed_.assign(n, 0);
    op_charged_.assign(n, 0);
    recovering_here_.assign(n, 0);
    stalled_.assign(st_.sfcs.size(), 0);
    processed_.assign(st_.sfcs.size(), 0);
    busy_until_.clear();
    holder_recovering_.clear();
    unfinished_at_start_ = 0;
    for (auto& s : st_.sfcs) {
      if (s.done()) continue;
      ++unfinished_at_start_;
      s.cursor = std::max(s.cursor, st_.slot_start);
    }
    if (!in_.positions.empty() && st_.slot + 1 < static_cast<int>(in_.positions.size())) {
      for (int u = 0; u < in_.nodes.uav; ++u) {
        const int node = in_.nodes.global(Layer::uav, u);
        if (st_.failed[node]) continue;
        const auto e = uav_slot_energy(in_.params, in_.positions[st_.slot][node], in_.positions[st_.slot + 1][node],
                                       in_.slot_length_s, {});
        res_.energy.record(node, EnergyCategory::path, e.path);
      }
    }
    if (in_.policy == Policy::rssp) {
      std::vector<int> order(st_.sfcs.size());
      std::iota(order.begin(), order.end(), 0);
      for (int i = static_cast<int>(order.size()) - 1; i > 0; --i) std::swap(order[i], order[uniform_int(policy_stream_, 0, i)]);
      for (std::size_t i = 0; i < order.size(); ++i) rank_[order[i]] = static_cast<int>(i);
    }
    // VNFs in service keep their compute for this slot too.
    for (auto& s : st_.sfcs) {
      if (s.phase != Phase::processing) continue;
      const double sigma = s.sigma[s.next_vnf];
      const double op = op_charged_[s.at] ? 0.0 : res(s.at).operation_power_w * in_.slot_length_s;
      if (sigma > residual_[s.at] + 1e-12 || !res_.energy.charge_operation(s.at, op)) {
        stalled_[index_of(s)] = 1;
        continue;
      }
      op_charged_[s.at] = 1;
      residual_[s.at] -= sigma;
      if (s.recovering) recovering_here_[s.at] = 1;
      st_.emit({.time = s.cursor, .kind = EventKind::process_chunk, .sfc = s.id, .vnf = s.next_vnf, .node = s.at, .amount = sigma});
    }
  }

  std::size_t index_of(const SfcState& s) const { return static_cast<std::size_t>(&s - st_.sfcs.data()); }

  // ---- recovery -----------------------------------------------------------

  std::vector<int> node_ranking(int node, const std::vector<int>& listed, const std::vector<int>& request_sfc) {
    std::vector<Proposer> props;
    for (int i : listed) {
      const auto& s = st_.sfcs[request_sfc[i]];
      props.push_back({i, s.data_bits, s.at == node && s.phase == Phase::processing, s.at == node});
    }
    if (in_.policy == Policy::rssp) {
      std::vector<int> out = listed;
      for (int i = static_cast<int>(out.size()) - 1; i > 0; --i) std::swap(out[i], out[uniform_int(policy_stream_, 0, i)]);
      return out;
    }
    return build_node_ranking(props, in_.weights,
                              in_.policy == Policy::flts ? RankingRule::descending_data : RankingRule::ascending_data);
  }

  void recover() {
    std::vector<int> who;
    std::vector<RecoveryRequest> requests;
    for (std::size_t k = 0; k < st_.sfcs.size(); ++k) {
      auto& s = st_.sfcs[k];
      if (s.done() || !s.needs_recovery || s.phase != Phase::idle || st_.failed[s.at]) continue;
      who.push_back(static_cast<int>(k));
      requests.push_back({s.id, build_sfc_preferences(s, graph_)});
    }
    if (requests.empty()) return;

    std::vector<int> chosen(requests.size(), -1);
    if (in_.policy == Policy::rsnt) {
      for (std::size_t i = 0; i < requests.size(); ++i) {
        std::vector<int> nbrs;
        for (const auto& c : requests[i].prefs)
          if (c.node != st_.sfcs[who[i]].at) nbrs.push_back(c.node);
        std::sort(nbrs.begin(), nbrs.end());
        if (!nbrs.empty()) chosen[i] = nbrs[uniform_int(policy_stream_, 0, static_cast<int>(nbrs.size()) - 1)];
      }
    } else {
      auto capacity = [&](int node, const std::vector<int>& listed) {
        if (in_.nodes.is_ground(node)) return static_cast<int>(listed.size());
        return static_cast<int>(std::floor(residual_[node] + 1e-9));
      };
      auto ranking = [&](int node, const std::vector<int>& listed) { return node_ranking(node, listed, who); };
      const auto out = match_recover(requests, capacity, ranking);
      for (const auto& step : out.matching.trace) {
        static constexpr EventKind kinds[] = {EventKind::propose, EventKind::accept, EventKind::reject, EventKind::evict};
        st_.emit({.time = st_.slot_start,
                  .kind = kinds[step.kind],
                  .sfc = st_.sfcs[who[step.proposer]].id,
                  .node = out.receiver_nodes[step.receiver]});
      }
      chosen = out.node_of;
    }

    for (std::size_t i = 0; i < requests.size(); ++i) {
      auto& s = st_.sfcs[who[i]];
      const auto& prefs = requests[i].prefs;
      if (hook_) {
        int def = static_cast<int>(prefs.size());
        for (std::size_t c = 0; c < prefs.size(); ++c)
          if (prefs[c].node == chosen[i]) def = static_cast<int>(c);
        const int c = ask(Kind::recovery, s.id, static_cast<int>(prefs.size()) + 1, def);
        chosen[i] = c < static_cast<int>(prefs.size()) ? prefs[c].node : -1;
      }
      if (chosen[i] >= 0) redeploy_to(s, chosen[i]);
    }
  }

  void redeploy_to(SfcState& s, int target) {
    const LinkCost cost = transmission_cost(s.data_bits, in_.slot_length_s);
    std::vector<int> route{s.at};
    if (target != s.at) {
      auto tail = shortest_path(graph_, target, s.destination, cost);
      if (tail) {
        route.insert(route.end(), tail->nodes.begin(), tail->nodes.end());
      } else {
        route.push_back(target);
      }
    } else {
      auto p = shortest_path(graph_, s.at, s.destination, cost);
      if (p) route = p->nodes;
    }
    s.route = route;
    const auto hosts = hosting_nodes(st_.nodes, route, target == s.at ? 0 : 1);
    assign_hosts(s, hosts, default_map(static_cast<int>(hosts.size()), s.vnf_count() - s.next_vnf));
    s.needs_recovery = false;
    s.recovering = !s.all_processed();
    st_.emit({.time = s.cursor, .kind = EventKind::redeploy, .sfc = s.id, .vnf = s.next_vnf, .node = target});
  }

  // ---- in-slot event loop ---------------------------------------------------

  void span(SfcState& s, double until, Bucket b) {
    until = std::min(until, slot_end_);
    if (until > s.cursor)
      st_.emit({.time = s.cursor, .kind = EventKind::span, .sfc = s.id, .node = s.at, .amount = until - s.cursor, .tag = b});
    s.cursor = until;
  }

  Bucket wait_bucket(const SfcState& s, bool blocked_by_recovering) const {
    if (s.needs_recovery) return Bucket::redeploy;
    return blocked_by_recovering ? Bucket::other : Bucket::storage;
  }

  void run_events() {
    long guard = 0;
    while (true) {
      SfcState* next = nullptr;
      for (auto& s : st_.sfcs) {
        if (s.done() || s.cursor >= slot_end_) continue;
        if (!next || before(s, *next)) next = &s;
      }
      if (!next) break;
      if (++guard > 1000000) throw std::logic_error("event loop did not terminate");
      step(*next);
    }
  }

  bool before(const SfcState& a, const SfcState& b) const {
    if (a.cursor != b.cursor) return a.cursor < b.cursor;
    const int ca = a.phase == Phase::idle ? 1 : 0, cb = b.phase == Phase::idle ? 1 : 0;
    if (ca != cb) return ca < cb;
    const int ra = rank_[index_of(a)], rb = rank_[index_of(b)];
    if (ra != rb) return ra < rb;
    return a.id < b.id;
  }

  void step(SfcState& s) {
    switch (s.phase) {
      case Phase::processing: return step_processing(s);
      case Phase::transmitting: return step_transmitting(s);
      case Phase::idle: return step_idle(s);
      case Phase::done: return;
    }
  }

  void step_processing(SfcState& s) {
    if (stalled_[index_of(s)]) return span(s, slot_end_, Bucket::storage);
    processed_[index_of(s)] = 1;
    const double phi = res(s.at).compute_ability;
    const double need = s.remaining_sigma / phi;
    if (s.cursor + need <= slot_end_) {
      span(s, s.cursor + need, Bucket::processing);
      s.remaining_sigma = 0;
      st_.emit({.time = s.cursor, .kind = EventKind::process_end, .sfc = s.id, .vnf = s.next_vnf, .node = s.at});
      ++s.next_vnf;
      s.phase = Phase::idle;
      s.recovering = false;
    } else {
      s.remaining_sigma -= (slot_end_ - s.cursor) * phi;
      span(s, slot_end_, Bucket::processing);
    }
  }

  void record_transfer_energy(const Link& l, double seconds) {
    const auto& p = in_.params;
    const double tx = transmit_power(p, l.kind) * seconds;
    switch (in_.nodes.layer(l.from)) {
      case Layer::uav: res_.energy.record(l.from, EnergyCategory::communication, tx); break;
      case Layer::satellite: res_.energy.record(l.from, EnergyCategory::transmission, tx); break;
      case Layer::ground: break;
    }
    if (in_.nodes.layer(l.to) == Layer::satellite)
      res_.energy.record(l.to, EnergyCategory::reception, receive_power(p, l.kind) * seconds);
  }

  void step_transmitting(SfcState& s) {
    const Link* link = graph_.find(s.at, s.tx_to);
    if (!link) {
      // The receiver moved out of reach; the sender still holds the data.
      st_.emit({.time = s.cursor, .kind = EventKind::tx_abort, .sfc = s.id, .node = s.at, .from = s.at, .to = s.tx_to,
                .amount = s.tx_start});
      detail::release_bits(st_, s.tx_to, s.data_bits);
      if (!s.trail.empty()) s.trail.pop_back();
      s.phase = Phase::idle;
      s.tx_to = -1;
      s.remaining_bits = 0;
      s.route = {s.at};
      return;
    }
    const auto key = std::make_pair(s.at, s.tx_to);
    auto busy = busy_until_.find(key);
    if (busy != busy_until_.end() && busy->second > s.cursor) {
      span(s, busy->second, wait_bucket(s, holder_recovering_[key]));
      return;
    }
    const double rate = link->rate_bps;
    const double window = slot_end_ - s.cursor;
    double bits, seconds;
    if (s.remaining_bits <= rate * window) {
      bits = s.remaining_bits;
      seconds = bits / rate;
    } else {
      bits = rate * window;
      seconds = window;
    }
    st_.emit({.time = s.cursor, .kind = EventKind::tx_chunk, .sfc = s.id, .from = s.at, .to = s.tx_to, .amount = bits, .rate = rate});
    record_transfer_energy(*link, seconds);
    const bool finished = bits == s.remaining_bits;
    s.remaining_bits = finished ? 0.0 : s.remaining_bits - bits;
    span(s, s.cursor + seconds, Bucket::transmission);
    if (!finished) s.cursor = slot_end_;
    busy_until_[key] = s.cursor;
    holder_recovering_[key] = s.recovering;
    if (!finished) return;
    st_.emit({.time = s.cursor, .kind = EventKind::tx_end, .sfc = s.id, .from = s.at, .to = s.tx_to});
    detail::release_bits(st_, s.at, s.data_bits);
    const int from = s.at;
    s.at = s.tx_to;
    s.tx_to = -1;
    s.phase = Phase::idle;
    if (s.route.size() >= 2 && s.route[0] == from && s.route[1] == s.at)
      s.route.erase(s.route.begin());
    else
      s.route = {s.at};
    st_.emit({.time = s.cursor, .kind = EventKind::arrive, .sfc = s.id, .node = s.at});
  }

  bool route_usable(const SfcState& s) const {
    if (s.route.size() < 2 || s.route[0] != s.at) return false;
    if (graph_.is_failed(s.route[1]) || !graph_.find(s.at, s.route[1])) return false;
    if (s.all_processed()) return true;
    const int h = s.host[s.next_vnf];
    return h >= 0 && std::find(s.route.begin() + 1, s.route.end(), h) != s.route.end();
  }

  // Cheapest path to the destination from the current node. With VNFs left
  // and no UAV or satellite on that path, the path detours through the best
  // hosting neighbour.
  std::optional<std::vector<int>> plan_from_here(const SfcState& s) const {
    const LinkCost cost = transmission_cost(s.data_bits, in_.slot_length_s);
    auto p = shortest_path(graph_, s.at, s.destination, cost);
    const bool need_host = !s.all_processed();
    if (p && (!need_host || !hosting_nodes(st_.nodes, p->nodes).empty())) return p->nodes;
    if (!need_host) return std::nullopt;
    const auto unit = unit_times_to(graph_, s.destination);
    int best = -1;
    double best_cost = kUnreachable;
    for (int li : graph_.out_links(s.at)) {
      const Link& l = graph_.links[li];
      if (l.kind == LinkKind::storage || graph_.is_failed(l.to) || st_.nodes.is_ground(l.to)) continue;
      const double c = s.data_bits / l.rate_bps + s.data_bits * unit[l.to];
      if (c < best_cost) {
        best_cost = c;
        best = l.to;
      }
    }
    if (best < 0) return std::nullopt;
    std::vector<int> route{s.at};
    auto tail = shortest_path(graph_, best, s.destination, cost);
    route.insert(route.end(), tail->nodes.begin(), tail->nodes.end());
    return route;
  }

  void step_idle(SfcState& s) {
    if (s.at == s.destination && s.all_processed()) {
      s.phase = Phase::done;
      s.completion = s.cursor;
      s.recovering = false;
      detail::release_bits(st_, s.at, s.data_bits);
      st_.emit({.time = s.cursor, .kind = EventKind::done, .sfc = s.id, .node = s.at});
      return;
    }
    if (s.needs_recovery) return span(s, slot_end_, Bucket::redeploy);

    if (!s.all_processed() && s.host[s.next_vnf] == s.at) {
      const double sigma = s.sigma[s.next_vnf];
      const double op = op_charged_[s.at] ? 0.0 : res(s.at).operation_power_w * in_.slot_length_s;
      if (!closed_[s.at] && sigma <= residual_[s.at] + 1e-12 && res_.energy.charge_compute(s.at, sigma, op)) {
        op_charged_[s.at] = 1;
        residual_[s.at] -= sigma;
        if (s.recovering) recovering_here_[s.at] = 1;
        s.phase = Phase::processing;
        s.remaining_sigma = sigma;
        st_.emit({.time = s.cursor, .kind = EventKind::process_start, .sfc = s.id, .vnf = s.next_vnf, .node = s.at, .amount = sigma});
        st_.emit({.time = s.cursor, .kind = EventKind::process_chunk, .sfc = s.id, .vnf = s.next_vnf, .node = s.at, .amount = sigma});
        return;
      }
      closed_[s.at] = 1;
      return span(s, slot_end_, wait_bucket(s, recovering_here_[s.at] != 0));
    }

    if (!route_usable(s)) {
      auto plan = plan_from_here(s);
      if (!plan) return span(s, slot_end_, Bucket::storage);
      s.route = *plan;
      const auto hosts = hosting_nodes(st_.nodes, s.route);
      assign_hosts(s, hosts, default_map(static_cast<int>(hosts.size()), s.vnf_count() - s.next_vnf));
      st_.emit({.time = s.cursor, .kind = EventKind::replan, .sfc = s.id, .node = s.at});
      return;  // re-evaluated at the same time: the first VNF may now be local
    }

    const int to = s.route[1];
    if (!st_.has_room(to, s.data_bits)) return span(s, slot_end_, Bucket::storage);
    st_.resident_bits[to] += s.data_bits;
    s.trail.push_back({s.at, s.next_vnf, s.cursor});
    s.phase = Phase::transmitting;
    s.tx_to = to;
    s.tx_start = s.cursor;
    s.remaining_bits = s.data_bits;
    if (res_.first_tx_time < 0 || s.cursor < res_.first_tx_time) res_.first_tx_time = s.cursor;
    st_.emit({.time = s.cursor, .kind = EventKind::tx_start, .sfc = s.id, .from = s.at, .to = to, .amount = s.data_bits});
  }

  void end_slot() {
    for (auto& s : st_.sfcs) {
      if (s.done()) continue;
      s.cursor = slot_end_;
      st_.emit({.time = slot_end_, .kind = EventKind::store, .sfc = s.id, .node = s.at, .amount = s.data_bits});
    }
    int done = 0, processed = 0;
    for (std::size_t k = 0; k < st_.sfcs.size(); ++k) {
      done += st_.sfcs[k].done() ? 1 : 0;
      processed += processed_[k];
    }
    res_.processed_ratio.push_back(unfinished_at_start_ ? static_cast<double>(processed) / unfinished_at_start_ : 0.0);
    res_.completed.push_back(done);
  }

  const SimInput& in_;
  DecisionHook* hook_;
  Stream policy_stream_;
  DeploymentState st_;
  SimResult res_;
  SlotGraph graph_;
  double slot_end_ = 0;
  std::vector<int> rank_;
  std::vector<double> residual_;
  std::vector<char> closed_, op_charged_, recovering_here_, stalled_, processed_;
  std::map<std::pair<int, int>, double> busy_until_;
  std::map<std::pair<int, int>, bool> holder_recovering_;
  int unfinished_at_start_ = 0;
};

inline SimResult run_simulation(const SimInput& in, DecisionHook* hook = nullptr) { return Simulation(in, hook).run(); }

inline SimResult run_simulation(const Scenario& sc) { return run_simulation(make_sim_input(sc)); }

struct DelayBreakdown {
  double processing = 0;
  double transmission = 0;
  double storage = 0;
  double redeploy = 0;
  double other = 0;
  double total = 0;
  bool completed = false;
  double completion = -1;
};

// Replays one SFC's spans. A rollback turns every span of that SFC starting
// at or after the restore time into redeployment time; OTHER spans plus any
// floating-point remainder form the residual bucket, so the five buckets sum
// to the total exactly.
inline DelayBreakdown delay_breakdown(const EventLog& log, int sfc, double horizon_s) {
  struct Span {
    double start, length;
    Bucket tag;
  };
  std::vector<Span> spans;
  DelayBreakdown d;
  for (const auto& e : log) {
    if (e.sfc != sfc) continue;
    if (e.kind == EventKind::span) spans.push_back({e.time, e.amount, e.tag});
    if (e.kind == EventKind::rollback)
      for (auto& sp : spans)
        if (sp.start >= e.amount) sp.tag = Bucket::redeploy;
    if (e.kind == EventKind::done) {
      d.completed = true;
      d.completion = e.time;
    }
  }
  for (const auto& sp : spans) {
    switch (sp.tag) {
      case Bucket::processing: d.processing += sp.length; break;
      case Bucket::transmission: d.transmission += sp.length; break;
      case Bucket::storage: d.storage += sp.length; break;
      case Bucket::redeploy: d.redeploy += sp.length; break;
      default: break;
    }
  }
  d.total = d.completed ? d.completion : horizon_s;
  d.other = d.total - d.processing - d.transmission - d.storage - d.redeploy;
  return d;
}

}  // namespace sagin
