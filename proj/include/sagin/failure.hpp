#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "sagin/rng.hpp"
#include "sagin/scenario.hpp"
#include "sagin/state.hpp"
#include "sagin/topology.hpp"

namespace sagin {

// n ~ Poisson(lambda), capped at the candidate count, then n distinct
// candidates chosen uniformly (partial Fisher-Yates). Result is sorted.
inline std::vector<int> sample_failures(Stream& stream, const FailureConfig& cfg, std::vector<int> candidates) {
  if (cfg.lambda <= 0 || candidates.empty()) return {};
  std::poisson_distribution<int> count(cfg.lambda);
  const int n = std::min<int>(count(stream), static_cast<int>(candidates.size()));
  for (int i = 0; i < n; ++i) {
    const int j = uniform_int(stream, i, static_cast<int>(candidates.size()) - 1);
    std::swap(candidates[i], candidates[j]);
  }
  std::vector<int> out(candidates.begin(), candidates.begin() + n);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> failure_candidates(const NodeCatalog& cat, const FailureConfig& cfg) {
  std::vector<int> out;
  if (cfg.uav_eligible)
    for (int u = 0; u < cat.uav; ++u) out.push_back(cat.global(Layer::uav, u));
  if (cfg.satellite_eligible)
    for (int s = 0; s < cat.satellite; ++s) out.push_back(cat.global(Layer::satellite, s));
  return out;
}

// Failed-node flags for every slot. A fresh set is drawn at slot 0 and every
// update_interval_slots after; it persists until the next draw.
inline std::vector<std::vector<char>> failure_schedule(const Scenario& sc) {
  const NodeCatalog cat = catalog_of(sc);
  Stream stream = seeded_stream(sc.seed, "failures");
  const auto candidates = failure_candidates(cat, sc.failure);
  std::vector<std::vector<char>> out;
  std::vector<char> current(cat.size(), 0);
  for (int t = 0; t < sc.time.slot_count; ++t) {
    if (t % sc.failure.update_interval_slots == 0) {
      current.assign(cat.size(), 0);
      for (int n : sample_failures(stream, sc.failure, candidates)) current[n] = 1;
    }
    out.push_back(current);
  }
  return out;
}

struct FailureEvent {
  int slot = 0;
  std::vector<int> failed;
  std::vector<int> affected;               // SFC ids, ascending
  std::map<int, int> rolled_back_to;       // SFC id -> node
  friend bool operator==(const FailureEvent&, const FailureEvent&) = default;
};

namespace detail {

inline void release_bits(DeploymentState& st, int node, double bits) {
  if (node >= 0) st.resident_bits[node] = std::max(0.0, st.resident_bits[node] - bits);
}

// Walks the departure trail back to the latest surviving node with room for
// the data; with no such node the SFC restarts from its ground origin.
inline Checkpoint rollback_target(const DeploymentState& st, SfcState& s) {
  while (!s.trail.empty()) {
    Checkpoint c = s.trail.back();
    s.trail.pop_back();
    if (!st.failed[c.node] && st.has_room(c.node, s.data_bits)) return c;
  }
  return {s.origin, 0, 0.0};
}

}  // namespace detail

// Marks `failed` nodes down, rolls back every SFC holding data on or sending
// data into a failed node, and flags for redeployment every unfinished VNF
// whose host failed. Affected SFCs are left idle with needs_recovery set.
inline FailureEvent apply_failures(DeploymentState& st, const std::vector<int>& failed) {
  FailureEvent ev;
  ev.slot = st.slot;
  ev.failed = failed;
  std::sort(ev.failed.begin(), ev.failed.end());
  for (int n : ev.failed) {
    if (!st.failed[n]) st.emit({.time = st.slot_start, .kind = EventKind::fail, .node = n});
    st.failed[n] = 1;
  }

  for (auto& s : st.sfcs) {
    if (s.done()) continue;
    bool changed = false;

    if (st.failed[s.at]) {
      // Data on a failed node is lost there; the copy left at an earlier hop
      // is used instead.
      const int lost = s.at;
      detail::release_bits(st, s.at, s.data_bits);
      if (s.phase == Phase::transmitting) detail::release_bits(st, s.tx_to, s.data_bits);
      const Checkpoint c = detail::rollback_target(st, s);
      s.at = c.node;
      s.next_vnf = c.next_vnf;
      st.resident_bits[s.at] += s.data_bits;
      s.phase = Phase::idle;
      s.tx_to = -1;
      s.remaining_sigma = 0;
      s.remaining_bits = 0;
      s.route = {s.at};
      st.emit({.time = st.slot_start,
               .kind = EventKind::rollback,
               .sfc = s.id,
               .vnf = s.next_vnf,
               .node = s.at,
               .from = lost,
               .amount = c.depart_time});
      ev.rolled_back_to[s.id] = s.at;
      changed = true;
    } else if (s.phase == Phase::transmitting && st.failed[s.tx_to]) {
      detail::release_bits(st, s.tx_to, s.data_bits);
      const int lost = s.tx_to;
      if (!s.trail.empty()) s.trail.pop_back();
      s.phase = Phase::idle;
      s.tx_to = -1;
      s.remaining_bits = 0;
      s.route = {s.at};
      st.emit({.time = st.slot_start,
               .kind = EventKind::rollback,
               .sfc = s.id,
               .vnf = s.next_vnf,
               .node = s.at,
               .from = lost,
               .amount = s.tx_start});
      ev.rolled_back_to[s.id] = s.at;
      changed = true;
    }

    for (int m = s.next_vnf; m < s.vnf_count(); ++m) {
      if (s.host[m] >= 0 && st.failed[s.host[m]] && !s.redeploy[m]) {
        s.redeploy[m] = 1;
        st.emit({.time = st.slot_start, .kind = EventKind::flag_redeploy, .sfc = s.id, .vnf = m, .node = s.host[m]});
        changed = true;
      }
      if (s.host[m] >= 0 && st.failed[s.host[m]]) {
        s.host[m] = -1;
        changed = true;
      }
    }
    if (changed) {
      s.needs_recovery = true;
      ev.affected.push_back(s.id);
    }
  }
  return ev;
}

}  // namespace sagin
