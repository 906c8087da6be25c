#pragma once

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "sagin/events.hpp"
#include "sagin/state.hpp"

namespace sagin {

struct AuditReport {
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

// Re-checks a finished run from its event log alone (plus the static input):
// VNF sequencing and single assignment, the SFC's walk through the network,
// per-slot link, compute and storage budgets, node energy budgets, and that
// nothing happens on a failed node.
inline AuditReport audit_run(const SimInput& in, const EventLog& log) {
  AuditReport rep;
  const double tol = 1e-9;
  auto fail = [&](const Event& e, const std::string& what) {
    if (rep.violations.size() < 50)
      rep.violations.push_back("slot " + std::to_string(e.slot) + " sfc " + std::to_string(e.sfc) + ": " + what);
  };

  struct Walk {
    int position;
    int expected_vnf = 0;
    int processing = -1;
    double last_end = 0;
    int tx_to = -1;
    bool done = false;
  };
  std::map<int, Walk> walks;
  std::map<int, const SimSfc*> spec;
  for (const auto& s : in.sfcs) {
    walks[s.id] = Walk{s.origin};
    spec[s.id] = &s;
  }

  std::map<std::tuple<int, int, int>, double> link_bits;  // (slot, from, to)
  std::map<std::pair<int, int>, double> link_rate;        // first rate seen per (slot, link)
  std::map<std::pair<int, int>, double> compute;          // (slot, node)
  std::map<std::pair<int, int>, double> stored;           // (slot, node)
  std::vector<double> enforced(in.nodes.size(), 0.0);
  std::map<std::pair<int, int>, bool> op_counted;

  auto failed_at = [&](int slot, int node) {
    return node >= 0 && slot < static_cast<int>(in.failed_by_slot.size()) && in.failed_by_slot[slot][node];
  };

  for (const auto& e : log) {
    if (e.kind == EventKind::fail || e.kind == EventKind::span || e.kind == EventKind::propose ||
        e.kind == EventKind::accept || e.kind == EventKind::reject || e.kind == EventKind::evict)
      continue;
    auto it = walks.find(e.sfc);
    if (it == walks.end()) {
      fail(e, "event for unknown SFC");
      continue;
    }
    Walk& w = it->second;
    const SimSfc& s = *spec[e.sfc];
    if (w.done) fail(e, "activity after completion");
    switch (e.kind) {
      case EventKind::process_start:
        if (e.vnf != w.expected_vnf) fail(e, "VNF started out of order");
        if (w.processing >= 0) fail(e, "two VNFs in service at once");
        if (e.node != w.position) fail(e, "VNF started away from the data");
        if (e.time + tol < w.last_end) fail(e, "VNF started before its predecessor ended");
        if (in.nodes.is_ground(e.node)) fail(e, "VNF on a ground station");
        w.processing = e.vnf;
        enforced[e.node] += e.amount * in.params.compute_energy_j_per_unit;
        break;
      case EventKind::process_chunk: {
        if (w.processing != e.vnf || e.node != w.position) fail(e, "compute reserved for a VNF not in service");
        if (failed_at(e.slot, e.node)) fail(e, "processing on a failed node");
        compute[{e.slot, e.node}] += e.amount;
        auto key = std::make_pair(e.slot, e.node);
        if (!op_counted[key]) {
          op_counted[key] = true;
          enforced[e.node] += in.resources[e.node].operation_power_w * in.slot_length_s;
        }
        break;
      }
      case EventKind::process_end:
        if (w.processing != e.vnf) fail(e, "VNF ended without starting");
        w.processing = -1;
        w.expected_vnf = e.vnf + 1;
        w.last_end = e.time;
        break;
      case EventKind::tx_start:
        if (e.from != w.position) fail(e, "transmission from a node not holding the data");
        if (w.processing >= 0) fail(e, "transmission during processing");
        if (w.tx_to >= 0) fail(e, "two transmissions at once");
        w.tx_to = e.to;
        break;
      case EventKind::tx_chunk: {
        if (e.from != w.position || e.to != w.tx_to) fail(e, "chunk on a link not in use");
        if (failed_at(e.slot, e.from) || failed_at(e.slot, e.to)) fail(e, "transmission touching a failed node");
        link_bits[{e.slot, e.from, e.to}] += e.amount;
        auto key = std::make_pair(e.slot, e.from * in.nodes.size() + e.to);
        auto r = link_rate.find(key);
        if (r == link_rate.end()) link_rate[key] = e.rate;
        else if (r->second != e.rate) fail(e, "link rate changed within a slot");
        break;
      }
      case EventKind::tx_end:
        if (e.to != w.tx_to) fail(e, "transmission ended on another link");
        break;
      case EventKind::tx_abort:
        w.tx_to = -1;
        break;
      case EventKind::arrive:
        if (e.node != w.tx_to) fail(e, "arrival without transmission");
        w.position = e.node;
        w.tx_to = -1;
        break;
      case EventKind::store:
        if (e.node != w.position) fail(e, "stored away from the data");
        if (failed_at(e.slot, e.node)) fail(e, "data stored on a failed node");
        stored[{e.slot, e.node}] += e.amount;
        break;
      case EventKind::rollback:
        if (e.vnf > w.expected_vnf && w.processing < 0) fail(e, "rollback moved progress forward");
        w.position = e.node;
        w.expected_vnf = e.vnf;
        w.processing = -1;
        w.tx_to = -1;
        break;
      case EventKind::done:
        if (w.position != s.destination || e.node != s.destination) fail(e, "completion away from the destination");
        if (w.expected_vnf != static_cast<int>(s.sigma.size())) fail(e, "completion with VNFs left");
        w.done = true;
        break;
      default: break;
    }
  }

  for (const auto& [key, bits] : link_bits) {
    const auto [slot, from, to] = key;
    const double rate = link_rate[{slot, from * in.nodes.size() + to}];
    if (bits > rate * in.slot_length_s * (1 + tol))
      rep.violations.push_back("slot " + std::to_string(slot) + ": link " + std::to_string(from) + "->" +
                               std::to_string(to) + " carries more than rate * tau");
  }
  for (const auto& [key, used] : compute)
    if (used > in.resources[key.second].compute_capacity * (1 + tol))
      rep.violations.push_back("slot " + std::to_string(key.first) + ": node " + std::to_string(key.second) +
                               " exceeds compute capacity");
  for (const auto& [key, bits] : stored)
    if (!in.nodes.is_ground(key.second) && bits > in.resources[key.second].storage_capacity * (1 + tol))
      rep.violations.push_back("slot " + std::to_string(key.first) + ": node " + std::to_string(key.second) +
                               " exceeds storage capacity");
  for (int n = 0; n < in.nodes.size(); ++n)
    if (!in.nodes.is_ground(n) && enforced[n] > in.resources[n].energy_capacity * (1 + tol))
      rep.violations.push_back("node " + std::to_string(n) + " exceeds its energy budget");
  return rep;
}

}  // namespace sagin
