#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "sagin/events.hpp"
#include "sagin/scenario.hpp"
#include "sagin/topology.hpp"

namespace sagin {

struct NodeResources {
  double compute_capacity = 0;    // C, sigma units per slot
  double storage_capacity = 0;    // A, bits
  double energy_capacity = 0;     // E^M, J
  double compute_ability = 0;     // phi, sigma units per second
  double compute_energy = 0;      // e^c, J per sigma unit
  double operation_power_w = 0;   // E^T per active slot = power * tau
  friend bool operator==(const NodeResources&, const NodeResources&) = default;
};

struct SimSfc {
  int id = 0;
  double data_bits = 0;
  int origin = 0;       // dense node number
  int destination = 0;  // dense node number
  std::vector<double> sigma;
};

// Fully static description of one run: the engine never looks at geometry or
// random streams except through these fields.
struct SimInput {
  NodeCatalog nodes;
  int slot_count = 1;
  double slot_length_s = 5.0;
  std::vector<NodeResources> resources;               // per node
  std::vector<SimSfc> sfcs;
  std::vector<std::vector<char>> failed_by_slot;      // per slot, per node
  std::function<SlotGraph(int, const std::vector<char>&)> graph_at;
  std::vector<std::vector<Vec3>> positions;           // optional; slot_count + 1 entries
  ParameterSet params = default_parameters();
  Policy policy = Policy::frmg;
  PreferenceWeights weights;
  std::uint64_t seed = 1;
};

enum class Phase { idle, processing, transmitting, done };

struct Checkpoint {
  int node;
  int next_vnf;
  double depart_time;
  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct SfcState {
  int id = 0;
  double data_bits = 0;
  int origin = 0;
  int destination = 0;
  std::vector<double> sigma;

  int at = 0;                     // node currently holding the data
  std::vector<int> route;         // planned nodes, route.front() == at
  std::vector<int> host;          // x: node per VNF, -1 when unassigned
  std::vector<char> redeploy;     // w
  int next_vnf = 0;
  Phase phase = Phase::idle;
  double remaining_sigma = 0;
  double remaining_bits = 0;
  int tx_to = -1;
  double tx_start = 0;
  double cursor = 0;
  bool needs_recovery = false;
  bool recovering = false;
  std::vector<Checkpoint> trail;  // departures, oldest first
  double completion = -1;

  int vnf_count() const { return static_cast<int>(sigma.size()); }
  bool all_processed() const { return next_vnf >= vnf_count(); }
  bool done() const { return phase == Phase::done; }
  friend bool operator==(const SfcState&, const SfcState&) = default;
};

struct DeploymentState {
  NodeCatalog nodes;
  int slot = 0;
  double slot_start = 0;
  std::vector<SfcState> sfcs;
  std::vector<double> resident_bits;      // data held at or inbound to each node
  std::vector<double> storage_capacity;   // A per node; ground stations unbounded
  std::vector<char> failed;
  EventLog log;

  bool has_room(int node, double bits) const {
    return nodes.is_ground(node) || resident_bits[node] + bits <= storage_capacity[node] * (1 + 1e-12);
  }

  void emit(Event e) {
    e.slot = slot;
    log.push_back(e);
  }

  friend bool operator==(const DeploymentState&, const DeploymentState&) = default;
};

// VNF m of `count` remaining VNFs goes to hosts[floor(m * n / count)], so the
// VNFs are spread in order over the non-ground nodes of the route.
inline std::vector<int> spread_hosts(const std::vector<int>& hosts, int count) {
  std::vector<int> out(count, -1);
  if (hosts.empty()) return out;
  const int n = static_cast<int>(hosts.size());
  for (int m = 0; m < count; ++m) out[m] = hosts[static_cast<std::size_t>(m) * n / count];
  return out;
}

inline std::vector<int> hosting_nodes(const NodeCatalog& nodes, const std::vector<int>& route, std::size_t from = 0) {
  std::vector<int> out;
  for (std::size_t i = from; i < route.size(); ++i)
    if (!nodes.is_ground(route[i])) out.push_back(route[i]);
  return out;
}

}  // namespace sagin
