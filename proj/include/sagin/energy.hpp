#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "sagin/channel.hpp"
#include "sagin/scenario.hpp"

namespace sagin {

enum class EnergyCategory { path, communication, reception, transmission, operation, compute };
inline constexpr int kEnergyCategoryCount = 6;

inline std::string_view energy_category_name(EnergyCategory c) {
  static constexpr std::array<std::string_view, kEnergyCategoryCount> names = {
      "path", "communication", "reception", "transmission", "operation", "compute"};
  return names[static_cast<int>(c)];
}

inline double hover_power(const ParameterSet& p) {
  const double gm = p.gravity * p.uav_mass_kg;
  return std::sqrt(gm * gm * gm /
                   (2.0 * std::numbers::pi * p.air_density * p.rotor_radius_m * p.rotor_radius_m * p.rotor_count));
}

// Note: with the default P_max = 5 W below the ~78 W hover power this is
// negative; path energy over a slot still stays >= P_max * tau.
inline double move_power(const ParameterSet& p, double speed) {
  if (speed < 0 || speed > p.uav_max_speed_mps) throw DomainError("speed outside [0, s_max]");
  return speed / p.uav_max_speed_mps * (p.uav_max_power_w - hover_power(p));
}

// One SFC's use of a link during a slot.
struct Transfer {
  LinkKind kind;
  double bits;
  double rate_bps;
};

inline double transmit_power(const ParameterSet& p, LinkKind kind) {
  switch (kind) {
    case LinkKind::g2u: return p.ground_tx_power_w;
    case LinkKind::u2g: return p.uav_tx_power_w;
    case LinkKind::u2u: return p.uu_tx_power_w;
    case LinkKind::u2s: return p.us_tx_power_w;
    case LinkKind::s2s: return p.ss_tx_power_w;
    case LinkKind::s2g: return p.sg_tx_power_w;
    case LinkKind::storage: break;
  }
  return 0.0;
}

inline double receive_power(const ParameterSet& p, LinkKind kind) {
  if (kind == LinkKind::u2s) return p.us_rx_power_w;
  if (kind == LinkKind::s2s) return p.ss_rx_power_w;
  return 0.0;
}

inline double transfer_seconds(const Transfer& t) {
  if (!(t.rate_bps > 0)) throw DomainError("transfer over a zero-rate link");
  return t.bits / t.rate_bps;
}

struct UavSlotEnergy {
  double path = 0;
  double communication = 0;
  double total() const { return path + communication; }
};

inline UavSlotEnergy uav_slot_energy(const ParameterSet& p, Vec3 prev_pos, Vec3 next_pos, double tau,
                                     std::span<const Transfer> outgoing) {
  UavSlotEnergy e;
  const double moved = distance(prev_pos, next_pos);
  const double speed = p.uav_speed_mps;
  const double travel = moved > 0 ? move_power(p, speed) * moved / speed : 0.0;
  e.path = travel + hover_power(p) * tau;
  for (const auto& t : outgoing) e.communication += transmit_power(p, t.kind) * transfer_seconds(t);
  return e;
}

struct SatelliteSlotEnergy {
  double reception = 0;
  double transmission = 0;
  double operation = 0;
  double total() const { return reception + transmission + operation; }
};

inline SatelliteSlotEnergy satellite_slot_energy(const ParameterSet& p, std::span<const Transfer> received,
                                                 std::span<const Transfer> sent, double tau) {
  SatelliteSlotEnergy e;
  for (const auto& t : received) e.reception += receive_power(p, t.kind) * transfer_seconds(t);
  for (const auto& t : sent) e.transmission += transmit_power(p, t.kind) * transfer_seconds(t);
  e.operation = p.sat_operation_power_w * tau;
  return e;
}

// Per-node energy accounts. Only compute and operation debits count against
// the node budget E^M; the remaining categories are reported.
class EnergyLedger {
 public:
  struct Debit {
    int node;
    EnergyCategory category;
    double joules;
    friend bool operator==(const Debit&, const Debit&) = default;
  };

  EnergyLedger() = default;
  EnergyLedger(int node_count, double budget_j, double compute_j_per_unit)
      : totals_(node_count), budget_(node_count, budget_j), compute_j_per_unit_(compute_j_per_unit) {}

  int node_count() const { return static_cast<int>(totals_.size()); }
  double budget(int node) const { return budget_[node]; }
  void set_budget(int node, double joules) { budget_[node] = joules; }

  double amount(int node, EnergyCategory c) const { return totals_[node][static_cast<int>(c)]; }

  double enforced_total(int node) const {
    return amount(node, EnergyCategory::compute) + amount(node, EnergyCategory::operation);
  }

  double total(int node) const {
    double s = 0;
    for (double v : totals_[node]) s += v;
    return s;
  }

  // Reporting-only categories.
  void record(int node, EnergyCategory c, double joules) {
    if (joules == 0) return;
    totals_[node][static_cast<int>(c)] += joules;
    debits_.push_back({node, c, joules});
  }

  bool can_afford(int node, double joules) const { return enforced_total(node) + joules <= budget_[node]; }

  // Debits sigma * e^c plus any pending operation energy if the node stays
  // within budget; otherwise leaves the ledger untouched.
  bool charge_compute(int node, double sigma_units, double operation_j = 0.0) {
    const double compute = sigma_units * compute_j_per_unit_;
    if (!can_afford(node, compute + operation_j)) return false;
    record(node, EnergyCategory::compute, compute);
    record(node, EnergyCategory::operation, operation_j);
    return true;
  }

  bool charge_operation(int node, double joules) {
    if (!can_afford(node, joules)) return false;
    record(node, EnergyCategory::operation, joules);
    return true;
  }

  const std::vector<Debit>& debits() const { return debits_; }

  friend bool operator==(const EnergyLedger&, const EnergyLedger&) = default;

 private:
  std::vector<std::array<double, kEnergyCategoryCount>> totals_;
  std::vector<double> budget_;
  double compute_j_per_unit_ = 0;
  std::vector<Debit> debits_;
};

}  // namespace sagin
