#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sagin/audit.hpp"
#include "sagin/engine.hpp"

namespace sagin {

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Digest of everything the policies cannot influence: node positions and the
// failure schedule. Equal digests mean two runs saw the same random trace.
inline std::string trace_digest(const SimInput& in) {
  std::string text;
  for (const auto& slot : in.positions)
    for (const auto& p : slot) text += fmt(p.x) + ',' + fmt(p.y) + ',' + fmt(p.z) + ';';
  for (const auto& slot : in.failed_by_slot) {
    for (char f : slot) text += f ? '1' : '0';
    text += '|';
  }
  return hex64(fnv1a(text));
}

struct SfcReport {
  int id;
  double data_bits;
  int vnf_count;
  DelayBreakdown delay;
};

struct RunReport {
  std::string scenario_digest;
  std::string trace_digest;
  Policy policy = Policy::frmg;
  std::uint64_t seed = 0;
  std::vector<SfcReport> sfcs;
  double total_time = 0;      // sum over SFCs, incomplete ones count the horizon
  double mean_time = 0;
  double max_completion = 0;  // latest end measured from the first transmission
  int completed = 0;
  double mean_processed_ratio = 0;
  AuditReport audit;
  SimResult result;

  bool valid() const { return audit.pass(); }
};

inline RunReport make_report(const SimInput& in, SimResult result, std::string scenario_digest = {}) {
  RunReport r;
  r.scenario_digest = std::move(scenario_digest);
  r.trace_digest = trace_digest(in);
  r.policy = in.policy;
  r.seed = in.seed;
  const double start = result.first_tx_time < 0 ? 0.0 : result.first_tx_time;
  for (const auto& s : result.state.sfcs) {
    SfcReport sr{s.id, s.data_bits, s.vnf_count(), delay_breakdown(result.state.log, s.id, result.horizon_s)};
    r.total_time += sr.delay.total;
    r.completed += sr.delay.completed ? 1 : 0;
    r.max_completion = std::max(r.max_completion, sr.delay.total - start);
    r.sfcs.push_back(sr);
  }
  if (!r.sfcs.empty()) r.mean_time = r.total_time / static_cast<double>(r.sfcs.size());
  double ratio = 0;
  for (double v : result.processed_ratio) ratio += v;
  if (!result.processed_ratio.empty()) r.mean_processed_ratio = ratio / static_cast<double>(result.processed_ratio.size());
  r.audit = audit_run(in, result.state.log);
  r.result = std::move(result);
  return r;
}

inline RunReport run_scenario(const Scenario& sc) {
  const SimInput in = make_sim_input(sc);
  return make_report(in, run_simulation(in), hex64(fnv1a(serialize(sc))));
}

inline nlohmann::ordered_json report_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["scenario_digest"] = r.scenario_digest;
  j["trace_digest"] = r.trace_digest;
  j["policy"] = std::string(policy_name(r.policy));
  j["seed"] = r.seed;
  j["audit"] = r.audit.pass() ? "pass" : "fail";
  j["violations"] = r.audit.violations;
  j["total_time_s"] = r.total_time;
  j["mean_time_s"] = r.mean_time;
  j["max_completion_s"] = r.max_completion;
  j["completed"] = r.completed;
  j["sfc_count"] = r.sfcs.size();
  j["mean_processed_ratio"] = r.mean_processed_ratio;
  j["slots_run"] = r.result.slots_run;
  j["failure_updates"] = r.result.failures.size();
  return j;
}

inline constexpr std::string_view kSfcCsvHeader =
    "sfc,data_bits,vnf_count,completed,processing_s,transmission_s,storage_s,redeploy_s,other_s,total_s";
inline constexpr std::string_view kSeriesCsvHeader = "slot,processed_ratio,completed";
inline constexpr std::string_view kFailuresCsvHeader = "slot,failed_nodes,affected_sfcs,rolled_back";
inline constexpr std::string_view kEnergyCsvHeader =
    "node,path_j,communication_j,reception_j,transmission_j,operation_j,compute_j,enforced_j,budget_j";

inline void write_sfc_csv(std::ostream& os, const RunReport& r) {
  os << kSfcCsvHeader << '\n';
  for (const auto& s : r.sfcs)
    os << s.id << ',' << fmt(s.data_bits) << ',' << s.vnf_count << ',' << (s.delay.completed ? 1 : 0) << ','
       << fmt(s.delay.processing) << ',' << fmt(s.delay.transmission) << ',' << fmt(s.delay.storage) << ','
       << fmt(s.delay.redeploy) << ',' << fmt(s.delay.other) << ',' << fmt(s.delay.total) << '\n';
}

inline void write_series_csv(std::ostream& os, const RunReport& r) {
  os << kSeriesCsvHeader << '\n';
  for (std::size_t t = 0; t < r.result.processed_ratio.size(); ++t)
    os << t << ',' << fmt(r.result.processed_ratio[t]) << ',' << r.result.completed[t] << '\n';
}

inline void write_failures_csv(std::ostream& os, const RunReport& r) {
  const auto& cat = r.result.state.nodes;
  os << kFailuresCsvHeader << '\n';
  for (const auto& f : r.result.failures) {
    os << f.slot << ',';
    for (std::size_t i = 0; i < f.failed.size(); ++i) os << (i ? ";" : "") << cat.label(f.failed[i]);
    os << ',';
    for (std::size_t i = 0; i < f.affected.size(); ++i) os << (i ? ";" : "") << f.affected[i];
    os << ',';
    bool first = true;
    for (const auto& [sfc, node] : f.rolled_back_to) {
      os << (first ? "" : ";") << sfc << ':' << cat.label(node);
      first = false;
    }
    os << '\n';
  }
}

inline void write_energy_csv(std::ostream& os, const RunReport& r) {
  const auto& e = r.result.energy;
  const auto& cat = r.result.state.nodes;
  os << kEnergyCsvHeader << '\n';
  for (int n = 0; n < e.node_count(); ++n) {
    if (cat.is_ground(n)) continue;
    os << cat.label(n);
    for (int c = 0; c < kEnergyCategoryCount; ++c) os << ',' << fmt(e.amount(n, static_cast<EnergyCategory>(c)));
    os << ',' << fmt(e.enforced_total(n)) << ',' << fmt(e.budget(n)) << '\n';
  }
}

// Writes report.json, events.log, sfc.csv, series.csv, failures.csv and
// energy.csv into `dir`.
inline void write_run_outputs(const std::filesystem::path& dir, const RunReport& r) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    return os;
  };
  {
    auto os = open("report.json");
    os << report_json(r).dump(2) << '\n';
  }
  {
    auto os = open("events.log");
    write_event_log(os, r.result.state.log);
  }
  {
    auto os = open("sfc.csv");
    write_sfc_csv(os, r);
  }
  {
    auto os = open("series.csv");
    write_series_csv(os, r);
  }
  {
    auto os = open("failures.csv");
    write_failures_csv(os, r);
  }
  {
    auto os = open("energy.csv");
    write_energy_csv(os, r);
  }
}

}  // namespace sagin
