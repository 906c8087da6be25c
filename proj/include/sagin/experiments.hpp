#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sagin/oracle.hpp"
#include "sagin/report.hpp"

namespace sagin {

inline const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {"uav_count", "sfc_count",  "lambda",
                                                "data_range", "vnf_range", "failure_interval"};
  return axes;
}

namespace detail {

inline std::pair<double, double> parse_range(const std::string& v) {
  const auto colon = v.find(':');
  if (colon == std::string::npos) {
    const double x = std::stod(v);
    return {x, x};
  }
  return {std::stod(v.substr(0, colon)), std::stod(v.substr(colon + 1))};
}

}  // namespace detail

// Applies one sweep value to a copy of the base scenario. data_range takes
// "lo:hi" in Mbit, or a single midpoint m meaning [m - 300, m + 300] Mbit
// like the default 200-800 range; vnf_range takes "lo:hi" or one count.
inline Scenario apply_axis(Scenario sc, const std::string& axis, const std::string& value) {
  try {
    if (axis == "uav_count") {
      sc.geometry.uav_count = std::stoi(value);
      sc.geometry.uav_initial_positions.reset();
    } else if (axis == "sfc_count") {
      sc.generator.count = std::stoi(value);
      sc.sfcs_explicit = false;
    } else if (axis == "lambda") {
      sc.failure.lambda = std::stod(value);
    } else if (axis == "data_range") {
      auto [lo, hi] = detail::parse_range(value);
      if (lo == hi) {
        lo -= 300;
        hi += 300;
      }
      sc.generator.data_min_bits = lo * 1e6;
      sc.generator.data_max_bits = hi * 1e6;
      sc.sfcs_explicit = false;
    } else if (axis == "vnf_range") {
      const auto [lo, hi] = detail::parse_range(value);
      sc.generator.vnf_min = static_cast<int>(lo);
      sc.generator.vnf_max = static_cast<int>(hi);
      sc.sfcs_explicit = false;
    } else if (axis == "failure_interval") {
      sc.failure.update_interval_slots = std::stoi(value);
    } else {
      throw ValidationError("unknown sweep axis '" + axis + "'");
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError("bad value '" + value + "' for axis " + axis);
  }
  regenerate_sfcs(sc);
  validate(sc);
  return sc;
}

struct SweepRow {
  std::string axis_value;
  Policy policy = Policy::frmg;
  std::uint64_t seed = 0;
  double total_time = 0;
  double mean_time = 0;
  double max_completion = 0;
  double mean_processed_ratio = 0;
  int completed = 0;
  bool audit_pass = false;
  std::string trace_digest;
  std::string error;
};

struct SweepSpec {
  Scenario base;
  std::string axis;
  std::vector<std::string> values;
  int replications = 100;
  std::vector<Policy> policies{Policy::frmg};
  int jobs = 1;
};

// Replication r uses seed base.seed + r for every value and policy, so all
// policies in a cell share mobility, failures and SFCs (common random numbers).
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  struct Job {
    std::size_t value;
    std::size_t policy;
    int rep;
  };
  std::vector<Job> jobs;
  for (std::size_t v = 0; v < spec.values.size(); ++v)
    for (std::size_t p = 0; p < spec.policies.size(); ++p)
      for (int r = 0; r < spec.replications; ++r) jobs.push_back({v, p, r});
  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      SweepRow& row = rows[i];
      row.axis_value = spec.values[j.value];
      row.policy = spec.policies[j.policy];
      row.seed = spec.base.seed + static_cast<std::uint64_t>(j.rep);
      try {
        Scenario sc = with_seed(spec.base, row.seed);
        sc = apply_axis(sc, spec.axis, row.axis_value);
        sc.policy = row.policy;
        const RunReport rep = run_scenario(sc);
        row.total_time = rep.total_time;
        row.mean_time = rep.mean_time;
        row.max_completion = rep.max_completion;
        row.mean_processed_ratio = rep.mean_processed_ratio;
        row.completed = rep.completed;
        row.audit_pass = rep.audit.pass();
        row.trace_digest = rep.trace_digest;
      } catch (const std::exception& e) {
        row.audit_pass = false;
        row.error = e.what();
      }
    }
  };
  const int n = std::max(1, spec.jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

struct SummaryRow {
  std::string axis_value;
  Policy policy;
  int runs = 0;
  int failed_audits = 0;
  double total_mean = 0, total_sd = 0;
  double mean_time_mean = 0, mean_time_sd = 0;
  double max_completion_mean = 0, max_completion_sd = 0;
  double processed_ratio_mean = 0;
  double completed_mean = 0;
};

inline std::vector<SummaryRow> summarize(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::vector<SummaryRow> out;
  auto mean_sd = [](const std::vector<double>& xs) {
    if (xs.empty()) return std::make_pair(0.0, 0.0);
    double m = 0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double v = 0;
    for (double x : xs) v += (x - m) * (x - m);
    return std::make_pair(m, xs.size() > 1 ? std::sqrt(v / static_cast<double>(xs.size() - 1)) : 0.0);
  };
  for (const auto& value : spec.values)
    for (Policy p : spec.policies) {
      SummaryRow s{value, p};
      std::vector<double> tot, mean, maxc, ratio, done;
      for (const auto& r : rows) {
        if (r.axis_value != value || r.policy != p) continue;
        ++s.runs;
        if (!r.audit_pass) ++s.failed_audits;
        if (!r.error.empty()) continue;
        tot.push_back(r.total_time);
        mean.push_back(r.mean_time);
        maxc.push_back(r.max_completion);
        ratio.push_back(r.mean_processed_ratio);
        done.push_back(r.completed);
      }
      std::tie(s.total_mean, s.total_sd) = mean_sd(tot);
      std::tie(s.mean_time_mean, s.mean_time_sd) = mean_sd(mean);
      std::tie(s.max_completion_mean, s.max_completion_sd) = mean_sd(maxc);
      s.processed_ratio_mean = mean_sd(ratio).first;
      s.completed_mean = mean_sd(done).first;
      out.push_back(s);
    }
  return out;
}

inline constexpr std::string_view kSweepCsvHeader =
    "axis,value,policy,seed,total_time_s,mean_time_s,max_completion_s,mean_processed_ratio,completed,audit,"
    "trace_digest,error";
inline constexpr std::string_view kSummaryCsvHeader =
    "axis,value,policy,runs,failed_audits,total_time_mean,total_time_sd,mean_time_mean,mean_time_sd,"
    "max_completion_mean,max_completion_sd,processed_ratio_mean,completed_mean";

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline void write_sweep_csv(std::ostream& os, const std::string& axis, const std::vector<SweepRow>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows)
    os << axis << ',' << csv_field(r.axis_value) << ',' << policy_name(r.policy) << ',' << r.seed << ','
       << fmt(r.total_time) << ',' << fmt(r.mean_time) << ',' << fmt(r.max_completion) << ','
       << fmt(r.mean_processed_ratio) << ',' << r.completed << ',' << (r.audit_pass ? "pass" : "fail") << ','
       << r.trace_digest << ',' << csv_field(r.error) << '\n';
}

inline void write_summary_csv(std::ostream& os, const std::string& axis, const std::vector<SummaryRow>& rows) {
  os << kSummaryCsvHeader << '\n';
  for (const auto& s : rows)
    os << axis << ',' << csv_field(s.axis_value) << ',' << policy_name(s.policy) << ',' << s.runs << ','
       << s.failed_audits << ',' << fmt(s.total_mean) << ',' << fmt(s.total_sd) << ',' << fmt(s.mean_time_mean) << ','
       << fmt(s.mean_time_sd) << ',' << fmt(s.max_completion_mean) << ',' << fmt(s.max_completion_sd) << ','
       << fmt(s.processed_ratio_mean) << ',' << fmt(s.completed_mean) << '\n';
}

struct OracleRow {
  std::string instance;
  bool enumerated = false;
  bool feasible = false;
  double optimum = 0;
  double heuristic = 0;
  double gap = 0;
  long schedules = 0;
  bool witness_audit = false;
  std::string reason;
};

inline OracleRow compare_with_oracle(const std::string& name, const TinyInstance& inst) {
  OracleRow row;
  row.instance = name;
  try {
    const OracleResult o = enumerate_optimal(inst);
    row.enumerated = true;
    row.feasible = o.feasible;
    row.optimum = o.optimum;
    row.schedules = o.schedules;
    row.heuristic = heuristic_total(inst);
    row.gap = row.heuristic / row.optimum;
    row.witness_audit = audit_run(to_sim_input(inst), o.witness_run.state.log).pass();
    if (!o.feasible) row.reason = "no schedule completes every SFC";
  } catch (const EnumerationRefused& e) {
    row.reason = e.what();
  }
  return row;
}

inline double median_of(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

inline constexpr std::string_view kOracleCsvHeader =
    "instance,status,feasible,optimum_s,frmg_s,gap,schedules,witness_audit,reason";

inline void write_oracle_csv(std::ostream& os, const std::vector<OracleRow>& rows) {
  os << kOracleCsvHeader << '\n';
  std::vector<double> gaps;
  for (const auto& r : rows) {
    os << csv_field(r.instance) << ',' << (r.enumerated ? "ok" : "skipped") << ',' << (r.feasible ? 1 : 0) << ','
       << fmt(r.optimum) << ',' << fmt(r.heuristic) << ',' << fmt(r.gap) << ',' << r.schedules << ','
       << (r.witness_audit ? "pass" : "fail") << ',' << csv_field(r.reason) << '\n';
    if (r.enumerated) gaps.push_back(r.gap);
  }
  const double median = median_of(gaps);
  const double min = gaps.empty() ? 0 : *std::min_element(gaps.begin(), gaps.end());
  const double max = gaps.empty() ? 0 : *std::max_element(gaps.begin(), gaps.end());
  os << "summary,instances=" << gaps.size() << ",min_gap=" << fmt(min) << ",median_gap=" << fmt(median)
     << ",max_gap=" << fmt(max) << ",,,,\n";
}

}  // namespace sagin
