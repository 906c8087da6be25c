#include <gtest/gtest.h>

#include <filesystem>

#include "sagin/sagin.hpp"

using namespace sagin;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  std::getline(is, line);
  return line;
}

Scenario short_scenario() {
  Scenario sc = default_scenario(6);
  sc.time.slot_count = 20;
  return sc;
}

}  // namespace

TEST(Report, CsvHeadersAreFixed) {
  EXPECT_EQ(kSfcCsvHeader, "sfc,data_bits,vnf_count,completed,processing_s,transmission_s,storage_s,redeploy_s,other_s,total_s");
  EXPECT_EQ(kSeriesCsvHeader, "slot,processed_ratio,completed");
  EXPECT_EQ(kFailuresCsvHeader, "slot,failed_nodes,affected_sfcs,rolled_back");
  EXPECT_EQ(kEnergyCsvHeader,
            "node,path_j,communication_j,reception_j,transmission_j,operation_j,compute_j,enforced_j,budget_j");
  EXPECT_EQ(kSweepCsvHeader,
            "axis,value,policy,seed,total_time_s,mean_time_s,max_completion_s,mean_processed_ratio,completed,audit,"
            "trace_digest,error");
  EXPECT_EQ(kOracleCsvHeader, "instance,status,feasible,optimum_s,frmg_s,gap,schedules,witness_audit,reason");
}

TEST(Report, WritesEveryOutputFile) {
  const fs::path dir = fs::temp_directory_path() / "sagin_report_test";
  fs::remove_all(dir);
  const RunReport r = run_scenario(short_scenario());
  write_run_outputs(dir, r);
  EXPECT_EQ(first_line(dir / "sfc.csv"), kSfcCsvHeader);
  EXPECT_EQ(first_line(dir / "series.csv"), kSeriesCsvHeader);
  EXPECT_EQ(first_line(dir / "failures.csv"), kFailuresCsvHeader);
  EXPECT_EQ(first_line(dir / "energy.csv"), kEnergyCsvHeader);
  EXPECT_EQ(first_line(dir / "events.log"), kEventLogHeader);
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(j["sfc_count"], 10);
  EXPECT_EQ(j["audit"], "pass");
  fs::remove_all(dir);
}

TEST(Report, OutputsAreByteIdenticalAcrossRuns) {
  const fs::path a = fs::temp_directory_path() / "sagin_det_a", b = fs::temp_directory_path() / "sagin_det_b";
  write_run_outputs(a, run_scenario(short_scenario()));
  write_run_outputs(b, run_scenario(short_scenario()));
  for (const char* f : {"report.json", "events.log", "sfc.csv", "series.csv", "failures.csv", "energy.csv"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Report, TotalsAggregatePerSfcDelays) {
  const RunReport r = run_scenario(short_scenario());
  double total = 0;
  int done = 0;
  for (const auto& s : r.sfcs) {
    total += s.delay.total;
    done += s.delay.completed;
  }
  EXPECT_DOUBLE_EQ(r.total_time, total);
  EXPECT_EQ(r.completed, done);
  EXPECT_DOUBLE_EQ(r.mean_time, total / 10);
}

TEST(Report, SweepAppliesAxisValues) {
  SweepSpec spec;
  spec.base = short_scenario();
  spec.axis = "uav_count";
  spec.values = {"10", "20"};
  spec.replications = 2;
  spec.policies = {Policy::frmg, Policy::rsnt};
  spec.jobs = 2;
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 8u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_TRUE(r.audit_pass);
  }
  // Common random numbers: the two policies see the same trace per seed.
  EXPECT_EQ(rows[0].trace_digest, rows[2].trace_digest);
  const auto summary = summarize(spec, rows);
  ASSERT_EQ(summary.size(), 4u);
  EXPECT_EQ(summary[0].runs, 2);
}

TEST(Report, AxisParsing) {
  const Scenario base = short_scenario();
  EXPECT_EQ(apply_axis(base, "data_range", "500").generator.data_min_bits, 200e6);
  EXPECT_EQ(apply_axis(base, "data_range", "100:200").generator.data_max_bits, 200e6);
  EXPECT_EQ(apply_axis(base, "vnf_range", "3").generator.vnf_min, 3);
  EXPECT_EQ(apply_axis(base, "lambda", "3.5").failure.lambda, 3.5);
  EXPECT_THROW(apply_axis(base, "colour", "1"), ValidationError);
  EXPECT_THROW(apply_axis(base, "uav_count", "many"), ValidationError);
}

TEST(Report, OracleCsvEndsWithSummary) {
  std::vector<OracleRow> rows(2);
  rows[0] = {"a", true, true, 10, 12, 1.2, 5, true, ""};
  rows[1] = {"b", true, true, 10, 10, 1.0, 5, true, ""};
  std::ostringstream os;
  write_oracle_csv(os, rows);
  EXPECT_NE(os.str().find("summary,instances=2,min_gap=1,median_gap=1.1000000000000001,max_gap=1.2"), std::string::npos);
}
