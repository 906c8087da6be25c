// Batch front end: single runs, parameter sweeps, oracle comparisons and LP export.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sagin/sagin.hpp"

namespace fs = std::filesystem;
using namespace sagin;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path default_out(const std::string& flag, const char* leaf) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SAGIN_OUT_DIR")) return fs::path(env) / leaf;
  return fs::path("out") / leaf;
}

Scenario scenario_arg(const std::string& path, std::optional<std::uint64_t> seed, const std::string& policy) {
  Scenario sc = path.empty() ? default_scenario() : load_scenario(read_file(path));
  if (seed) sc = with_seed(sc, *seed);
  if (!policy.empty()) sc.policy = parse_policy(policy);
  return sc;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SFC deployment and failure recovery simulator"};
  app.require_subcommand(1);

  std::string scenario, out, policy;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "simulate one scenario and write its report files");
  run->add_option("--scenario", scenario, "scenario JSON file (default scenario when omitted)");
  run->add_option("--out", out, "output directory");
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--policy", policy, "FRMG, FLTS, RSSP or RSNT");

  std::string axis, values, policies = "FRMG";
  int reps = 100, jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "vary one axis over seeds and policies");
  sweep->add_option("--scenario", scenario, "base scenario JSON file");
  sweep->add_option("--out", out, "output directory");
  sweep->add_option("--seed", seed, "first replication seed");
  sweep->add_option("--axis", axis, "uav_count, sfc_count, lambda, data_range, vnf_range or failure_interval")->required();
  sweep->add_option("--values", values, "comma-separated axis values")->required();
  sweep->add_option("--reps", reps, "replications per cell");
  sweep->add_option("--policy", policies, "comma-separated policies");
  sweep->add_option("--jobs", jobs, "worker threads");

  std::string dir;
  int generate = 0;
  auto* oracle = app.add_subcommand("oracle-compare", "exhaustive optimum versus FRMG on tiny instances");
  oracle->add_option("dir", dir, "directory of tiny-instance JSON files")->required();
  oracle->add_option("--out", out, "output directory");
  oracle->add_option("--generate", generate, "first write this many random instances into dir");
  oracle->add_option("--seed", seed, "first generator seed");

  std::string out_file;
  auto* ilp = app.add_subcommand("export-ilp", "write a tiny instance as an LP-format model");
  ilp->add_option("--scenario", scenario, "tiny-instance JSON file")->required();
  ilp->add_option("--out", out_file, "LP file to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const Scenario sc = scenario_arg(scenario, seed, policy);
      const fs::path dest = default_out(out, "run");
      const RunReport rep = run_scenario(sc);
      write_run_outputs(dest, rep);
      std::cout << "total " << fmt(rep.total_time) << " s, completed " << rep.completed << "/" << rep.sfcs.size()
                << ", audit " << (rep.audit.pass() ? "pass" : "fail") << " -> " << dest.string() << '\n';
      return rep.audit.pass() ? 0 : 3;
    }
    if (*sweep) {
      SweepSpec spec;
      spec.base = scenario_arg(scenario, seed, "");
      spec.axis = axis;
      spec.values = split(values);
      spec.replications = reps;
      spec.jobs = jobs;
      spec.policies.clear();
      for (const auto& p : split(policies)) spec.policies.push_back(parse_policy(p));
      if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) == sweep_axes().end())
        throw ValidationError("unknown sweep axis '" + axis + "'");
      if (spec.values.empty()) throw ValidationError("--values is empty");
      const auto rows = run_sweep(spec);
      const fs::path dest = default_out(out, "sweep");
      fs::create_directories(dest);
      std::ofstream long_csv(dest / ("sweep_" + axis + ".csv"), std::ios::binary);
      write_sweep_csv(long_csv, axis, rows);
      std::ofstream summary_csv(dest / ("summary_" + axis + ".csv"), std::ios::binary);
      write_summary_csv(summary_csv, axis, summarize(spec, rows));
      std::cout << rows.size() << " runs -> " << dest.string() << '\n';
      return 0;
    }
    if (*oracle) {
      fs::create_directories(dir);
      const std::uint64_t first = seed.value_or(1);
      for (int i = 0; i < generate; ++i) {
        std::ofstream os(fs::path(dir) / ("tiny_" + std::to_string(first + i) + ".json"), std::ios::binary);
        os << to_json(random_tiny_instance(first + i)).dump(2) << '\n';
      }
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      std::vector<OracleRow> rows;
      for (const auto& f : files) {
        try {
          rows.push_back(compare_with_oracle(f.filename().string(), load_tiny(read_file(f))));
        } catch (const std::exception& e) {
          OracleRow r;
          r.instance = f.filename().string();
          r.reason = e.what();
          rows.push_back(r);
        }
      }
      const fs::path dest = default_out(out, "oracle");
      fs::create_directories(dest);
      std::ofstream os(dest / "oracle_gap.csv", std::ios::binary);
      write_oracle_csv(os, rows);
      std::cout << rows.size() << " instances -> " << (dest / "oracle_gap.csv").string() << '\n';
      return 0;
    }
    if (*ilp) {
      const TinyInstance inst = load_tiny(read_file(scenario));
      const double estimate = enumeration_bound(inst);
      if (estimate > kEnumerationLimit) throw EnumerationRefused(estimate);
      const std::string text = export_ilp(inst);
      if (fs::path(out_file).has_parent_path()) fs::create_directories(fs::path(out_file).parent_path());
      std::ofstream os(out_file, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write " + out_file);
      os << text;
      return 0;
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const EnumerationRefused& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
