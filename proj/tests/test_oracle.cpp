#include <gtest/gtest.h>

#include <map>
#include <regex>
#include <set>

#include "sagin/sagin.hpp"

using namespace sagin;

namespace {

TinyInstance chain() {
  TinyInstance inst;
  inst.slot_count = 4;
  const NodeResources r{2.0, 1e9, 1e5, 0.2, 50.0, 2.0};
  inst.nodes = {{Layer::ground, {}}, {Layer::ground, {}}, {Layer::uav, r}, {Layer::uav, r}};
  inst.links = {{0, 2, 10e6}, {2, 3, 10e6}, {3, 1, 10e6}};
  inst.sfcs = {{0, 10e6, 0, 1, {1.0, 0.5}}};
  return inst;
}

struct LpModel {
  std::vector<std::string> rows;
  std::set<std::string> used, binaries, bounded;
  std::vector<std::string> errors;
};

// Minimal CPLEX-LP reader: section order, row grammar, and declared variables.
LpModel parse_lp(const std::string& text) {
  LpModel m;
  std::istringstream is(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("\\", 0) == 0) continue;
    if (line.rfind("  ", 0) == 0 && !lines.empty()) lines.back() += " " + line.substr(line.find_first_not_of(' '));
    else lines.push_back(line);
  }
  const std::vector<std::string> order = {"Minimize", "Subject To", "Bounds", "Binaries", "End"};
  std::size_t next = 0;
  std::string section;
  const std::regex term(R"(([+-]) ([0-9.eE+-]+) ([A-Za-z_][A-Za-z0-9_]*))");
  const std::regex row(R"( ([A-Za-z_][A-Za-z0-9_]*):(( [+-] | )[0-9.eE+-]+ [A-Za-z_][A-Za-z0-9_]*)+ (<=|>=|=) -?[0-9.eE+-]+)");
  const std::regex bound(R"( 0 <= ([A-Za-z_][A-Za-z0-9_]*) <= [0-9.eE+-]+)");
  auto collect = [&](const std::string& body) {
    std::string b = body;
    if (!b.empty() && b[0] == ' ' && b[1] != '-' && b[1] != '+') b = " + " + b.substr(1);
    for (std::sregex_iterator it(b.begin(), b.end(), term), end; it != end; ++it) m.used.insert((*it)[3]);
  };
  for (const auto& l : lines) {
    if (next < order.size() && l == order[next]) {
      section = order[next++];
      continue;
    }
    if (section == "Minimize") {
      if (l.rfind(" obj:", 0) != 0) m.errors.push_back("objective: " + l);
      collect(l.substr(5));
    } else if (section == "Subject To") {
      if (!std::regex_match(l, row)) m.errors.push_back("row: " + l.substr(0, 80));
      m.rows.push_back(l.substr(1, l.find(':') - 1));
      collect(l.substr(l.find(':') + 1));
    } else if (section == "Bounds") {
      std::smatch sm;
      if (!std::regex_match(l, sm, bound)) m.errors.push_back("bound: " + l);
      else m.bounded.insert(sm[1]);
    } else if (section == "Binaries") {
      std::istringstream ws(l);
      std::string v;
      while (ws >> v)
        if (!m.binaries.insert(v).second) m.errors.push_back("duplicate binary " + v);
    } else if (section != "End") {
      m.errors.push_back("text outside a section: " + l);
    }
  }
  if (next != order.size()) m.errors.push_back("missing sections");
  for (const auto& v : m.used)
    if (!m.binaries.count(v) && !m.bounded.count(v)) m.errors.push_back("undeclared variable " + v);
  return m;
}

}  // namespace

TEST(Oracle, TinyJsonRoundTrips) {
  const TinyInstance inst = random_tiny_instance(4);
  EXPECT_EQ(load_tiny(to_json(inst).dump()), inst);
}

TEST(Oracle, RandomInstancesAreValidAndSeeded) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    EXPECT_NO_THROW(validate(random_tiny_instance(s)));
    EXPECT_EQ(random_tiny_instance(s), random_tiny_instance(s));
  }
}

TEST(Oracle, OversizedInstancesAreRejected) {
  TinyInstance inst = chain();
  inst.slot_count = 5;
  EXPECT_THROW(validate(inst), ValidationError);
  inst = chain();
  inst.sfcs[0].destination = 2;
  EXPECT_THROW(validate(inst), ValidationError);
}

TEST(Oracle, ChainOptimumEqualsHeuristic) {
  // A single path with one placement choice per VNF split: the heuristic's
  // 10.5 s is optimal.
  const OracleResult o = enumerate_optimal(chain());
  EXPECT_TRUE(o.feasible);
  EXPECT_DOUBLE_EQ(o.optimum, 10.5);
  EXPECT_DOUBLE_EQ(heuristic_total(chain()), 10.5);
  EXPECT_GT(o.schedules, 1);
}

TEST(Oracle, OptimumNeverExceedsAnyPolicy) {
  for (std::uint64_t s = 1; s <= 8; ++s) {
    const TinyInstance inst = random_tiny_instance(s);
    if (enumeration_bound(inst) > 2e4) continue;
    const OracleResult o = enumerate_optimal(inst);
    for (Policy p : {Policy::frmg, Policy::flts, Policy::rssp, Policy::rsnt})
      EXPECT_LE(o.optimum, heuristic_total(inst, p) + 1e-9) << "seed " << s;
    EXPECT_TRUE(audit_run(to_sim_input(inst), o.witness_run.state.log).pass());
  }
}

TEST(Oracle, EnumerationBoundRefusesLargeSearches) {
  TinyInstance inst = random_tiny_instance(2);
  inst.nodes.resize(2);
  inst.nodes.push_back({Layer::uav, {2, 1e9, 1e5, 0.2, 50, 2}});
  inst.nodes.push_back({Layer::uav, {2, 1e9, 1e5, 0.2, 50, 2}});
  inst.nodes.push_back({Layer::uav, {2, 1e9, 1e5, 0.2, 50, 2}});
  inst.links.clear();
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      if (a != b && !(a < 2 && b < 2)) inst.links.push_back({a, b, 1e7});
  inst.sfcs = {{0, 1e7, 0, 1, {1, 1}}, {1, 1e7, 0, 1, {1, 1}}};
  inst.failures = {{0, 2}, {1, 2}, {2, 2}, {3, 2}};
  EXPECT_GT(enumeration_bound(inst), kEnumerationLimit);
  EXPECT_THROW(enumerate_optimal(inst), EnumerationRefused);
}

TEST(Oracle, LpExportIsWellFormed) {
  for (std::uint64_t s : {1, 2, 3, 5, 8}) {
    const LpModel m = parse_lp(export_ilp(random_tiny_instance(s)));
    EXPECT_TRUE(m.errors.empty()) << (m.errors.empty() ? "" : m.errors.front());
    EXPECT_FALSE(m.rows.empty());
  }
}

TEST(Oracle, LpVariableCountsMatchHandCount) {
  // 1 SFC, 2 VNFs, 4 nodes, 4 slots, 3 links per slot:
  // x = 2*4*4, y = 3*4, z = 4*3, w = 2, a = 4, s = 2.
  IlpCounts c;
  const std::string lp = export_ilp(chain(), &c);
  EXPECT_EQ(c.placement, 32);
  EXPECT_EQ(c.link_use, 12);
  EXPECT_EQ(c.storage, 12);
  EXPECT_EQ(c.redeploy, 2);
  EXPECT_EQ(c.arrival, 4);
  EXPECT_EQ(c.start, 2);
  const LpModel m = parse_lp(lp);
  EXPECT_EQ(static_cast<long>(m.binaries.size() + m.bounded.size()), c.total());
}

TEST(Oracle, FailedNodesLoseLinkVariables) {
  TinyInstance inst = chain();
  inst.failures = {{2, 3}};
  IlpCounts c;
  export_ilp(inst, &c);
  EXPECT_EQ(c.link_use, 12 - 2);
}
