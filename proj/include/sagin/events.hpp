#pragma once

#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sagin/units.hpp"

namespace sagin {

enum class EventKind {
  fail,           // node: failed node
  arrive,         // node: node reached
  process_start,  // vnf, node, amount: sigma
  process_chunk,  // vnf, node, amount: sigma reserved for this slot
  process_end,    // vnf, node
  tx_start,       // from, to, amount: bits
  tx_chunk,       // from, to, amount: bits moved this slot, rate
  tx_end,         // from, to
  tx_abort,       // from, to, amount: time the aborted transmission began
  store,          // node, amount: bits held from this slot to the next
  span,           // node, amount: duration, tag: bucket of [time, time + amount)
  rollback,       // from: abandoned node, node: restored node, amount: restore time, vnf: restored next VNF
  flag_redeploy,  // vnf, node: host that failed
  redeploy,       // node: node chosen by recovery
  replan,         // node: current node
  propose,        // node
  accept,         // node
  reject,         // node
  evict,          // node
  done,           // node: destination
};

inline constexpr std::array<std::string_view, 20> kEventKindNames = {
    "FAIL",  "ARRIVE", "PROCESS_START", "PROCESS_CHUNK", "PROCESS_END", "TX_START",  "TX_CHUNK",
    "TX_END", "TX_ABORT", "STORE",       "SPAN",          "ROLLBACK",    "FLAG_W",    "REDEPLOY",
    "REPLAN", "PROPOSE", "ACCEPT",       "REJECT",        "EVICT",       "DONE"};

inline std::string_view event_kind_name(EventKind k) { return kEventKindNames[static_cast<int>(k)]; }

enum class Bucket { processing, transmission, storage, redeploy, other, none };

inline constexpr std::array<std::string_view, 6> kBucketNames = {"PROCESSING", "TRANSMISSION", "STORAGE",
                                                                 "REDEPLOY",   "OTHER",        "-"};

struct Event {
  int slot = 0;
  double time = 0;
  EventKind kind = EventKind::fail;
  int sfc = -1;
  int vnf = -1;
  int node = -1;
  int from = -1;
  int to = -1;
  double amount = 0;
  double rate = 0;
  Bucket tag = Bucket::none;
  friend bool operator==(const Event&, const Event&) = default;
};

using EventLog = std::vector<Event>;

inline constexpr std::string_view kEventLogHeader = "# slot time kind sfc vnf node from to amount rate tag";

inline void write_event(std::ostream& os, const Event& e) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d %.17g %s %d %d %d %d %d %.17g %.17g %s\n", e.slot, e.time,
                event_kind_name(e.kind).data(), e.sfc, e.vnf, e.node, e.from, e.to, e.amount, e.rate,
                kBucketNames[static_cast<int>(e.tag)].data());
  os << buf;
}

inline void write_event_log(std::ostream& os, const EventLog& log) {
  os << kEventLogHeader << '\n';
  for (const auto& e : log) write_event(os, e);
}

inline EventLog read_event_log(std::istream& is) {
  EventLog log;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Event e;
    std::string kind, tag;
    if (!(ls >> e.slot >> e.time >> kind >> e.sfc >> e.vnf >> e.node >> e.from >> e.to >> e.amount >> e.rate >> tag))
      throw DomainError("malformed event line: " + line);
    bool found = false;
    for (std::size_t i = 0; i < kEventKindNames.size(); ++i)
      if (kEventKindNames[i] == kind) {
        e.kind = static_cast<EventKind>(i);
        found = true;
      }
    if (!found) throw DomainError("unknown event kind: " + kind);
    found = false;
    for (std::size_t i = 0; i < kBucketNames.size(); ++i)
      if (kBucketNames[i] == tag) {
        e.tag = static_cast<Bucket>(i);
        found = true;
      }
    if (!found) throw DomainError("unknown span tag: " + tag);
    log.push_back(e);
  }
  return log;
}

}  // namespace sagin
