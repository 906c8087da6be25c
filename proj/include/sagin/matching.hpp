#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "sagin/scenario.hpp"

namespace sagin {

// Many-to-one matching between proposers (SFCs) and receivers (nodes), both
// addressed by dense indices.
struct MatchingProblem {
  // proposer -> receivers, best first
  std::vector<std::vector<int>> proposer_prefs;
  // receiver -> proposers, best first; proposers absent from a list are
  // unacceptable to that receiver
  std::vector<std::vector<int>> receiver_ranking;
  std::vector<int> capacity;

  int proposer_count() const { return static_cast<int>(proposer_prefs.size()); }
  int receiver_count() const { return static_cast<int>(capacity.size()); }
};

struct MatchingStep {
  enum Kind { propose, accept, reject, evict } kind;
  int proposer;
  int receiver;
};

struct Matching {
  std::vector<int> receiver_of;               // -1 when unmatched
  std::vector<std::vector<int>> matched;      // per receiver
  int proposals = 0;
  std::vector<MatchingStep> trace;
};

namespace detail {

inline std::vector<std::vector<int>> rank_tables(const MatchingProblem& pb) {
  std::vector<std::vector<int>> rank(pb.receiver_count(),
                                     std::vector<int>(pb.proposer_count(), std::numeric_limits<int>::max()));
  for (int r = 0; r < pb.receiver_count(); ++r)
    for (int i = 0; i < static_cast<int>(pb.receiver_ranking[r].size()); ++i) rank[r][pb.receiver_ranking[r][i]] = i;
  return rank;
}

}  // namespace detail

// Proposer-side deferred acceptance. The lowest-index unmatched proposer
// moves first; a full receiver swaps out its worst match only for a strictly
// better proposer, and the evicted proposer never proposes there again.
inline Matching match_deferred_acceptance(const MatchingProblem& pb) {
  const int np = pb.proposer_count();
  const auto rank = detail::rank_tables(pb);
  Matching m;
  m.receiver_of.assign(np, -1);
  m.matched.assign(pb.receiver_count(), {});
  std::vector<std::size_t> next_choice(np, 0);
  std::set<int> free;
  for (int p = 0; p < np; ++p) free.insert(p);

  while (!free.empty()) {
    const int p = *free.begin();
    if (next_choice[p] >= pb.proposer_prefs[p].size()) {
      free.erase(free.begin());
      continue;
    }
    const int r = pb.proposer_prefs[p][next_choice[p]++];
    ++m.proposals;
    m.trace.push_back({MatchingStep::propose, p, r});
    const bool acceptable = rank[r][p] != std::numeric_limits<int>::max();
    if (!acceptable || pb.capacity[r] <= 0) {
      m.trace.push_back({MatchingStep::reject, p, r});
      continue;
    }
    auto& held = m.matched[r];
    if (static_cast<int>(held.size()) < pb.capacity[r]) {
      held.push_back(p);
      m.receiver_of[p] = r;
      free.erase(free.begin());
      m.trace.push_back({MatchingStep::accept, p, r});
      continue;
    }
    auto worst = std::max_element(held.begin(), held.end(), [&](int a, int b) { return rank[r][a] < rank[r][b]; });
    if (rank[r][p] < rank[r][*worst]) {
      const int out = *worst;
      *worst = p;
      m.receiver_of[p] = r;
      m.receiver_of[out] = -1;
      free.erase(free.begin());
      free.insert(out);
      m.trace.push_back({MatchingStep::evict, out, r});
      m.trace.push_back({MatchingStep::accept, p, r});
    } else {
      m.trace.push_back({MatchingStep::reject, p, r});
    }
  }
  for (auto& held : m.matched) std::sort(held.begin(), held.end());
  return m;
}

struct StabilityVerdict {
  bool stable = true;
  std::optional<std::pair<int, int>> blocking_pair;  // (proposer, receiver)
};

inline StabilityVerdict is_stable(const MatchingProblem& pb, const std::vector<int>& receiver_of) {
  const auto rank = detail::rank_tables(pb);
  std::vector<std::vector<int>> held(pb.receiver_count());
  for (int p = 0; p < pb.proposer_count(); ++p)
    if (receiver_of[p] >= 0) held[receiver_of[p]].push_back(p);
  for (int p = 0; p < pb.proposer_count(); ++p) {
    for (int r : pb.proposer_prefs[p]) {
      if (r == receiver_of[p]) break;  // everything further down is worse
      if (rank[r][p] == std::numeric_limits<int>::max() || pb.capacity[r] <= 0) continue;
      bool wants = static_cast<int>(held[r].size()) < pb.capacity[r];
      for (int q : held[r]) wants = wants || rank[r][p] < rank[r][q];
      if (wants) return {false, std::make_pair(p, r)};
    }
  }
  return {};
}

}  // namespace sagin
