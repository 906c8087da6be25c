#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "sagin/matching.hpp"
#include "sagin/pathing.hpp"
#include "sagin/rng.hpp"
#include "sagin/state.hpp"

namespace sagin {

struct Candidate {
  int node;
  double score;  // L_S seconds; kUnreachable sorts last
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Nodes an SFC at `s.at` may move its remaining work to: the current node
// itself when it can host VNFs (its storage link keeps it reachable), and
// every live out-neighbour that can host VNFs, or the destination once all
// VNFs are done. Ascending L_S = T(c->A) + T(A->d), ties by node index.
inline std::vector<Candidate> build_sfc_preferences(const SfcState& s, const SlotGraph& g) {
  std::vector<Candidate> out;
  if (g.is_failed(s.at)) return out;
  const auto unit = unit_times_to(g, s.destination);
  auto usable = [&](int node) {
    if (g.nodes.is_ground(node)) return node == s.destination && s.all_processed();
    return !s.all_processed();
  };
  if (usable(s.at)) out.push_back({s.at, s.data_bits * unit[s.at]});
  for (int li : g.out_links(s.at)) {
    const Link& l = g.links[li];
    if (l.kind == LinkKind::storage || g.is_failed(l.to) || !usable(l.to)) continue;
    const double hop = s.data_bits / l.rate_bps;
    const double rest = l.to == s.destination ? 0.0 : s.data_bits * unit[l.to];
    out.push_back({l.to, hop + rest});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.node < b.node;
  });
  return out;
}

struct Proposer {
  int sfc;
  double data_bits;
  bool processing_here;  // varsigma^p
  bool stored_here;      // varsigma^s
};

inline double node_score(const Proposer& p, const PreferenceWeights& w) {
  return w.a * (p.processing_here ? 1 : 0) + w.b * (p.stored_here ? 1 : 0) + w.c / p.data_bits;
}

enum class RankingRule { ascending_data, descending_data };

// Descending L_N = a*processing + b*stored + c/Delta. With descending_data the
// order inside each class is reversed (largest data first); ties by SFC id.
inline std::vector<int> build_node_ranking(std::vector<Proposer> proposers, const PreferenceWeights& w,
                                           RankingRule rule = RankingRule::ascending_data) {
  auto cls = [&](const Proposer& p) { return w.a * (p.processing_here ? 1 : 0) + w.b * (p.stored_here ? 1 : 0); };
  std::sort(proposers.begin(), proposers.end(), [&](const Proposer& x, const Proposer& y) {
    if (rule == RankingRule::ascending_data) {
      const double sx = node_score(x, w), sy = node_score(y, w);
      if (sx != sy) return sx > sy;
    } else {
      if (cls(x) != cls(y)) return cls(x) > cls(y);
      if (x.data_bits != y.data_bits) return x.data_bits > y.data_bits;
    }
    return x.sfc < y.sfc;
  });
  std::vector<int> out;
  for (const auto& p : proposers) out.push_back(p.sfc);
  return out;
}

struct RecoveryRequest {
  int sfc;
  std::vector<Candidate> prefs;
};

struct RecoveryOutcome {
  std::vector<int> node_of;  // per request, -1 when unmatched
  Matching matching;
  MatchingProblem problem;
  std::vector<int> receiver_nodes;  // receiver index -> node
};

// Proposers are requests in the given order; receivers are the distinct
// candidate nodes in ascending node order. `capacity_of(node, proposers)`
// gives the number of SFCs a node may take, `rank_of(node, request indices)`
// its ranking over the requests that listed it.
template <class CapacityFn, class RankFn>
RecoveryOutcome match_recover(const std::vector<RecoveryRequest>& requests, CapacityFn capacity_of, RankFn rank_of) {
  RecoveryOutcome out;
  std::vector<int> nodes;
  for (const auto& r : requests)
    for (const auto& c : r.prefs) nodes.push_back(c.node);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto index_of = [&](int node) { return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), node) - nodes.begin()); };

  MatchingProblem& pb = out.problem;
  pb.proposer_prefs.resize(requests.size());
  pb.receiver_ranking.resize(nodes.size());
  pb.capacity.resize(nodes.size());
  std::vector<std::vector<int>> listed(nodes.size());
  for (std::size_t i = 0; i < requests.size(); ++i)
    for (const auto& c : requests[i].prefs) {
      pb.proposer_prefs[i].push_back(index_of(c.node));
      listed[index_of(c.node)].push_back(static_cast<int>(i));
    }
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    pb.capacity[r] = capacity_of(nodes[r], listed[r]);
    pb.receiver_ranking[r] = rank_of(nodes[r], listed[r]);
  }
  out.matching = match_deferred_acceptance(pb);
  out.receiver_nodes = nodes;
  out.node_of.assign(requests.size(), -1);
  for (std::size_t i = 0; i < requests.size(); ++i)
    if (out.matching.receiver_of[i] >= 0) out.node_of[i] = nodes[out.matching.receiver_of[i]];
  return out;
}

struct Arrival {
  int sfc;
  double data_bits;
  double sigma;
};

enum class AdmissionOrder { ascending_data, descending_data, random };

struct AdmissionResult {
  std::vector<int> admitted;
  std::vector<int> deferred;
};

inline std::vector<Arrival> admission_order(std::vector<Arrival> arrivals, AdmissionOrder order, Stream* stream) {
  if (order == AdmissionOrder::random && stream) {
    std::sort(arrivals.begin(), arrivals.end(), [](const Arrival& a, const Arrival& b) { return a.sfc < b.sfc; });
    for (int i = static_cast<int>(arrivals.size()) - 1; i > 0; --i) std::swap(arrivals[i], arrivals[uniform_int(*stream, 0, i)]);
    return arrivals;
  }
  const bool desc = order == AdmissionOrder::descending_data;
  std::sort(arrivals.begin(), arrivals.end(), [desc](const Arrival& a, const Arrival& b) {
    if (a.data_bits != b.data_bits) return desc ? a.data_bits > b.data_bits : a.data_bits < b.data_bits;
    return a.sfc < b.sfc;
  });
  return arrivals;
}

// Admits arrivals in order until the first one whose sigma no longer fits the
// residual compute; that one and everything after it are deferred.
inline AdmissionResult admit_at_node(double residual_compute, const std::vector<Arrival>& arrivals,
                                     AdmissionOrder order = AdmissionOrder::ascending_data, Stream* stream = nullptr) {
  AdmissionResult r;
  bool open = true;
  for (const auto& a : admission_order(arrivals, order, stream)) {
    if (open && a.sigma <= residual_compute + 1e-12) {
      residual_compute -= a.sigma;
      r.admitted.push_back(a.sfc);
    } else {
      open = false;
      r.deferred.push_back(a.sfc);
    }
  }
  return r;
}

}  // namespace sagin
