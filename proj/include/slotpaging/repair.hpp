#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/laminar.hpp"
#include "slotpaging/page_laminar.hpp"

namespace slotpag {

// Solutions of page-set instances are cache contents over time (at most k
// pages per step); cost counts pages entering the cache.
inline std::size_t pageset_cost(
    const std::vector<std::vector<PageId>>& cache) {
  std::size_t cost = 0;
  std::set<PageId> prev;
  for (const auto& cur : cache) {
    for (PageId p : cur)
      if (!prev.count(p)) ++cost;
    prev = std::set<PageId>(cur.begin(), cur.end());
  }
  return cost;
}

inline std::optional<std::string> validate_pageset_solution(
    const PageSetSequence& seq, const std::vector<std::vector<PageId>>& cache) {
  if (cache.size() != seq.requests.size())
    return "solution length does not match the request count";
  for (std::size_t t = 0; t < cache.size(); ++t) {
    std::set<PageId> cur(cache[t].begin(), cache[t].end());
    if (cur.size() > static_cast<std::size_t>(seq.k))
      return "cache overflows at step " + std::to_string(t + 1);
    bool ok = false;
    for (PageId p : seq.requests[t])
      if (cur.count(p)) {
        ok = true;
        break;
      }
    if (!ok) return "request " + std::to_string(t + 1) + " unserved";
  }
  return std::nullopt;
}

struct RepairResult {
  std::vector<PageId> induced;                   // the final page requests
  std::vector<std::vector<PageId>> repaired;     // transformed solution
  std::size_t cost_before = 0;
  std::size_t cost_after = 0;
  std::size_t phases_repaired = 0;
  std::size_t max_phase_increase = 0;
};

// Converts a valid solution of a laminar page-set instance into one of the
// induced preferred-page instance.  Sets are repaired bottom-up; inside one
// phase of a set P every request to P becomes the phase's preferred page p,
// and whenever the solution holds a page of P but not p, one held page of P
// is swapped for p.  Each phase repair raises the cost by at most one.
inline RepairResult repair_phases(const PageSetSequence& seq,
                                  std::vector<std::vector<PageId>> solution) {
  if (auto err = validate_pageset_solution(seq, solution))
    throw std::invalid_argument("repair_phases: invalid input solution: " +
                                *err);
  LaminarForest forest = LaminarForest::build(seq.family);
  const int T = static_cast<int>(seq.requests.size());

  std::vector<int> node_of(T);
  for (int t = 0; t < T; ++t) {
    LaminarForest::Set s = seq.requests[t];
    std::sort(s.begin(), s.end());
    node_of[t] = forest.find(s);
    if (node_of[t] < 0)
      throw std::invalid_argument("repair_phases: request not in family");
  }

  // pref[n][t]: preferred page of node n after the first t+1 requests.
  PreferredPageTracker tracker(forest);
  std::vector<std::vector<PageId>> pref(forest.nodes.size(),
                                        std::vector<PageId>(T));
  std::vector<PageId> induced(T);
  for (int t = 0; t < T; ++t) {
    induced[t] = tracker.preferred(node_of[t]);
    tracker.record(node_of[t]);
    for (std::size_t n = 0; n < forest.nodes.size(); ++n)
      pref[n][t] = tracker.preferred(static_cast<int>(n));
  }

  RepairResult out;
  out.induced = induced;
  out.cost_before = pageset_cost(solution);

  std::vector<bool> repaired_req(T, false);

  // Deepest nodes first, so every proper descendant is done before its
  // ancestors.
  std::vector<int> order;
  for (std::size_t n = 0; n < forest.nodes.size(); ++n)
    order.push_back(static_cast<int>(n));
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return forest.nodes[a].depth > forest.nodes[b].depth;
  });

  for (int P : order) {
    bool requested = false;
    for (int t = 0; t < T; ++t)
      if (node_of[t] == P) requested = true;
    if (!requested) continue;
    const auto& pset = forest.nodes[P].set;
    auto in_P = [&](PageId p) {
      return std::binary_search(pset.begin(), pset.end(), p);
    };

    // Phase boundaries of P: time 0 and every request to a proper
    // descendant of P.
    std::vector<int> starts = {0};
    for (int t = 1; t < T; ++t)
      if (node_of[t] != P && forest.is_strict_ancestor(P, node_of[t]))
        starts.push_back(t);
    starts.push_back(T);

    for (std::size_t ph = 0; ph + 1 < starts.size(); ++ph) {
      int i = starts[ph], j = starts[ph + 1] - 1;
      bool has_P_request = false;
      for (int t = i; t <= j; ++t)
        if (node_of[t] == P && !repaired_req[t]) has_P_request = true;
      if (!has_P_request) continue;

      std::size_t before = pageset_cost(solution);
      PageId p = pref[P][i];
      for (int t = i; t <= j; ++t)
        if (node_of[t] == P && !repaired_req[t]) {
          repaired_req[t] = true;
          if (induced[t] != p)
            throw std::logic_error("repair_phases: phase preferred page "
                                   "disagrees with the induced sequence");
        }
      PageId swapped_prev = kNoPage;
      for (int t = i; t <= j; ++t) {
        auto& cache = solution[t];
        if (std::find(cache.begin(), cache.end(), p) != cache.end()) {
          swapped_prev = kNoPage;
          continue;
        }
        std::vector<PageId> held;
        for (PageId q : cache)
          if (in_P(q)) held.push_back(q);
        if (held.empty()) {
          swapped_prev = kNoPage;
          continue;
        }
        PageId victim;
        if (swapped_prev != kNoPage &&
            std::find(held.begin(), held.end(), swapped_prev) != held.end())
          victim = swapped_prev;
        else
          victim = *std::min_element(held.begin(), held.end());
        *std::find(cache.begin(), cache.end(), victim) = p;
        swapped_prev = victim;
      }
      std::size_t after = pageset_cost(solution);
      if (after > before + 1)
        throw std::logic_error(
            "repair_phases: phase repair raised the cost by more than one");
      if (after > before)
        out.max_phase_increase =
            std::max(out.max_phase_increase, after - before);
      ++out.phases_repaired;
    }
  }

  out.cost_after = pageset_cost(solution);
  out.repaired = std::move(solution);

  // The repaired solution must serve the induced page sequence.
  for (int t = 0; t < T; ++t)
    if (std::find(out.repaired[t].begin(), out.repaired[t].end(),
                  induced[t]) == out.repaired[t].end())
      throw std::logic_error("repair_phases: repaired solution misses an "
                             "induced page request");
  return out;
}

}  // namespace slotpag
