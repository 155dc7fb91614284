#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/laminar.hpp"

namespace slotpag {

// The oracle works on disjunctive requests: a request is served while some
// option's page sits in one of that option's slots.  Slot requests <p,S>
// become one option; page-set requests become one all-slots option per page.
struct DisjunctiveOption {
  PageId page;
  SlotSet slots;
};
using DisjunctiveRequest = std::vector<DisjunctiveOption>;

struct OracleProblem {
  int k = 0;
  std::vector<DisjunctiveRequest> requests;
  WeightMap weights;
  // When every option spans all slots the cache is unordered and states can
  // be canonicalized by sorting.
  bool slot_symmetric = false;
};

struct OptResult {
  Rat cost = 0;
  Schedule schedule;
  std::size_t total_states = 0;
  std::size_t peak_states = 0;
};

inline OracleProblem oracle_problem_from(const RequestSequence& seq,
                                         const WeightMap& weights = {}) {
  OracleProblem pr;
  pr.k = seq.k;
  pr.weights = weights;
  pr.slot_symmetric = true;
  for (const Request& r : seq.requests) {
    pr.requests.push_back({{r.page, r.slots}});
    if (r.slots != full_slots(seq.k)) pr.slot_symmetric = false;
  }
  return pr;
}

inline OracleProblem oracle_problem_from(const PageSetSequence& seq,
                                         const WeightMap& weights = {}) {
  OracleProblem pr;
  pr.k = seq.k;
  pr.weights = weights;
  pr.slot_symmetric = true;
  for (const auto& pages : seq.requests) {
    DisjunctiveRequest req;
    for (PageId p : pages) req.push_back({p, full_slots(seq.k)});
    pr.requests.push_back(std::move(req));
  }
  return pr;
}

// Exact optimum by dynamic programming over cache configurations.  Only lazy
// moves are explored (at most one retrieval per step, made at the step it
// serves); any solution can be put in that form without extra cost.  Pages
// with no remaining occurrence are evicted eagerly to merge states.
inline OptResult opt_oracle(const OracleProblem& pr, const Caps& caps = {}) {
  const int k = pr.k;
  const int T = static_cast<int>(pr.requests.size());
  std::set<PageId> distinct;
  for (const auto& req : pr.requests)
    for (const auto& opt : req) distinct.insert(opt.page);
  if (k > caps.oracle_max_k)
    throw CapError("opt_oracle: k=" + std::to_string(k) + " exceeds cap " +
                   std::to_string(caps.oracle_max_k));
  if (static_cast<int>(distinct.size()) > caps.oracle_max_pages)
    throw CapError("opt_oracle: " + std::to_string(distinct.size()) +
                   " pages exceed cap " + std::to_string(caps.oracle_max_pages));
  if (T > caps.oracle_max_t)
    throw CapError("opt_oracle: T=" + std::to_string(T) + " exceeds cap " +
                   std::to_string(caps.oracle_max_t));

  // live[t]: pages appearing as an option at some time >= t (1-based).
  std::vector<std::set<PageId>> live(T + 2);
  for (int t = T; t >= 1; --t) {
    live[t] = live[t + 1];
    for (const auto& opt : pr.requests[t - 1]) live[t].insert(opt.page);
  }

  struct Entry {
    std::vector<PageId> config;
    Rat cost;
    int parent = -1;  // index into the previous step's entries
  };

  auto canonical = [&](std::vector<PageId> cfg, int t) {
    for (PageId& p : cfg)
      if (p != kNoPage && !live[t].count(p)) p = kNoPage;
    if (pr.slot_symmetric) std::sort(cfg.begin(), cfg.end());
    return cfg;
  };

  auto satisfied = [&](const std::vector<PageId>& cfg,
                       const DisjunctiveRequest& req) {
    for (const auto& opt : req)
      for (int j : slot_list(opt.slots))
        if (cfg[j - 1] == opt.page) return true;
    return false;
  };

  OptResult out;
  if (T == 0) return out;

  std::vector<std::vector<Entry>> layers(T + 1);
  layers[0].push_back({std::vector<PageId>(k, kNoPage), Rat(0), -1});
  out.total_states = 1;
  out.peak_states = 1;

  for (int t = 1; t <= T; ++t) {
    const DisjunctiveRequest& req = pr.requests[t - 1];
    std::map<std::vector<PageId>, int> index;
    auto relax = [&](std::vector<PageId> cfg, const Rat& cost, int parent) {
      // Eager evictions below keep the current request satisfied: live[t]
      // contains every page requested at time t.
      cfg = canonical(std::move(cfg), t);
      auto it = index.find(cfg);
      if (it == index.end()) {
        index.emplace(cfg, static_cast<int>(layers[t].size()));
        layers[t].push_back({std::move(cfg), cost, parent});
      } else if (cost < layers[t][it->second].cost) {
        layers[t][it->second].cost = cost;
        layers[t][it->second].parent = parent;
      }
    };
    for (std::size_t i = 0; i < layers[t - 1].size(); ++i) {
      const Entry& e = layers[t - 1][i];
      if (satisfied(e.config, req)) {
        relax(e.config, e.cost, static_cast<int>(i));
        continue;
      }
      for (const auto& opt : req) {
        Rat cost = e.cost + pr.weights.weight(opt.page);
        // Each target slot is a distinct eviction choice, so all of them
        // are explored in both the symmetric and the asymmetric case.
        for (int j : slot_list(opt.slots)) {
          std::vector<PageId> cfg = e.config;
          cfg[j - 1] = opt.page;
          relax(std::move(cfg), cost, static_cast<int>(i));
        }
      }
    }
    out.total_states += layers[t].size();
    out.peak_states = std::max(out.peak_states, layers[t].size());
    if (out.total_states > caps.oracle_max_states)
      throw CapError("opt_oracle: state budget exceeded");
    if (layers[t].empty())
      throw std::logic_error("opt_oracle: no reachable states");
  }

  // Smallest cost; ties to the lexicographically least configuration.
  int best = 0;
  for (std::size_t i = 1; i < layers[T].size(); ++i) {
    const Entry& e = layers[T][i];
    const Entry& b = layers[T][best];
    if (e.cost < b.cost || (e.cost == b.cost && e.config < b.config))
      best = static_cast<int>(i);
  }
  out.cost = layers[T][best].cost;

  std::vector<std::vector<PageId>> canon(T);
  for (int t = T, i = best; t >= 1; --t) {
    canon[t - 1] = layers[t][i].config;
    i = layers[t][i].parent;
  }

  if (!pr.slot_symmetric) {
    for (int t = 1; t <= T; ++t) {
      CacheConfig cfg(k);
      cfg.slot = canon[t - 1];
      out.schedule.push_back(std::move(cfg));
    }
    return out;
  }

  // Symmetric states are sorted, so rebuild slot-aligned configurations by
  // keeping every surviving page in its previous slot.
  CacheConfig prev(k);
  for (int t = 1; t <= T; ++t) {
    std::vector<PageId> want;
    for (PageId p : canon[t - 1])
      if (p != kNoPage) want.push_back(p);
    CacheConfig cur(k);
    std::vector<bool> used(want.size(), false);
    for (int j = 1; j <= k; ++j) {
      PageId p = prev.at(j);
      if (p == kNoPage) continue;
      for (std::size_t i = 0; i < want.size(); ++i)
        if (!used[i] && want[i] == p) {
          used[i] = true;
          cur.put(j, p);
          break;
        }
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (used[i]) continue;
      for (int j = 1; j <= k; ++j)
        if (cur.at(j) == kNoPage) {
          cur.put(j, want[i]);
          break;
        }
      used[i] = true;
    }
    out.schedule.push_back(cur);
    prev = cur;
  }
  return out;
}

inline OptResult opt_bruteforce(const RequestSequence& seq,
                                const WeightMap& weights = {},
                                const Caps& caps = {}) {
  return opt_oracle(oracle_problem_from(seq, weights), caps);
}

inline OptResult opt_bruteforce(const PageSetSequence& seq,
                                const WeightMap& weights = {},
                                const Caps& caps = {}) {
  return opt_oracle(oracle_problem_from(seq, weights), caps);
}

}  // namespace slotpag
