#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/online.hpp"

namespace slotpag {

// The lower-bound families live over up to 64 slots (wider than the
// simulator's slot sets, whose limit only binds when an algorithm runs).
using WideSet = std::uint64_t;

inline WideSet wide_full(int k) {
  return k == 64 ? ~WideSet{0} : (WideSet{1} << k) - 1;
}

inline std::string wide_to_string(WideSet s, int k) {
  std::string out = "{";
  bool first = true;
  for (int j = 1; j <= k; ++j)
    if (s & (WideSet{1} << (j - 1))) {
      if (!first) out += ",";
      out += std::to_string(j);
      first = false;
    }
  return out + "}";
}

// A pair of set families G (requested sets) and Z (reference
// configurations) driving the two-page adversary:
//   gz0: every X in 2^[k] has some S in G inside X or inside its complement
//   gz1: Z never contains both a set and its complement
//   gz2: each S in G fits inside at most one Z (or complement) from Z
struct GZFamilies {
  int k = 0;
  std::vector<WideSet> G;
  std::vector<WideSet> Z;
};

struct GZCheckResult {
  bool ok = true;
  bool gz0_checked = false;
  std::vector<std::string> violations;

  void fail(std::string msg) {
    ok = false;
    violations.push_back(std::move(msg));
  }
};

inline GZCheckResult check_gz(const GZFamilies& f, const Caps& caps = {}) {
  GZCheckResult out;
  const int k = f.k;
  const WideSet full = wide_full(k);
  for (WideSet s : f.G)
    if (!s || (s & ~full))
      out.fail("G member outside [k]: " + wide_to_string(s, 64));
  for (WideSet s : f.Z)
    if (s & ~full) out.fail("Z member outside [k]: " + wide_to_string(s, 64));

  if (k <= caps.gz_exhaustive_max_k) {
    out.gz0_checked = true;
    for (WideSet x = 0; x <= full; ++x) {
      bool hit = false;
      for (WideSet s : f.G)
        if ((s & ~x) == 0 || (s & x) == 0) {
          hit = true;
          break;
        }
      if (!hit) {
        out.fail("gz0 fails for X=" + wide_to_string(x, k));
        break;
      }
      if (x == full) break;  // avoid overflow at k=64
    }
  }

  std::set<WideSet> zset(f.Z.begin(), f.Z.end());
  for (WideSet z : f.Z)
    if (zset.count(full & ~z)) {
      out.fail("gz1 fails: Z contains " + wide_to_string(z, k) +
               " and its complement");
      break;
    }

  for (WideSet s : f.G) {
    int hits = 0;
    for (WideSet z : f.Z)
      if ((s & ~z) == 0 || (s & z) == 0) ++hits;
    if (hits > 1) {
      out.fail("gz2 fails for S=" + wide_to_string(s, k));
      break;
    }
  }
  return out;
}

// G = Z = all (k+1)/2-subsets of [k], for odd k.
inline GZFamilies family_half_subsets(int k) {
  if (k < 1 || k % 2 == 0)
    throw std::invalid_argument("family_half_subsets: k must be odd");
  GZFamilies out;
  out.k = k;
  const int m = (k + 1) / 2;
  const WideSet full = wide_full(k);
  for (WideSet s = 0; s <= full; ++s) {
    if (std::popcount(s) == m) out.G.push_back(s);
    if (s == full) break;
  }
  out.Z = out.G;
  return out;
}

// Cycle construction: the slots split into m-1 cycles of odd length
// l = k/(m-1); G holds the unions of m/2 edges from distinct cycles, and
// each Z interleaves alternating slots so that it contains exactly the m/2
// edges of its G-set while its complement contains m/2-1 edges.
struct CycleFamilies {
  GZFamilies gz;
  int m = 0;
  int ell = 0;
  // The m/2 chosen edges of G[i], as (cycle e, edge start c), both 1-based.
  std::vector<std::vector<std::pair<int, int>>> edges_of;
};

inline CycleFamilies family_cycles(int k, int m) {
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("family_cycles: m must be even, >= 2");
  if (k <= m || k % (m - 1) != 0 || (k / (m - 1)) % 2 == 0)
    throw std::invalid_argument(
        "family_cycles: k must be an odd multiple of m-1 exceeding m");
  if (k > 64) throw std::invalid_argument("family_cycles: k > 64");
  const int ell = k / (m - 1);

  CycleFamilies out;
  out.gz.k = k;
  out.m = m;
  out.ell = ell;
  auto slot = [&](int e, int c) {  // cycle e in 1..m-1, position c in 1..ell
    int cc = ((c - 1) % ell + ell) % ell + 1;
    return WideSet{1} << ((e - 1) * ell + cc - 1);
  };

  // All ways to pick m/2 distinct cycles, then one edge per picked cycle.
  std::vector<int> cycles;
  auto pick_edges = [&](auto&& self, std::size_t idx) -> void {
    if (static_cast<int>(cycles.size()) == m / 2) {
      std::vector<std::pair<int, int>> chosen(m / 2, {0, 0});
      auto rec = [&](auto&& inner, std::size_t i) -> void {
        if (i == cycles.size()) {
          WideSet s = 0;
          for (auto [e, c] : chosen) s |= slot(e, c) | slot(e, c + 1);
          out.gz.G.push_back(s);
          out.edges_of.push_back(chosen);
          return;
        }
        for (int c = 1; c <= ell; ++c) {
          chosen[i] = {cycles[i], c};
          inner(inner, i + 1);
        }
      };
      rec(rec, 0);
      return;
    }
    if (idx > static_cast<std::size_t>(m - 1)) return;
    cycles.push_back(static_cast<int>(idx));
    self(self, idx + 1);
    cycles.pop_back();
    self(self, idx + 1);
  };
  pick_edges(pick_edges, 1);

  for (const auto& edges : out.edges_of) {
    WideSet z = 0;
    std::vector<bool> used(m, false);
    for (auto [e, c] : edges) {
      used[e] = true;
      z |= slot(e, c) | slot(e, c + 1);
      for (int i = 3; i <= ell - 2; i += 2) z |= slot(e, c + i);
    }
    for (int e = 1; e <= m - 1; ++e) {
      if (used[e]) continue;
      for (int c = 1; c <= ell - 2; c += 2) z |= slot(e, c);
    }
    out.gz.Z.push_back(z);
  }
  return out;
}

// Counts cycle edges (adjacent slot pairs, cyclically) fully inside s.
inline int count_cycle_edges(WideSet s, int m, int ell) {
  int edges = 0;
  for (int e = 1; e <= m - 1; ++e)
    for (int c = 1; c <= ell; ++c) {
      WideSet a = WideSet{1} << ((e - 1) * ell + c - 1);
      WideSet b = WideSet{1} << ((e - 1) * ell + (c % ell));
      if ((s & a) && (s & b)) ++edges;
    }
  return edges;
}

// Two-page adversary: against an algorithm with (normalized) configuration
// C_X it requests the opposite page on a G-set inside X or its complement,
// so the algorithm faults every round, while per round at most one of the
// 2|Z| pinned reference strategies pays 2.
struct TwoPageResult {
  long long rounds = 0;
  std::size_t alg_cost = 0;
  std::vector<long long> z_costs;  // fault cost per strategy, setup excluded
  long long setup_cost = 0;        // one-time cost of reaching a C_Z
  double ratio_lb = 0;             // alg_cost / ((sum z_costs + k) / 2|Z|)
  int max_faulting_strategies = 0;
};

inline TwoPageResult two_page_adversary(const GZFamilies& f, OnlineAlgorithm& alg,
                                     long long rounds,
                                     const Caps& caps = {}) {
  const int k = f.k;
  if (k > kMaxSlots)
    throw CapError("two_page_adversary: k exceeds the simulator slot limit");
  auto chk = check_gz(f, caps);
  if (!chk.ok)
    throw std::invalid_argument("two_page_adversary: families fail checks: " +
                                chk.violations.front());

  const PageId p0 = 1, p1 = 2;
  std::vector<WideSet> strategies = f.Z;  // then complements
  for (WideSet z : f.Z) strategies.push_back(wide_full(k) & ~z);

  std::vector<SlotSet> G(f.G.begin(), f.G.end());
  std::sort(G.begin(), G.end());

  SlotSetFamily fam(G.begin(), G.end());
  alg.reset(k, fam);

  TwoPageResult out;
  out.rounds = rounds;
  out.z_costs.assign(strategies.size(), 0);
  out.setup_cost = k;  // filling one reference configuration from empty
  CacheConfig prev = alg.config();
  for (long long t = 0; t < rounds; ++t) {
    // Normalize: slots without p0 count as holding p1.
    SlotSet x = 0;
    for (int j = 1; j <= k; ++j)
      if (alg.config().at(j) == p0) x |= slot_bit(j);
    SlotSet chosen = 0;
    PageId page = kNoPage;
    for (SlotSet s : G) {
      if (subset_of(s, x)) {
        chosen = s;
        page = p1;
        break;
      }
      if (disjoint(s, x)) {
        chosen = s;
        page = p0;
        break;
      }
    }
    if (!chosen) throw std::logic_error("two_page_adversary: gz0 failed live");

    int faulting = 0;
    for (std::size_t i = 0; i < strategies.size(); ++i) {
      // C_Z holds p0 on Z; the request misses iff the strategy has the
      // other page on all of the requested set.
      WideSet z = strategies[i];
      bool served = page == p0 ? (chosen & z) != 0 : (chosen & ~z) != 0;
      if (!served) {
        out.z_costs[i] += 2;
        ++faulting;
      }
    }
    if (faulting > 1)
      throw std::logic_error(
          "two_page_adversary: more than one reference strategy faulted");
    out.max_faulting_strategies =
        std::max(out.max_faulting_strategies, faulting);

    alg.serve({page, chosen});
    const CacheConfig& cur = alg.config();
    for (int j = 1; j <= k; ++j)
      if (cur.at(j) != prev.at(j) && cur.at(j) != kNoPage) ++out.alg_cost;
    if (!cur.satisfies({page, chosen}))
      throw std::logic_error("two_page_adversary: algorithm missed the request");
    prev = cur;
  }

  long long total = std::accumulate(out.z_costs.begin(), out.z_costs.end(),
                                    0LL);
  double mean = static_cast<double>(total + k) /
                static_cast<double>(strategies.size());
  out.ratio_lb = static_cast<double>(out.alg_cost) / mean;
  return out;
}

// Balanced two-page configurations: slots in the set hold p0, the rest p1.
struct BalancedConfigSet {
  int k = 0;
  std::vector<SlotSet> configs;  // each the p0-slot set, of size k/2
};

// Greedy code: balanced configurations in mask order, keeping those at
// Hamming distance >= min_distance from everything kept so far.
inline BalancedConfigSet greedy_balanced_code(int k, int min_distance = 3) {
  if (k % 2 != 0) throw std::invalid_argument("greedy_balanced_code: odd k");
  BalancedConfigSet out;
  out.k = k;
  for (SlotSet s = 0; s <= full_slots(k); ++s) {
    if (slot_count(s) != k / 2) continue;
    bool far = true;
    for (SlotSet c : out.configs)
      if (slot_count(s ^ c) < min_distance) {
        far = false;
        break;
      }
    if (far) out.configs.push_back(s);
  }
  return out;
}

// All half-size requests satisfied by every configuration in C.  When the
// members of C are pairwise at Hamming distance >= 3, the two-page
// configurations serving the whole sequence at zero cost are exactly C.
inline RequestSequence forcing_sequence(const BalancedConfigSet& c) {
  const int k = c.k;
  if (k % 2 != 0) throw std::invalid_argument("forcing_sequence: odd k");
  for (SlotSet s : c.configs)
    if (slot_count(s) != k / 2)
      throw std::invalid_argument("forcing_sequence: unbalanced configuration");
  for (std::size_t a = 0; a < c.configs.size(); ++a)
    for (std::size_t b = a + 1; b < c.configs.size(); ++b)
      if (slot_count(c.configs[a] ^ c.configs[b]) < 3)
        throw std::invalid_argument(
            "forcing_sequence: configurations closer than distance 3");

  const PageId p0 = 1, p1 = 2;
  RequestSequence out;
  out.k = k;
  for (SlotSet s = 0; s <= full_slots(k); ++s) {
    if (slot_count(s) != k / 2) continue;
    bool ok0 = true, ok1 = true;
    for (SlotSet cfg : c.configs) {
      if (disjoint(s, cfg)) ok0 = false;              // p0 lives on cfg
      if (subset_of(s, cfg)) ok1 = false;             // p1 on the complement
    }
    if (ok0) out.requests.push_back({p0, s});
    if (ok1) out.requests.push_back({p1, s});
  }
  std::set<SlotSet> fam;
  for (const Request& r : out.requests) fam.insert(r.slots);
  out.family.assign(fam.begin(), fam.end());
  return out;
}

// Exhaustively checks, over all 2^k two-page slot labelings, that the
// zero-cost satisfiers of the sequence are exactly the configurations in C.
inline bool verify_forcing(const BalancedConfigSet& c,
                           const RequestSequence& psi, const Caps& caps = {}) {
  const int k = c.k;
  if (k > caps.forcing_max_k)
    throw CapError("verify_forcing: k exceeds the exhaustive-check cap");
  const PageId p0 = 1;
  std::set<SlotSet> in_c(c.configs.begin(), c.configs.end());
  for (SlotSet x = 0; x <= full_slots(k); ++x) {
    bool satisfies_all = true;
    for (const Request& r : psi.requests) {
      SlotSet holding = r.page == p0 ? x : (full_slots(k) & ~x);
      if (disjoint(r.slots, holding)) {
        satisfies_all = false;
        break;
      }
    }
    if (satisfies_all != (in_c.count(x) > 0)) return false;
  }
  return true;
}

// Randomized All-or-One adversary: per phase it permutes its k resident
// pages, swaps the last one for the spare page (cost 1), then runs k-1
// stages of repeated specific requests followed by a general request to the
// spare page, which cost the adversary nothing but squeeze a lazy
// algorithm for an expected 2(H_k - 1) extra retrievals per phase.
struct AooAdversaryResult {
  std::size_t alg_cost = 0;
  long long adv_cost = 0;
  double ratio = 0;
};

inline AooAdversaryResult all_or_one_adversary(int k, long long phases,
                                               int reps, std::uint64_t seed,
                                               OnlineAlgorithm& alg) {
  if (k < 1) throw std::invalid_argument("all_or_one_adversary: k < 1");
  SlotSetFamily fam{full_slots(k)};
  for (int j = 1; j <= k; ++j) fam.push_back(slot_bit(j));
  alg.reset(k, fam);

  std::mt19937_64 rng(seed);
  std::vector<PageId> resident(k + 1, kNoPage);  // adversary slot -> page
  for (int j = 1; j <= k; ++j) resident[j] = j;
  PageId spare = k + 1;

  // Warm-up: both sides load page j into slot j; not counted for either.
  CacheConfig prev(k);
  for (int j = 1; j <= k; ++j) {
    alg.serve({resident[j], slot_bit(j)});
    prev = alg.config();
  }

  AooAdversaryResult out;
  auto request = [&](PageId p, SlotSet s) {
    alg.serve({p, s});
    const CacheConfig& cur = alg.config();
    for (int j = 1; j <= k; ++j)
      if (cur.at(j) != prev.at(j) && cur.at(j) != kNoPage) ++out.alg_cost;
    if (!cur.satisfies({p, s}))
      throw std::logic_error("all_or_one_adversary: request missed");
    prev = cur;
  };

  std::vector<int> order(k);
  for (long long ph = 0; ph < phases; ++ph) {
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    int last = order[k - 1];
    std::swap(resident[last], spare);  // the swap costs the adversary 1
    out.adv_cost += 1;
    request(resident[last], full_slots(k));
    for (int s = 1; s <= k - 1; ++s)
      for (int rep = 0; rep < reps; ++rep) {
        for (int r = 1; r <= s; ++r)
          request(resident[order[r - 1]], slot_bit(order[r - 1]));
        request(resident[last], full_slots(k));
      }
  }
  out.ratio = out.adv_cost == 0
                  ? 0
                  : static_cast<double>(out.alg_cost) /
                        static_cast<double>(out.adv_cost);
  return out;
}

}  // namespace slotpag
