#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "slotpaging/rational.hpp"

namespace slotpag {

// Pages are non-negative integers; id 0 is reserved for the artificial
// zero-weight page used by the weighted algorithm and its adversaries.
using PageId = std::int64_t;
inline constexpr PageId kNoPage = -1;

// Slots are numbered 1..k; slot j maps to bit j-1.
using SlotSet = std::uint32_t;

inline constexpr int kMaxSlots = 30;

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Caps {
  int satisfiability_max_k = 16;
  int closure_max_k = 24;
  int oracle_max_k = 4;
  int oracle_max_pages = 8;
  int oracle_max_t = 30;
  std::size_t oracle_max_states = 2'000'000;
  int gz_exhaustive_max_k = 20;
  int forcing_max_k = 8;
};

inline SlotSet slot_bit(int j) { return SlotSet{1} << (j - 1); }

inline SlotSet full_slots(int k) {
  return k == 0 ? 0 : (SlotSet{1} << k) - 1;
}

inline SlotSet make_slots(std::initializer_list<int> js) {
  SlotSet s = 0;
  for (int j : js) s |= slot_bit(j);
  return s;
}

inline bool has_slot(SlotSet s, int j) { return (s >> (j - 1)) & 1; }

inline int slot_count(SlotSet s) { return std::popcount(s); }

inline bool subset_of(SlotSet a, SlotSet b) { return (a & ~b) == 0; }

inline bool proper_subset_of(SlotSet a, SlotSet b) {
  return a != b && subset_of(a, b);
}

inline bool disjoint(SlotSet a, SlotSet b) { return (a & b) == 0; }

inline int lowest_slot(SlotSet s) { return std::countr_zero(s) + 1; }

inline std::vector<int> slot_list(SlotSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(lowest_slot(s));
    s &= s - 1;
  }
  return out;
}

inline std::string slots_to_string(SlotSet s) {
  std::string out = "{";
  bool first = true;
  for (int j : slot_list(s)) {
    if (!first) out += ',';
    out += std::to_string(j);
    first = false;
  }
  return out + "}";
}

using SlotSetFamily = std::vector<SlotSet>;

struct Request {
  PageId page = kNoPage;
  SlotSet slots = 0;

  bool operator==(const Request&) const = default;
  auto operator<=>(const Request&) const = default;
};

inline std::string request_to_string(const Request& r, int k) {
  std::string out = std::to_string(r.page);
  out += r.slots == full_slots(k) ? " *" : " " + slots_to_string(r.slots);
  return out;
}

struct RequestSequence {
  int k = 0;
  SlotSetFamily family;  // optional; empty means unrestricted
  std::vector<Request> requests;
};

// One cache configuration: slot j holds slot[j-1], or kNoPage.
struct CacheConfig {
  std::vector<PageId> slot;

  CacheConfig() = default;
  explicit CacheConfig(int k) : slot(k, kNoPage) {}

  int k() const { return static_cast<int>(slot.size()); }

  PageId at(int j) const { return slot[j - 1]; }
  void put(int j, PageId p) { slot[j - 1] = p; }
  void evict(int j) { slot[j - 1] = kNoPage; }

  bool satisfies(const Request& r) const {
    for (int j : slot_list(r.slots))
      if (at(j) == r.page) return true;
    return false;
  }

  SlotSet slots_holding(PageId p) const {
    SlotSet s = 0;
    for (int j = 1; j <= k(); ++j)
      if (at(j) == p) s |= slot_bit(j);
    return s;
  }

  bool operator==(const CacheConfig&) const = default;
};

using Schedule = std::vector<CacheConfig>;

struct Retrieval {
  int t;  // 1-based request index
  int j;  // slot
  PageId page;
};

// All (t, slot) pairs where the schedule loads a page that was not in that
// slot one step earlier.  The configuration before time 1 is empty.
inline std::vector<Retrieval> retrievals(const Schedule& sched, int k) {
  std::vector<Retrieval> out;
  CacheConfig prev(k);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const CacheConfig& cur = sched[i];
    for (int j = 1; j <= k; ++j) {
      PageId p = cur.at(j);
      if (p != kNoPage && prev.at(j) != p)
        out.push_back({static_cast<int>(i) + 1, j, p});
    }
    prev = cur;
  }
  return out;
}

struct WeightMap {
  std::unordered_map<PageId, Rat> weight_of;

  Rat weight(PageId p) const {
    if (p == 0) return Rat(0);
    auto it = weight_of.find(p);
    return it == weight_of.end() ? Rat(1) : it->second;
  }
};

inline std::size_t schedule_cost(const Schedule& sched, int k) {
  return retrievals(sched, k).size();
}

inline Rat schedule_cost_weighted(const Schedule& sched, int k,
                                  const WeightMap& w) {
  Rat total = 0;
  for (const Retrieval& r : retrievals(sched, k)) total += w.weight(r.page);
  return total;
}

// Returns an error description, or nullopt if the schedule is valid.
inline std::optional<std::string> validate_schedule(const RequestSequence& seq,
                                                    const Schedule& sched) {
  if (sched.size() != seq.requests.size())
    return "schedule has " + std::to_string(sched.size()) +
           " configurations for " + std::to_string(seq.requests.size()) +
           " requests";
  for (std::size_t i = 0; i < sched.size(); ++i) {
    if (sched[i].k() != seq.k)
      return "configuration " + std::to_string(i + 1) + " has wrong size";
    if (!sched[i].satisfies(seq.requests[i]))
      return "request " + std::to_string(i + 1) + " (" +
             request_to_string(seq.requests[i], seq.k) + ") not satisfied";
  }
  return std::nullopt;
}

struct FamilyStats {
  int size = 0;
  int mass = 0;                            // sum of |S| over S in the family
  std::optional<std::size_t> closure_size; // |F*|, nullopt above the k cap
  bool laminar = false;
  int height = 0;  // longest strict nesting chain; 0 when not laminar
};

inline bool family_is_laminar(const SlotSetFamily& family) {
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a + 1; b < family.size(); ++b)
      if (!disjoint(family[a], family[b]) && !subset_of(family[a], family[b]) &&
          !subset_of(family[b], family[a]))
        return false;
  return true;
}

inline int laminar_height(const SlotSetFamily& family) {
  // Longest chain S_1 < S_2 < ... under strict inclusion.
  std::vector<SlotSet> sorted(family.begin(), family.end());
  std::sort(sorted.begin(), sorted.end(),
            [](SlotSet a, SlotSet b) { return slot_count(a) < slot_count(b); });
  std::vector<int> depth(sorted.size(), 1);
  int best = sorted.empty() ? 0 : 1;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (proper_subset_of(sorted[j], sorted[i]))
        depth[i] = std::max(depth[i], depth[j] + 1);
    best = std::max(best, depth[i]);
  }
  return best;
}

inline FamilyStats family_stats(int k, const SlotSetFamily& family,
                                const Caps& caps = {}) {
  FamilyStats st;
  st.size = static_cast<int>(family.size());
  for (SlotSet s : family) st.mass += slot_count(s);
  st.laminar = family_is_laminar(family);
  if (st.laminar) st.height = laminar_height(family);
  if (k <= caps.closure_max_k) {
    std::unordered_set<SlotSet> closure;
    for (SlotSet s : family) {
      // Enumerate the nonempty subsets of s.
      for (SlotSet sub = s; sub; sub = (sub - 1) & s) closure.insert(sub);
    }
    st.closure_size = closure.size();
  }
  return st;
}

// Exhaustive satisfiability of a request set: is there one configuration
// holding every requested page in some requested slot?  Deterministic
// backtracking over the distinct requests in (page, slot set) order.
inline bool is_satisfiable_generic(int k, std::vector<Request> reqs,
                                   const Caps& caps = {}) {
  if (k > caps.satisfiability_max_k)
    throw CapError("is_satisfiable_generic: k=" + std::to_string(k) +
                   " exceeds cap " + std::to_string(caps.satisfiability_max_k));
  std::sort(reqs.begin(), reqs.end());
  reqs.erase(std::unique(reqs.begin(), reqs.end()), reqs.end());
  std::vector<PageId> slot(k, kNoPage);

  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == reqs.size()) return true;
    const Request& r = reqs[i];
    for (int j : slot_list(r.slots))
      if (slot[j - 1] == r.page) return self(self, i + 1);
    for (int j : slot_list(r.slots)) {
      if (slot[j - 1] != kNoPage) continue;
      slot[j - 1] = r.page;
      if (self(self, i + 1)) return true;
      slot[j - 1] = kNoPage;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace slotpag
