#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/trace.hpp"

namespace slotpag {

// Reduction from vertex cover to slot-heterogenous paging with slot sets
// {all}, {k+1}, {k+2} and cache k+2 (k cover slots, one blocked slot, one
// overflow slot).  The graph has a vertex cover of size k iff the instance
// can be served with at most F retrievals.
//
// Layout, with m = |E|+1, P = k(n-k)+1, B = mP:
//   vertex page x[b][j]:  <x,*> at 9(bn+j) and 9(bn+j)+9n-6
//   blocker y[b]:         <y,k+1> and <y,k+2> just before x[b][0]'s second
//                         request
//   edge gadget (p,e) for edge (u,v), placed in bundle b = pm+e, with six
//   fresh pages z_u, z_v, g_u, g_v, h_u, h_v around the second requests of
//   x[b][u] and x[b][v]; ten requests per gadget, seven of which must fault
// Costs: F' = (2n-k+2)B for the vertex and blocker traffic, and 7 per
// gadget, F = F' + 7P(m-1).
struct VCReduction {
  RequestSequence seq;
  std::vector<long long> original_time;  // per request, before compaction
  long long m = 0, P = 0, B = 0, F = 0, F_prime = 0;
  int cover_size = 0;  // k of the graph
  int n = 0;

  PageId x_page(long long b, int j) const { return 1 + b * n + j; }
  PageId y_page(long long b) const { return 1 + static_cast<long long>(n) * B + b; }
  PageId gadget_page(long long p, int e, int which) const {
    // which: 0 z_u, 1 z_v, 2 g_u, 3 g_v, 4 h_u, 5 h_v
    return 1 + static_cast<long long>(n) * B + B +
           6 * (p * (m - 1) + e) + which;
  }
};

inline VCReduction vc_reduce(const VCGraph& g) {
  const int n = g.n, kc = g.k;
  if (kc < 1 || kc >= n)
    throw std::invalid_argument("vc_reduce: need 1 <= k < n");
  if (g.edges.empty()) throw std::invalid_argument("vc_reduce: no edges");
  VCReduction red;
  red.n = n;
  red.cover_size = kc;
  red.m = static_cast<long long>(g.edges.size()) + 1;
  red.P = static_cast<long long>(kc) * (n - kc) + 1;
  red.B = red.m * red.P;
  red.F_prime = (2LL * n - kc + 2) * red.B;
  red.F = red.F_prime + 7 * red.P * (red.m - 1);

  const int k = kc + 2;  // cache size of the instance
  red.seq.k = k;
  red.seq.family = {full_slots(k), slot_bit(kc + 1), slot_bit(kc + 2)};

  auto tau = [&](long long b, int j) { return 9 * (b * n + j); };
  auto tau2 = [&](long long b, int j) { return 9 * (b * n + j) + 9 * n - 6; };

  std::vector<std::pair<long long, Request>> timed;
  for (long long b = 0; b < red.B; ++b) {
    for (int j = 0; j < n; ++j) {
      timed.push_back({tau(b, j), {red.x_page(b, j), full_slots(k)}});
      timed.push_back({tau2(b, j), {red.x_page(b, j), full_slots(k)}});
    }
    timed.push_back({tau2(b, 0) - 2, {red.y_page(b), slot_bit(kc + 1)}});
    timed.push_back({tau2(b, 0) - 1, {red.y_page(b), slot_bit(kc + 2)}});
  }
  for (long long p = 0; p < red.P; ++p)
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      auto [u, v] = g.edges[e];
      long long b = p * red.m + e;
      long long tu = tau2(b, u), tv = tau2(b, v);
      PageId zu = red.gadget_page(p, e, 0), zv = red.gadget_page(p, e, 1);
      PageId gu = red.gadget_page(p, e, 2), gv = red.gadget_page(p, e, 3);
      PageId hu = red.gadget_page(p, e, 4), hv = red.gadget_page(p, e, 5);
      timed.push_back({tu + 1, {hu, slot_bit(kc + 1)}});
      timed.push_back({tu + 2, {zu, slot_bit(kc + 2)}});
      timed.push_back({tu + 3, {gu, full_slots(k)}});
      timed.push_back({tu + 4, {zu, slot_bit(kc + 2)}});
      timed.push_back({tu + 5, {hv, full_slots(k)}});
      timed.push_back({tv + 1, {hu, full_slots(k)}});
      timed.push_back({tv + 2, {zv, slot_bit(kc + 2)}});
      timed.push_back({tv + 3, {gv, full_slots(k)}});
      timed.push_back({tv + 4, {zv, slot_bit(kc + 2)}});
      timed.push_back({tv + 5, {hv, slot_bit(kc + 1)}});
    }

  std::sort(timed.begin(), timed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < timed.size(); ++i)
    if (timed[i].first == timed[i - 1].first)
      throw std::logic_error("vc_reduce: timestamp collision");
  for (auto& [time, req] : timed) {
    red.original_time.push_back(time);
    red.seq.requests.push_back(req);
  }
  std::size_t expect = 2LL * n * red.B + 2 * red.B +
                       10LL * red.P * (red.m - 1);
  if (red.seq.requests.size() != expect)
    throw std::logic_error("vc_reduce: wrong request count");
  return red;
}

// Builds a schedule with exactly F retrievals from a vertex cover of size
// k: covered vertices live in dedicated slots, the others pass through the
// overflow slot, and each edge gadget is served with 7 retrievals through
// the covered endpoint's slot.
inline Schedule vc_solution_from_cover(const VCReduction& red,
                                       const VCGraph& g,
                                       std::vector<int> cover) {
  std::sort(cover.begin(), cover.end());
  if (static_cast<int>(cover.size()) != red.cover_size)
    throw std::invalid_argument("vc_solution_from_cover: wrong cover size");
  const int kc = red.cover_size;
  const int k = kc + 2;
  const int n = red.n;
  std::map<int, int> slot_of;  // vertex -> dedicated slot
  for (std::size_t i = 0; i < cover.size(); ++i)
    slot_of[cover[i]] = static_cast<int>(i) + 1;

  // Target slot per original request time.
  std::map<long long, int> place;
  auto tau2 = [&](long long b, int j) { return 9 * (b * n + j) + 9 * n - 6; };
  for (long long b = 0; b < red.B; ++b) {
    for (int j = 0; j < n; ++j) {
      int s = slot_of.count(j) ? slot_of[j] : kc + 2;
      place[9 * (b * n + j)] = s;
      place[tau2(b, j)] = s;
    }
    place[tau2(b, 0) - 2] = kc + 1;
    place[tau2(b, 0) - 1] = kc + 2;
  }
  for (long long p = 0; p < red.P; ++p)
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      auto [u, v] = g.edges[e];
      long long b = p * red.m + e;
      long long tu = tau2(b, u), tv = tau2(b, v);
      bool u_covered = slot_of.count(u);
      if (!u_covered && !slot_of.count(v))
        throw std::invalid_argument(
            "vc_solution_from_cover: edge not covered");
      place[tu + 1] = kc + 1;  // h_u specific
      place[tu + 2] = kc + 2;  // z_u
      place[tu + 4] = kc + 2;
      place[tv + 2] = kc + 2;  // z_v
      place[tv + 4] = kc + 2;
      place[tv + 5] = kc + 1;  // h_v specific
      if (u_covered) {
        place[tu + 3] = slot_of[u];  // g_u in u's slot
        place[tu + 5] = kc + 2;      // h_v parked in overflow
        place[tv + 1] = kc + 1;      // h_u kept: no-op
        place[tv + 3] = kc + 1;      // g_v bumps h_u
      } else {
        place[tu + 3] = kc + 1;      // g_u bumps h_u
        place[tu + 5] = kc + 1;      // h_v takes the blocked slot
        place[tv + 1] = kc + 2;      // h_u refetched into overflow
        place[tv + 3] = slot_of[v];  // g_v in v's slot
      }
    }

  Schedule out;
  CacheConfig cur(k);
  for (std::size_t i = 0; i < red.seq.requests.size(); ++i) {
    long long time = red.original_time[i];
    const Request& r = red.seq.requests[i];
    auto it = place.find(time);
    if (it == place.end())
      throw std::logic_error("vc_solution_from_cover: unplanned request");
    int s = it->second;
    if (!has_slot(r.slots, s))
      throw std::logic_error("vc_solution_from_cover: slot not allowed");
    cur.put(s, r.page);
    out.push_back(cur);
  }
  return out;
}

}  // namespace slotpag
