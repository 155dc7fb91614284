#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/rational.hpp"

namespace slotpag {

// All-or-One requests: general <p,*> or specific <p,j>.  The algorithm
// caches request times, one per slot.  Every request time t carries a
// credit; every specific request time a capacity.  A general miss raises
// all capacities of the most recent specific request per slot and all
// credits of cached requests at unit rate, evicting requests whose credit
// reaches their page weight, until more slots are usable (capacity at least
// half the requested weight, no specific occupant) than are blocked by
// heavy general occupants.  The run starts with one artificial zero-weight
// specific request per slot, so request times 1..k are a prologue and the
// input occupies times k+1..k+T.
struct WaooRaiseEvent {
  Rat delta;
  std::vector<long long> cached;        // request times raised
  std::vector<long long> ell;           // per slot: capacity owner raised
  std::vector<long long> evicted;       // evicted when the segment ended
};

struct WaooStepTrace {
  long long t = 0;
  bool general = false;
  bool fault = false;
  std::vector<WaooRaiseEvent> events;
};

struct WaooResult {
  Schedule schedule;  // aligned to the input requests
  Rat cost = 0;       // weighted retrievals of the emitted schedule
  Rat phi = 0;        // final sum of credits and capacities
  std::vector<WaooStepTrace> trace;           // one entry per request time
  std::map<long long, Rat> credit;            // final, by request time
  std::map<long long, Rat> capacity;          // final, specific times only
  std::vector<PageId> page_of;                // by request time, 1-based
  std::vector<int> slot_of;                   // 0 for general requests
};

inline WaooResult weighted_all_or_one(const RequestSequence& seq,
                                      const WeightMap& w) {
  const int k = seq.k;
  for (const Request& r : seq.requests)
    if (r.slots != full_slots(k) && slot_count(r.slots) != 1)
      throw std::invalid_argument(
          "weighted_all_or_one: requests must be general or single-slot");

  WaooResult out;
  out.page_of.assign(1, kNoPage);  // index 0 unused
  out.slot_of.assign(1, 0);

  std::vector<long long> cache(k + 1, 0);      // slot -> cached time, 0 empty
  std::vector<long long> last_specific(k + 1, 0);
  auto is_specific = [&](long long t) { return out.slot_of[t] != 0; };
  auto weight_of_time = [&](long long t) { return w.weight(out.page_of[t]); };

  auto serve_specific = [&](long long t, PageId p, int s) {
    WaooStepTrace st{t, false, false, {}};
    long long occ = cache[s];
    if (occ && is_specific(occ) && out.page_of[occ] == p) {
      // An equivalent request is cached; redundant requests leave all
      // state alone, so the run matches the run on the stripped sequence.
      out.trace.push_back(std::move(st));
      return;
    }
    st.fault = true;
    last_specific[s] = t;
    for (int j = 1; j <= k; ++j)
      if (cache[j] && !is_specific(cache[j]) && out.page_of[cache[j]] == p)
        cache[j] = 0;
    cache[s] = t;
    out.credit[t] = 0;
    out.capacity[t] = 0;
    out.trace.push_back(std::move(st));
  };

  auto serve_general = [&](long long t, PageId p) {
    WaooStepTrace st{t, true, false, {}};
    for (int j = 1; j <= k; ++j)
      if (cache[j] && out.page_of[cache[j]] == p) {
        out.trace.push_back(std::move(st));
        return;
      }
    st.fault = true;
    Rat half = w.weight(p) / 2;

    auto in_A = [&](int j) {
      return out.capacity[last_specific[j]] >= half &&
             !(cache[j] && is_specific(cache[j]));
    };
    auto in_B = [&](int j) {
      return cache[j] && !is_specific(cache[j]) &&
             weight_of_time(cache[j]) >= half;
    };
    auto sizes = [&]() {
      int a = 0, b = 0;
      for (int j = 1; j <= k; ++j) {
        if (in_A(j)) ++a;
        if (in_B(j)) ++b;
      }
      return std::pair<int, int>{a, b};
    };

    while (true) {
      auto [a, b] = sizes();
      if (a > b) break;
      bool have = false;
      Rat delta = 0;
      auto consider = [&](const Rat& cand) {
        if (!have || cand < delta) {
          delta = cand;
          have = true;
        }
      };
      for (int j = 1; j <= k; ++j)
        if (cache[j]) consider(weight_of_time(cache[j]) - out.credit[cache[j]]);
      for (int j = 1; j <= k; ++j)
        if (out.capacity[last_specific[j]] < half)
          consider(half - out.capacity[last_specific[j]]);
      if (!have)
        throw std::logic_error("weighted_all_or_one: stuck raise loop");
      if (delta < 0)
        throw std::logic_error("weighted_all_or_one: credit above weight");

      WaooRaiseEvent ev;
      ev.delta = delta;
      for (int j = 1; j <= k; ++j) {
        ev.ell.push_back(last_specific[j]);
        out.capacity[last_specific[j]] += delta;
      }
      std::vector<long long> cached_now;
      for (int j = 1; j <= k; ++j)
        if (cache[j]) cached_now.push_back(cache[j]);
      std::sort(cached_now.begin(), cached_now.end());
      for (long long t2 : cached_now) out.credit[t2] += delta;
      ev.cached = cached_now;
      for (long long t2 : cached_now)
        if (out.credit[t2] == weight_of_time(t2)) {
          ev.evicted.push_back(t2);
          for (int j = 1; j <= k; ++j)
            if (cache[j] == t2) cache[j] = 0;
        }
      st.events.push_back(std::move(ev));
    }

    int chosen = 0;
    for (int j = 1; j <= k; ++j)
      if (in_A(j) && !in_B(j)) {
        chosen = j;
        break;
      }
    if (!chosen)
      throw std::logic_error("weighted_all_or_one: no usable slot after raise");
    cache[chosen] = t;
    out.credit[t] = 0;
    out.trace.push_back(std::move(st));
  };

  // Prologue: one zero-weight specific request per slot.
  long long t = 0;
  for (int j = 1; j <= k; ++j) {
    ++t;
    out.page_of.push_back(0);
    out.slot_of.push_back(j);
    serve_specific(t, 0, j);
  }
  for (const Request& r : seq.requests) {
    ++t;
    out.page_of.push_back(r.page);
    bool general = r.slots == full_slots(k);
    out.slot_of.push_back(general ? 0 : lowest_slot(r.slots));
    if (general)
      serve_general(t, r.page);
    else
      serve_specific(t, r.page, lowest_slot(r.slots));

    CacheConfig cfg(k);
    for (int j = 1; j <= k; ++j)
      if (cache[j]) cfg.put(j, out.page_of[cache[j]]);
    out.schedule.push_back(std::move(cfg));
  }

  out.cost = schedule_cost_weighted(out.schedule, k, w);
  for (const auto& [time, c] : out.credit) out.phi += c;
  for (const auto& [time, c] : out.capacity) out.phi += c;
  return out;
}

}  // namespace slotpag
