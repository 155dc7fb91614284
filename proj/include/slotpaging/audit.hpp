#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/oracle.hpp"
#include "slotpaging/weighted_aoo.hpp"

namespace slotpag {

// Replays a weighted All-or-One run against an exact optimum and checks the
// accounting that the competitive bound rests on:
//   - the pseudo-cost charged to the optimum is at most twice its cost,
//   - during every raise segment the uncovered pseudo-cost shrinks at least
//     as fast as the raise,
//   - the potential grows at most 2k per unit of raise,
//   - no credit ever exceeds its page weight.
// The accounting is defined on the redundancy-free sequence: requests the
// algorithm classified as redundant are dropped (they change neither the
// run nor the optimal cost, which can only shrink).  The optimum is computed
// over the run's prologue, the stripped input, and a zero-weight epilogue
// pinning every slot, so every real page is evicted by the end; the padding
// is free.
struct AuditResult {
  bool ok = true;
  std::vector<std::string> failures;
  Rat opt_cost = 0;
  Rat pseudo_cost = 0;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

inline AuditResult primal_dual_audit(const RequestSequence& seq,
                                     const WeightMap& w, const WaooResult& run,
                                     const Caps& caps = {}) {
  AuditResult out;
  const int k = seq.k;

  // Drop redundant requests; the trace marks every other request as a fault.
  RequestSequence padded;
  padded.k = k;
  std::map<long long, long long> reduced_of;  // algorithm time -> padded time
  for (const WaooStepTrace& st : run.trace) {
    if (!st.fault) continue;
    long long t = st.t;
    if (t <= k)
      padded.requests.push_back({0, slot_bit(static_cast<int>(t))});
    else
      padded.requests.push_back(seq.requests[t - k - 1]);
    reduced_of[t] = static_cast<long long>(padded.requests.size());
  }
  const long long talg = static_cast<long long>(padded.requests.size());
  for (int j = 1; j <= k; ++j) padded.requests.push_back({0, slot_bit(j)});
  const long long tend = static_cast<long long>(padded.requests.size());

  OptResult opt = opt_bruteforce(padded, w, caps);
  out.opt_cost = opt.cost;

  auto page_at = [&](long long t) { return padded.requests[t - 1].page; };
  auto spec_slot_at = [&](long long t) {
    SlotSet s = padded.requests[t - 1].slots;
    return s == full_slots(k) ? 0 : lowest_slot(s);
  };
  auto cfg = [&](long long t, int j) -> PageId {
    return t == 0 ? kNoPage : opt.schedule[t - 1].at(j);
  };

  // Slot the optimum uses to serve each request.
  std::vector<int> served_by(tend + 1, 0);
  for (long long t = 1; t <= tend; ++t) {
    int s = spec_slot_at(t);
    if (s) {
      served_by[t] = s;
      continue;
    }
    for (int j = 1; j <= k; ++j)
      if (cfg(t, j) == page_at(t)) {
        served_by[t] = j;
        break;
      }
    if (!served_by[t]) out.fail("optimum misses request " + std::to_string(t));
  }
  if (!out.ok) return out;

  // x[t]: the optimum drops the page/slot pair that served t before that
  // pair serves again.
  std::vector<int> x(talg + 1, 0);
  for (long long t = 1; t <= talg; ++t) {
    int s = served_by[t];
    PageId p = page_at(t);
    for (long long t2 = t + 1; t2 <= tend; ++t2) {
      if (cfg(t2, s) != p) {
        x[t] = 1;
        break;
      }
      if (served_by[t2] == s && page_at(t2) == p) break;
    }
  }

  // y[t] for specific t: what the optimum pays to retrieve into t's slot
  // before the next specific request to that slot.
  std::map<long long, Rat> y;
  for (long long t = 1; t <= talg; ++t) {
    int s = spec_slot_at(t);
    if (!s) continue;
    long long nxt = tend + 1;
    for (long long t2 = t + 1; t2 <= tend; ++t2)
      if (spec_slot_at(t2) == s) {
        nxt = t2;
        break;
      }
    Rat total = 0;
    for (long long t2 = t + 1; t2 < nxt; ++t2)
      if (cfg(t2, s) != kNoPage && cfg(t2, s) != cfg(t2 - 1, s))
        total += w.weight(cfg(t2, s));
    y[t] = total;
  }

  for (long long t = 1; t <= talg; ++t)
    out.pseudo_cost += w.weight(page_at(t)) * x[t];
  for (const auto& [t, yt] : y) out.pseudo_cost += yt;
  if (!(out.pseudo_cost <= 2 * out.opt_cost))
    out.fail("pseudo-cost exceeds twice the optimum");

  // Replay the raise segments.
  std::map<long long, Rat> credit, capacity;
  auto residual = [&]() {
    Rat total = 0;
    for (const auto& [t, c] : credit) {
      Rat term = w.weight(page_at(t)) * x[t] - c;
      if (term > 0) total += term;
    }
    for (const auto& [t, c] : capacity) {
      auto it = y.find(t);
      if (it == y.end()) continue;
      Rat term = it->second - c;
      if (term > 0) total += term;
    }
    return total;
  };

  Rat phi = 0;
  for (const WaooStepTrace& st : run.trace) {
    if (!st.fault) continue;             // redundant, stripped
    long long rt = reduced_of.at(st.t);
    credit[rt];                          // starts at zero
    if (!st.general) capacity[rt];
    for (const WaooRaiseEvent& ev : st.events) {
      Rat before = residual();
      for (long long ell : ev.ell) capacity[reduced_of.at(ell)] += ev.delta;
      for (long long t2 : ev.cached) credit[reduced_of.at(t2)] += ev.delta;
      Rat after = residual();
      if (!(before - after >= ev.delta))
        out.fail("residual fell slower than the raise at time " +
                 std::to_string(st.t));
      Rat growth = ev.delta * static_cast<long long>(ev.ell.size() +
                                                     ev.cached.size());
      if (!(growth <= 2 * k * ev.delta))
        out.fail("potential grew faster than 2k per unit at time " +
                 std::to_string(st.t));
      phi += growth;
      for (long long t2 : ev.cached)
        if (credit[reduced_of.at(t2)] > w.weight(page_at(reduced_of.at(t2))))
          out.fail("credit above weight at time " + std::to_string(st.t));
    }
  }
  if (phi != run.phi) out.fail("replayed potential disagrees with the run");
  if (!(run.cost <= 6 * run.phi + 3 * out.opt_cost))
    out.fail("cost bound 6*phi + 3*opt violated");
  return out;
}

}  // namespace slotpag
