// Acceptance checks: one pass/fail line per criterion, nonzero exit on any
// failure.  Bounds are asserted as hard inequalities at desk scale with all
// tolerances pinned below.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "slotpaging/adversary.hpp"
#include "slotpaging/audit.hpp"
#include "slotpaging/gen.hpp"
#include "slotpaging/online.hpp"
#include "slotpaging/oracle.hpp"
#include "slotpaging/page_laminar.hpp"
#include "slotpaging/ref_search.hpp"
#include "slotpaging/registry.hpp"
#include "slotpaging/repair.hpp"
#include "slotpaging/slot_laminar.hpp"
#include "slotpaging/vc.hpp"
#include "slotpaging/weighted_aoo.hpp"

using namespace slotpag;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void report(int number, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", number, ok ? "pass" : "FAIL",
              what.c_str());
  if (!ok) ++failures;
}

// 1. Every algorithm yields a valid schedule on >= 500 seeded instances.
void criterion_validity() {
  auto start = std::chrono::steady_clock::now();
  int instances = 0;
  std::string detail;
  bool ok = true;
  for (const std::string& name : online_algorithm_names())
    for (std::uint64_t seed = 1; seed <= 40 && ok; ++seed) {
      int k = 2 + static_cast<int>(seed % 3);
      bool laminar = algorithm_needs_laminar(name) || seed % 2 == 0;
      RequestSequence seq = gen_random_instance(k, laminar, 6, 25, seed);
      try {
        auto alg = make_online_algorithm(name, seed);
        run_online(*alg, seq);  // validates the schedule
      } catch (const std::exception& e) {
        ok = false;
        detail = name + " seed " + std::to_string(seed) + ": " + e.what();
      }
      ++instances;
    }
  for (const std::string& inner : {std::string("lru"), std::string("fifo"),
                                   std::string("marker"),
                                   std::string("belady")})
    for (std::uint64_t seed = 1; seed <= 15 && ok; ++seed) {
      PageSetSequence seq = gen_page_laminar_instance(4, 6, 25, seed);
      try {
        page_laminar_run(seq, inner, seed);  // throws on an unserved request
      } catch (const std::exception& e) {
        ok = false;
        detail = "pl:" + inner + " seed " + std::to_string(seed) + ": " +
                 e.what();
      }
      ++instances;
    }
  for (std::uint64_t seed = 1; seed <= 40 && ok; ++seed) {
    RequestSequence seq = gen_aoo_instance(4, 6, 25, seed);
    WeightMap w = gen_random_weights(6, seed);
    try {
      WaooResult run = weighted_all_or_one(seq, w);
      if (auto err = validate_schedule(seq, run.schedule)) {
        ok = false;
        detail = "waoo seed " + std::to_string(seed) + ": " + *err;
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = "waoo seed " + std::to_string(seed) + ": " + e.what();
    }
    ++instances;
  }
  double secs = seconds_since(start);
  ok = ok && instances >= 500 && secs < 60.0;
  report(1, ok,
         "validity sweep: " + std::to_string(instances) + " instances in " +
             std::to_string(secs).substr(0, 5) + "s" +
             (detail.empty() ? "" : " (" + detail + ")"));
}

// 2. Exhaustive-search phase lengths stay within min(mass, closure size).
void criterion_exh_phase_bound() {
  bool ok = true;
  std::string detail = "phase fault counts <= min(mass, closure)";
  for (std::uint64_t seed = 1; seed <= 120 && ok; ++seed) {
    RequestSequence seq = gen_random_instance(4, seed % 2 == 0, 6, 25, seed);
    FamilyStats st = family_stats(seq.k, seq.family);
    std::size_t bound = std::min<std::size_t>(st.mass, *st.closure_size);
    ExhSearch alg;
    OnlineRun run = run_online(alg, seq);
    for (int faults : run.phase_fault_counts)
      if (static_cast<std::size_t>(faults) > bound) {
        ok = false;
        detail = "seed " + std::to_string(seed) + ": phase " +
                 std::to_string(faults) + " > " + std::to_string(bound);
      }
  }
  report(2, ok, detail);
}

// 3. Refill-search per-phase cost <= 2 mass - k, total <= (2 mass - k)(opt+1).
void criterion_ref_bounds() {
  bool ok = true;
  int solvable = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 150 && ok; ++seed) {
    std::mt19937_64 rng(seed);
    SlotSetFamily fam = gen_laminar_family(4, rng);
    RequestSequence seq = gen_requests(4, fam, 6, 25, rng);
    FamilyStats st = family_stats(seq.k, seq.family);
    int bound = 2 * st.mass - seq.k;
    RefSearch alg;
    OnlineRun run = run_online(alg, seq);
    for (int c : alg.phase_costs())
      if (c > bound) {
        ok = false;
        detail = "seed " + std::to_string(seed) + ": phase cost " +
                 std::to_string(c) + " > " + std::to_string(bound);
      }
    try {
      OptResult opt = opt_bruteforce(seq);
      if (!(Rat(run.cost) <= Rat(bound) * (opt.cost + 1))) {
        ok = false;
        detail = "seed " + std::to_string(seed) + ": total cost above bound";
      }
      ++solvable;
    } catch (const CapError&) {
    }
  }
  ok = ok && solvable >= 50;
  if (detail.empty())
    detail = "per-phase <= 2 mass - k on 150 runs, total bound on " +
             std::to_string(solvable) + " oracle-solvable runs";
  report(3, ok, detail);
}

// 4. Page-set reduction: belady inner <= h opt, lru inner <= h k opt + h k,
// and the worked example's induced sequence is reproduced exactly.
void criterion_page_laminar() {
  bool ok = true;
  int solvable = 0;
  std::string detail;
  for (std::uint64_t seed = 1; solvable < 200 && seed <= 2000 && ok; ++seed) {
    PageSetSequence seq = gen_page_laminar_instance(3, 6, 20, seed);
    OptResult opt;
    try {
      opt = opt_bruteforce(seq);
    } catch (const CapError&) {
      continue;
    }
    ++solvable;
    LaminarForest forest = LaminarForest::build(seq.family);
    Rat h = std::max(1, forest.height());
    Rat k = seq.k;
    PageLaminarRun belady = page_laminar_run(seq, "belady", seed);
    PageLaminarRun lru = page_laminar_run(seq, "lru", seed);
    if (!(Rat(belady.inner.cost) <= h * opt.cost) ||
        !(Rat(lru.inner.cost) <= h * k * opt.cost + h * k)) {
      ok = false;
      detail = "seed " + std::to_string(seed) + ": inner cost above bound";
    }
  }
  ok = ok && solvable >= 200;

  const PageId a = 1, b = 2, c = 3, d = 4, e = 5, g = 6, h = 7, kk = 8, l = 9;
  PageSetSequence ex;
  ex.k = 4;
  ex.family = {{a, b, c, d}, {a, b}, {c},      {d}, {e, g, h, kk, l},
               {e, g, h},    {e, g}, {e},      {g}, {h},
               {kk, l},      {l}};
  ex.requests = {{a, b, c, d},
                 {a, b},
                 {e, g},
                 {e, g, h, kk, l},
                 {c},
                 {l},
                 {a, b, c, d},
                 {h},
                 {d},
                 {e, g, h, kk, l},
                 {g},
                 {a, b},
                 {e, g},
                 {a, b, c, d},
                 {d},
                 {e, g, h, kk, l},
                 {kk, l},
                 {a, b, c, d},
                 {e, g, h}};
  std::vector<PageId> want{a, a, e, e, c, l, c, h, d, h,
                           g, a, g, a, d, g, l, d, g};
  if (induced_page_sequence(ex) != want) {
    ok = false;
    detail = "worked example's induced sequence differs";
  }
  if (detail.empty())
    detail = "inner-cost bounds on " + std::to_string(solvable) +
             " solvable instances; worked example reproduced";
  report(4, ok, detail);
}

// 5. Repair keeps solutions valid, raises each phase by at most one, and
// multiplies the cost by at most h.
void criterion_repair() {
  bool ok = true;
  int checked = 0;
  std::string detail;
  for (std::uint64_t seed = 1; checked < 200 && seed <= 2000 && ok; ++seed) {
    PageSetSequence seq = gen_page_laminar_instance(3, 6, 20, seed);
    OptResult opt;
    try {
      opt = opt_bruteforce(seq);
    } catch (const CapError&) {
      continue;
    }
    ++checked;
    std::vector<std::vector<PageId>> sol;
    for (const CacheConfig& cfg : opt.schedule) {
      std::vector<PageId> cur;
      for (int j = 1; j <= seq.k; ++j)
        if (cfg.at(j) != kNoPage) cur.push_back(cfg.at(j));
      sol.push_back(cur);
    }
    RepairResult rep = repair_phases(seq, sol);
    LaminarForest forest = LaminarForest::build(seq.family);
    std::size_t h = std::max(1, forest.height());
    PageSetSequence singles;
    singles.k = seq.k;
    for (PageId p : rep.induced) singles.requests.push_back({p});
    if (rep.max_phase_increase > 1 || rep.cost_after > h * rep.cost_before ||
        validate_pageset_solution(singles, rep.repaired).has_value()) {
      ok = false;
      detail = "seed " + std::to_string(seed) + ": repair bound violated";
    }
  }
  ok = ok && checked >= 200;
  if (detail.empty())
    detail = "valid, per-phase <= 1, cost <= h*cost on " +
             std::to_string(checked) + " instances";
  report(5, ok, detail);
}

// 6. Slot-laminar reduction: invariants hold after every request, the
// virtual root pays at most 3x the inner engines, and the belady-backed
// stack stays within 3 h^2 k (opt + 1) end to end.
void criterion_slot_laminar() {
  bool ok = true;
  int solvable = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 120 && ok; ++seed) {
    std::mt19937_64 rng(seed);
    SlotSetFamily fam = gen_laminar_family(4, rng);
    RequestSequence seq = gen_requests(4, fam, 6, 25, rng);
    SlotLaminar alg("belady", seed, true);  // invariants after every request
    OnlineRun run;
    try {
      run = run_online(alg, seq);
    } catch (const std::exception& e) {
      ok = false;
      detail = "seed " + std::to_string(seed) + ": " + e.what();
      break;
    }
    if (alg.virtual_root_cost() > 3 * alg.inner_cost()) {
      ok = false;
      detail = "seed " + std::to_string(seed) + ": root above 3x inner";
    }
    try {
      OptResult opt = opt_bruteforce(seq);
      FamilyStats st = family_stats(seq.k, seq.family);
      Rat h = std::max<int>(1, st.height);
      Rat bound = 3 * h * h * seq.k * (opt.cost + 1);
      if (!(Rat(run.cost) <= bound)) {
        ok = false;
        detail = "seed " + std::to_string(seed) + ": end-to-end above " +
                 "3 h^2 k (opt+1)";
      }
      ++solvable;
    } catch (const CapError&) {
    }
  }
  ok = ok && solvable >= 40;
  if (detail.empty())
    detail = "invariants + root bound on 120 runs, end-to-end bound on " +
             std::to_string(solvable) + " oracle-solvable runs";
  report(6, ok, detail);
}

// 7. Weighted all-or-one: cost <= 6 phi + 3 opt with exact rationals,
// credits never above weights, and the squeeze instance behaves as derived.
void criterion_weighted() {
  bool ok = true;
  int audited = 0;
  std::string detail;
  for (std::uint64_t seed = 1; audited < 200 && seed <= 2000 && ok; ++seed) {
    RequestSequence seq = gen_aoo_instance(2, 4, 10, seed);
    WeightMap w = gen_random_weights(4, seed + 1000);
    WaooResult run = weighted_all_or_one(seq, w);
    Caps caps;
    caps.oracle_max_t = 10 + 2 * seq.k + 4;
    AuditResult audit;
    try {
      audit = primal_dual_audit(seq, w, run, caps);
    } catch (const CapError&) {
      continue;
    }
    ++audited;
    if (!audit.ok || !(run.cost <= 6 * run.phi + 3 * audit.opt_cost)) {
      ok = false;
      detail = "seed " + std::to_string(seed) + ": " +
               (audit.failures.empty() ? "cost bound" : audit.failures.front());
    }
  }
  ok = ok && audited >= 200;

  {
    RequestSequence seq;
    seq.k = 2;
    seq.family = {full_slots(2), make_slots({1}), make_slots({2})};
    WeightMap w;
    PageId next = 2;
    for (int r = 0; r < 5; ++r) {
      seq.requests.push_back({1, full_slots(2)});
      w.weight_of[next] = Rat(0);
      seq.requests.push_back({next++, make_slots({1})});
      w.weight_of[next] = Rat(0);
      seq.requests.push_back({next++, make_slots({2})});
    }
    Caps caps;
    caps.oracle_max_pages = 16;
    caps.oracle_max_t = 32;
    OptResult opt = opt_bruteforce(seq, w, caps);
    WaooResult run = weighted_all_or_one(seq, w);
    if (opt.cost != Rat(5) || !(run.cost <= Rat(51) * 5)) {
      ok = false;
      detail = "squeeze instance: opt or cost off";
    }
  }
  if (detail.empty())
    detail = "6 phi + 3 opt exact on " + std::to_string(audited) +
             " instances; squeeze opt = 5";
  report(7, ok, detail);
}

// 8. Two-page adversary at k=5 forces ratio_lb >= 9.95 over 500 rounds.
void criterion_two_page() {
  auto start = std::chrono::steady_clock::now();
  GZFamilies f = family_half_subsets(5);
  ExhSearch alg;
  TwoPageResult r = two_page_adversary(f, alg, 500);
  double secs = seconds_since(start);
  bool ok = r.ratio_lb >= 9.95 && r.max_faulting_strategies <= 1 &&
            secs < 30.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "k=5, 500 rounds: ratio_lb %.3f in %.2fs",
                r.ratio_lb, secs);
  report(8, ok, buf);
}

// 9. Cycle families pass the structural checks with exact sizes.
void criterion_cycle_families() {
  bool ok = true;
  std::string detail = "(9,4) |G|=27, (15,4) |G|=75, (35,6) |G|=3430";
  struct Case {
    int k, m;
    std::size_t size;
    bool exhaustive;
  };
  for (Case c : {Case{9, 4, 27, true}, Case{15, 4, 75, true},
                 Case{35, 6, 3430, false}}) {
    CycleFamilies fam = family_cycles(c.k, c.m);
    GZCheckResult r = check_gz(fam.gz);
    if (!r.ok || r.gz0_checked != c.exhaustive ||
        fam.gz.G.size() != c.size || fam.gz.Z.size() != c.size) {
      ok = false;
      detail = "(" + std::to_string(c.k) + "," + std::to_string(c.m) +
               ") failed: " +
               (r.violations.empty() ? "size mismatch" : r.violations.front());
    }
  }
  report(9, ok, detail);
}

// 10. Forcing sequences pin their configuration sets exactly.
void criterion_forcing() {
  bool ok = true;
  std::string detail;
  for (int k : {4, 6}) {
    BalancedConfigSet c = greedy_balanced_code(k);
    RequestSequence psi = forcing_sequence(c);
    if (!verify_forcing(c, psi)) {
      ok = false;
      detail = "k=" + std::to_string(k) + ": satisfier set differs from C";
    }
  }
  if (detail.empty()) detail = "exhaustive satisfier check at k=4 and k=6";
  report(10, ok, detail);
}

// 11. Repeat adversary squeezes slot-lru to a mean ratio >= 3 at k=4.
void criterion_aoo_adversary() {
  auto start = std::chrono::steady_clock::now();
  double total = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto alg = make_online_algorithm("lru", seed);
    AooAdversaryResult r = all_or_one_adversary(4, 200, 64, seed, *alg);
    total += r.ratio;
  }
  double mean = total / 20.0;
  double secs = seconds_since(start);
  bool ok = mean >= 3.0 && secs < 60.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "k=4, 200 phases, 64 reps, 20 seeds: mean ratio %.3f in %.2fs",
                mean, secs);
  report(11, ok, buf);
}

// 12. Vertex-cover reduction: exact parameters, a cover schedule with
// exactly F faults, and opt <= F iff a cover exists on micro graphs.
void criterion_vc() {
  bool ok = true;
  std::string detail;
  VCGraph tri;
  tri.n = 3;
  tri.k = 2;
  tri.edges = {{0, 1}, {1, 2}, {0, 2}};
  VCReduction red = vc_reduce(tri);
  if (red.m != 4 || red.P != 3 || red.B != 12 || red.F_prime != 72 ||
      red.F != 135) {
    ok = false;
    detail = "triangle parameters off";
  }
  Schedule sol = vc_solution_from_cover(red, tri, {0, 1});
  if (validate_schedule(red.seq, sol).has_value() ||
      Rat(schedule_cost(sol, red.seq.k)) != Rat(red.F)) {
    ok = false;
    detail = "cover schedule invalid or not exactly F faults";
  }

  VCGraph single;
  single.n = 2;
  single.k = 1;
  single.edges = {{0, 1}};
  VCReduction yes = vc_reduce(single);
  Caps caps;
  caps.oracle_max_pages = 128;
  caps.oracle_max_t = 256;
  caps.oracle_max_states = 4'000'000;
  if (opt_bruteforce(yes.seq, {}, caps).cost > Rat(yes.F)) {
    ok = false;
    detail = "covered single edge: opt above F";
  }
  VCGraph tri1 = tri;
  tri1.k = 1;  // no vertex cover of size 1
  VCReduction no = vc_reduce(tri1);
  if (opt_bruteforce(no.seq, {}, caps).cost <= Rat(no.F)) {
    ok = false;
    detail = "uncoverable triangle: opt within F";
  }
  if (detail.empty())
    detail = "parameters exact; opt <= F iff a size-k cover exists";
  report(12, ok, detail);
}

// 13. The brute-force oracle matches belady on standard paging.
void criterion_oracle_belady() {
  bool ok = true;
  std::string detail;
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 500 && ok; ++seed) {
    int k = 2 + static_cast<int>(seed % 2);
    RequestSequence seq = gen_standard_instance(k, 5, 20, seed);
    std::vector<PageId> pages;
    for (const Request& r : seq.requests) pages.push_back(r.page);
    auto engine = make_paging_engine("belady", 0);
    if (auto* b = dynamic_cast<BeladyEngine*>(engine.get()))
      b->set_future(pages);
    PagingRun belady = run_paging(*engine, k, pages);
    OptResult opt = opt_bruteforce(seq);
    if (opt.cost != Rat(belady.cost)) {
      ok = false;
      detail = "seed " + std::to_string(seed) + ": oracle " +
               opt.cost.str() + " vs belady " + std::to_string(belady.cost);
    }
    ++checked;
  }
  ok = ok && checked >= 500;
  if (detail.empty())
    detail = "oracle == belady on " + std::to_string(checked) + " instances";
  report(13, ok, detail);
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  criterion_validity();
  criterion_exh_phase_bound();
  criterion_ref_bounds();
  criterion_page_laminar();
  criterion_repair();
  criterion_slot_laminar();
  criterion_weighted();
  criterion_two_page();
  criterion_cycle_families();
  criterion_forcing();
  criterion_aoo_adversary();
  criterion_vc();
  criterion_oracle_belady();
  std::printf("%d of 13 criteria passed in %.1fs\n", 13 - failures,
              seconds_since(start));
  return failures == 0 ? 0 : 1;
}
