#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/laminar.hpp"

namespace slotpag {

class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual void reset(int k, const SlotSetFamily& family) = 0;
  virtual void serve(const Request& r) = 0;
  virtual const CacheConfig& config() const = 0;
};

// Implemented by algorithms with an offline component; run_online hands
// them the whole request stream after reset.
class NeedsFuture {
 public:
  virtual ~NeedsFuture() = default;
  virtual void set_future(std::vector<Request> future) = 0;
};

struct OnlineRun {
  Schedule schedule;
  std::size_t cost = 0;
  std::vector<int> phase_starts;            // 1-based, when phase-based
  std::vector<int> phase_fault_counts;      // faulting steps per phase
};

// Per-phase exhaustive search: keep the current configuration while it
// satisfies the request; otherwise recompute a configuration satisfying
// every request of the phase, opening a new phase when that is impossible.
// Recomputation minimizes retrievals from the previous configuration, with
// ties resolved by the deterministic search order (requests by (page, slot
// set), slots ascending).
class ExhSearch : public OnlineAlgorithm {
 public:
  explicit ExhSearch(const Caps& caps = {}) : caps_(caps) {}

  void reset(int k, const SlotSetFamily& family) override {
    k_ = k;
    family_ = family;
    config_ = CacheConfig(k);
    phase_.clear();
    phase_starts_.clear();
    phase_fault_counts_.clear();
    t_ = 0;
  }

  void serve(const Request& r) override {
    ++t_;
    if (phase_starts_.empty()) {
      phase_starts_.push_back(t_);
      phase_fault_counts_.push_back(0);
    }
    if (config_.satisfies(r)) {
      add_to_phase(r);
      return;
    }
    if (std::find(phase_.begin(), phase_.end(), r) != phase_.end())
      throw std::logic_error("ExhSearch: faulting request already in phase");
    std::vector<Request> with_r = phase_;
    with_r.push_back(r);
    if (!is_satisfiable(k_, family_, with_r, caps_)) {
      phase_.clear();
      phase_starts_.push_back(t_);
      phase_fault_counts_.push_back(0);
      with_r = {r};
    }
    config_ = min_change_config(with_r);
    phase_ = std::move(with_r);
    ++phase_fault_counts_.back();
  }

  const CacheConfig& config() const override { return config_; }

  const std::vector<int>& phase_starts() const { return phase_starts_; }
  const std::vector<int>& phase_fault_counts() const {
    return phase_fault_counts_;
  }

 private:
  void add_to_phase(const Request& r) {
    if (std::find(phase_.begin(), phase_.end(), r) == phase_.end())
      phase_.push_back(r);
  }

  // Cheapest configuration (fewest retrievals from the current one)
  // satisfying all given requests; assumes the set is satisfiable.
  CacheConfig min_change_config(std::vector<Request> reqs) const {
    std::sort(reqs.begin(), reqs.end());
    reqs.erase(std::unique(reqs.begin(), reqs.end()), reqs.end());

    std::vector<PageId> assigned(k_, kNoPage);
    std::vector<PageId> best;
    int best_cost = std::numeric_limits<int>::max();

    auto rec = [&](auto&& self, std::size_t i, int cost) -> void {
      if (cost >= best_cost) return;
      if (i == reqs.size()) {
        best = assigned;
        best_cost = cost;
        return;
      }
      const Request& r = reqs[i];
      for (int j : slot_list(r.slots))
        if (assigned[j - 1] == r.page) {
          self(self, i + 1, cost);
          return;
        }
      for (int j : slot_list(r.slots)) {
        if (assigned[j - 1] != kNoPage) continue;
        int extra = config_.at(j) == r.page ? 0 : 1;
        assigned[j - 1] = r.page;
        self(self, i + 1, cost + extra);
        assigned[j - 1] = kNoPage;
      }
    };
    rec(rec, 0, 0);
    if (best_cost == std::numeric_limits<int>::max())
      throw std::logic_error("ExhSearch: unsatisfiable request set");

    CacheConfig out = config_;
    for (int j = 1; j <= k_; ++j)
      if (best[j - 1] != kNoPage) out.put(j, best[j - 1]);
    return out;
  }

  Caps caps_;
  int k_ = 0;
  SlotSetFamily family_;
  CacheConfig config_;
  std::vector<Request> phase_;  // distinct requests of the current phase
  std::vector<int> phase_starts_;
  std::vector<int> phase_fault_counts_;
  int t_ = 0;
};

// Slot-aware baseline: on a miss for <p,S>, the victim slot is chosen
// inside S by the usual policy.  On all-slot traces these coincide with the
// classic page-based algorithms.
class SlotLru : public OnlineAlgorithm {
 public:
  void reset(int k, const SlotSetFamily&) override {
    config_ = CacheConfig(k);
    last_use_.assign(k, 0);
    t_ = 0;
  }

  void serve(const Request& r) override {
    ++t_;
    for (int j : slot_list(r.slots))
      if (config_.at(j) == r.page) {
        last_use_[j - 1] = t_;
        return;
      }
    int victim = 0;
    for (int j : slot_list(r.slots))
      if (victim == 0 || last_use_[j - 1] < last_use_[victim - 1]) victim = j;
    config_.put(victim, r.page);
    last_use_[victim - 1] = t_;
  }

  const CacheConfig& config() const override { return config_; }

 private:
  CacheConfig config_;
  std::vector<long long> last_use_;
  long long t_ = 0;
};

class SlotFifo : public OnlineAlgorithm {
 public:
  void reset(int k, const SlotSetFamily&) override {
    config_ = CacheConfig(k);
    loaded_at_.assign(k, 0);
    t_ = 0;
  }

  void serve(const Request& r) override {
    ++t_;
    if (config_.satisfies(r)) return;
    int victim = 0;
    for (int j : slot_list(r.slots))
      if (victim == 0 || loaded_at_[j - 1] < loaded_at_[victim - 1]) victim = j;
    config_.put(victim, r.page);
    loaded_at_[victim - 1] = t_;
  }

  const CacheConfig& config() const override { return config_; }

 private:
  CacheConfig config_;
  std::vector<long long> loaded_at_;
  long long t_ = 0;
};

class SlotMarker : public OnlineAlgorithm {
 public:
  explicit SlotMarker(std::uint64_t seed) : rng_(seed) {}

  void reset(int k, const SlotSetFamily&) override {
    config_ = CacheConfig(k);
    marked_.assign(k, false);
  }

  void serve(const Request& r) override {
    for (int j : slot_list(r.slots))
      if (config_.at(j) == r.page) {
        marked_[j - 1] = true;
        return;
      }
    std::vector<int> unmarked;
    for (int j : slot_list(r.slots))
      if (!marked_[j - 1]) unmarked.push_back(j);
    if (unmarked.empty()) {
      marked_.assign(config_.k(), false);
      unmarked = slot_list(r.slots);
    }
    std::uniform_int_distribution<std::size_t> pick(0, unmarked.size() - 1);
    int victim = unmarked[pick(rng_)];
    config_.put(victim, r.page);
    marked_[victim - 1] = true;
  }

  const CacheConfig& config() const override { return config_; }

 private:
  CacheConfig config_;
  std::vector<bool> marked_;
  std::mt19937_64 rng_;
};

// Offline baseline: victim is the slot in S whose current content is needed
// farthest in the future (a slot j is needed at t' when the request there
// can be served by its current page in slot j).
class SlotBelady : public OnlineAlgorithm, public NeedsFuture {
 public:
  void set_future(std::vector<Request> future) override {
    future_ = std::move(future);
    pos_ = 0;
  }

  void reset(int k, const SlotSetFamily&) override {
    config_ = CacheConfig(k);
    pos_ = 0;
  }

  void serve(const Request& r) override {
    if (pos_ >= future_.size() || !(future_[pos_] == r))
      throw std::logic_error("SlotBelady: request stream does not match "
                             "the provided future");
    ++pos_;
    if (config_.satisfies(r)) return;
    auto next_need = [&](int j) -> std::size_t {
      PageId p = config_.at(j);
      if (p == kNoPage) return future_.size() + 1;  // prefer empty slots
      for (std::size_t i = pos_; i < future_.size(); ++i)
        if (future_[i].page == p && has_slot(future_[i].slots, j)) return i;
      return future_.size();
    };
    int victim = 0;
    std::size_t victim_need = 0;
    for (int j : slot_list(r.slots)) {
      std::size_t need = next_need(j);
      if (victim == 0 || need > victim_need) {
        victim = j;
        victim_need = need;
      }
    }
    config_.put(victim, r.page);
  }

  const CacheConfig& config() const override { return config_; }

 private:
  CacheConfig config_;
  std::vector<Request> future_;
  std::size_t pos_ = 0;
};

inline OnlineRun run_online(OnlineAlgorithm& alg, const RequestSequence& seq) {
  alg.reset(seq.k, seq.family);
  if (auto* offline = dynamic_cast<NeedsFuture*>(&alg))
    offline->set_future(seq.requests);
  OnlineRun out;
  for (const Request& r : seq.requests) {
    alg.serve(r);
    out.schedule.push_back(alg.config());
  }
  out.cost = schedule_cost(out.schedule, seq.k);
  if (auto* exh = dynamic_cast<ExhSearch*>(&alg)) {
    out.phase_starts = exh->phase_starts();
    out.phase_fault_counts = exh->phase_fault_counts();
  }
  auto err = validate_schedule(seq, out.schedule);
  if (err) throw std::logic_error("online run produced invalid schedule: " + *err);
  return out;
}

}  // namespace slotpag
