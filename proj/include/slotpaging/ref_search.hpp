#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/laminar.hpp"
#include "slotpaging/online.hpp"

namespace slotpag {

// Phase-based algorithm for laminar families.  Each slot either serves
// exactly one representative request of the phase (holding its page) or is
// free.  A miss is repaired by a chain of moves: the requested page enters
// some slot of its set, the request that slot was serving is bumped to a
// slot of its own (strictly larger) set, and so on until a free slot is
// reached.  A request that makes the phase unsatisfiable empties the cache
// and opens a new phase.
class RefSearch : public OnlineAlgorithm {
 public:
  explicit RefSearch(const Caps& caps = {}) : caps_(caps) {}

  void reset(int k, const SlotSetFamily& family) override {
    if (!family_is_laminar(family))
      throw std::invalid_argument("RefSearch: family must be laminar");
    k_ = k;
    family_ = family;
    config_ = CacheConfig(k);
    asg_.assign(k, std::nullopt);
    requests_.clear();
    phase_starts_.clear();
    phase_costs_.clear();
    t_ = 0;
  }

  void serve(const Request& r) override {
    ++t_;
    if (std::find(family_.begin(), family_.end(), r.slots) == family_.end())
      throw std::invalid_argument("RefSearch: slot set not in the family");
    if (phase_starts_.empty()) {
      phase_starts_.push_back(t_);
      phase_costs_.push_back(0);
    }
    if (std::find(requests_.begin(), requests_.end(), r) != requests_.end())
      return;  // exact duplicate, satisfied by the phase invariant

    std::vector<Request> with_r = requests_;
    with_r.push_back(r);
    if (!is_satisfiable_laminar(family_, with_r)) {
      config_ = CacheConfig(k_);
      asg_.assign(k_, std::nullopt);
      requests_.clear();
      phase_starts_.push_back(t_);
      phase_costs_.push_back(0);
    }

    if (config_.satisfies(r)) {
      note_redundant(r);
      requests_.push_back(r);
      return;
    }

    // A missing request has no proper descendant in the phase (one would
    // imply the request is already satisfied), so it joins the
    // representatives and its representative ancestor, if any, leaves.
    release_rep_ancestor(r);
    Request cur = r;
    while (true) {
      int free_slot = 0;
      for (int j : slot_list(cur.slots))
        if (!asg_[j - 1]) {
          free_slot = j;
          break;
        }
      if (free_slot) {
        place(cur, free_slot);
        break;
      }
      int bump_slot = 0;
      for (int j : slot_list(cur.slots))
        if (proper_subset_of(cur.slots, asg_[j - 1]->slots)) {
          bump_slot = j;
          break;
        }
      if (!bump_slot)
        throw std::logic_error("RefSearch: no free or bumpable slot");
      Request bumped = *asg_[bump_slot - 1];
      place(cur, bump_slot);
      cur = bumped;
    }
    requests_.push_back(r);
  }

  const CacheConfig& config() const override { return config_; }

  const std::vector<int>& phase_starts() const { return phase_starts_; }
  const std::vector<int>& phase_costs() const { return phase_costs_; }

  // Debug invariant: every representative request of the phase is served by
  // exactly one assigned slot holding its page, and the configuration
  // satisfies every request of the phase.
  void check_invariants() const {
    std::vector<Request> rep = rep_requests(requests_);
    for (const Request& rr : rep) {
      int owners = 0;
      for (int j = 1; j <= k_; ++j)
        if (asg_[j - 1] && *asg_[j - 1] == rr) {
          ++owners;
          if (config_.at(j) != rr.page || !has_slot(rr.slots, j))
            throw std::logic_error("RefSearch: bad slot assignment");
        }
      if (owners != 1)
        throw std::logic_error("RefSearch: representative not assigned once");
    }
    for (int j = 1; j <= k_; ++j)
      if (asg_[j - 1] &&
          std::find(rep.begin(), rep.end(), *asg_[j - 1]) == rep.end())
        throw std::logic_error("RefSearch: slot assigned to non-representative");
    for (const Request& q : requests_)
      if (!config_.satisfies(q))
        throw std::logic_error("RefSearch: phase request unsatisfied");
  }

 private:
  void place(const Request& req, int j) {
    if (config_.at(j) != req.page) {
      config_.put(j, req.page);
      ++phase_costs_.back();
    }
    asg_[j - 1] = req;
  }

  // The representative ancestor of r (same page, strictly larger set) loses
  // its assigned slot when r joins the phase.
  void release_rep_ancestor(const Request& r) {
    for (int j = 1; j <= k_; ++j)
      if (asg_[j - 1] && asg_[j - 1]->page == r.page &&
          proper_subset_of(r.slots, asg_[j - 1]->slots))
        asg_[j - 1] = std::nullopt;
  }

  // Redundant request entering the phase: it still replaces its
  // representative ancestor, taking over a slot that already holds its page.
  void note_redundant(const Request& r) {
    bool has_descendant = false;
    for (const Request& q : requests_)
      if (q != r && request_descendant_of(q, r)) {
        has_descendant = true;
        break;
      }
    if (has_descendant) return;  // r is not a representative
    int freed = 0;
    for (int j = 1; j <= k_; ++j)
      if (asg_[j - 1] && asg_[j - 1]->page == r.page &&
          proper_subset_of(r.slots, asg_[j - 1]->slots)) {
        asg_[j - 1] = std::nullopt;
        freed = j;
      }
    if (freed && has_slot(r.slots, freed) && config_.at(freed) == r.page) {
      asg_[freed - 1] = r;
      return;
    }
    for (int j : slot_list(r.slots))
      if (config_.at(j) == r.page && !asg_[j - 1]) {
        asg_[j - 1] = r;
        return;
      }
    throw std::logic_error("RefSearch: no slot to assign redundant request");
  }

  Caps caps_;
  int k_ = 0;
  SlotSetFamily family_;
  CacheConfig config_;
  std::vector<std::optional<Request>> asg_;
  std::vector<Request> requests_;
  std::vector<int> phase_starts_;
  std::vector<int> phase_costs_;
  int t_ = 0;
};

}  // namespace slotpag
