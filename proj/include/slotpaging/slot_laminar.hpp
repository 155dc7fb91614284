#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/laminar.hpp"
#include "slotpaging/online.hpp"
#include "slotpaging/paging.hpp"

namespace slotpag {

// Virtual pages: one copy of page p per slot s it may occupy.
inline PageId vp_make(PageId p, int s) { return p * 32 + s; }
inline PageId vp_page(PageId vp) { return vp / 32; }
inline int vp_slot(PageId vp) { return static_cast<int>(vp % 32); }

// Page-set relaxation of the subinstance below slot set S: request <p,S'>
// becomes a request to the virtual page set {v(p,s) : s in S'}, and the
// cache shrinks to |S| unordered entries.
inline PageSetSequence relax_to_page_laminar(const RequestSequence& seq,
                                             SlotSet S) {
  PageSetSequence out;
  out.k = slot_count(S);
  std::set<PageId> pages;
  for (const Request& r : seq.requests)
    if (subset_of(r.slots, S)) pages.insert(r.page);
  for (SlotSet sub : seq.family) {
    if (!subset_of(sub, S)) continue;
    for (PageId p : pages) {
      LaminarForest::Set vset;
      for (int s : slot_list(sub)) vset.push_back(vp_make(p, s));
      out.family.push_back(std::move(vset));
    }
  }
  for (const Request& r : seq.requests) {
    if (!subset_of(r.slots, S)) continue;
    LaminarForest::Set vset;
    for (int s : slot_list(r.slots)) vset.push_back(vp_make(r.page, s));
    out.requests.push_back(std::move(vset));
  }
  return out;
}

// Runs one paging instance per family set S over the preferred virtual
// pages of the requests below S, and mirrors every inner eviction and
// retrieval into a slot-level configuration B(S).  Mirrors are kept
// consistent across the tree: a virtual page cached by a node and by the
// child owning its home slot sits in the same slot in both, which is
// restored after each retrieval by rotating at most three slots in the
// node and its ancestors.  The root mirrors form the emitted configuration.
class SlotLaminar : public OnlineAlgorithm, public NeedsFuture {
 public:
  explicit SlotLaminar(std::string inner, std::uint64_t seed = 0,
                       bool check_invariants_each_step = false)
      : inner_(std::move(inner)),
        seed_(seed),
        always_check_(check_invariants_each_step) {}

  void reset(int k, const SlotSetFamily& family) override {
    if (!family_is_laminar(family))
      throw std::invalid_argument("SlotLaminar: family must be laminar");
    k_ = k;
    family_ = family;
    forest_ = LaminarForest::from_slot_family(family);
    masks_.clear();
    for (const auto& node : forest_.nodes) {
      SlotSet m = 0;
      for (auto s : node.set) m |= slot_bit(static_cast<int>(s));
      masks_.push_back(m);
    }
    engines_.clear();
    for (std::size_t n = 0; n < forest_.nodes.size(); ++n) {
      engines_.push_back(make_paging_engine(inner_, seed_ + n));
      engines_.back()->reset(slot_count(masks_[n]));
    }
    mirror_.assign(forest_.nodes.size(), std::vector<PageId>(k_, kNoPage));
    prevc_.clear();
    config_ = CacheConfig(k_);
    inner_cost_ = 0;
    virtual_root_cost_ = 0;
  }

  void set_future(std::vector<Request> future) override {
    if (!paging_engine_is_offline(inner_)) return;
    // Replay the preferred-page computation to hand each inner instance
    // its induced virtual request sequence.
    std::map<std::pair<PageId, int>, int> scratch;
    std::vector<std::vector<PageId>> induced(forest_.nodes.size());
    for (const Request& r : future) {
      int nt = node_of(r.slots);
      PageId vp = preferred_vp(scratch, r.page, nt);
      record(scratch, r.page, nt);
      for (int n = nt; n >= 0; n = forest_.nodes[n].parent)
        induced[n].push_back(vp);
    }
    for (std::size_t n = 0; n < engines_.size(); ++n)
      if (auto* belady = dynamic_cast<BeladyEngine*>(engines_[n].get()))
        belady->set_future(induced[n]);
  }

  void serve(const Request& r) override {
    int nt = node_of(r.slots);
    PageId vp = preferred_vp(prevc_, r.page, nt);
    record(prevc_, r.page, nt);

    int root = nt;
    while (forest_.nodes[root].parent >= 0) root = forest_.nodes[root].parent;
    std::vector<PageId> root_before = mirror_[root];

    for (int n = nt; n >= 0; n = forest_.nodes[n].parent) {
      PagingEngine::Step step = engines_[n]->serve(vp);
      if (step.evicted != kNoPage) {
        for (int j : slot_list(masks_[n]))
          if (mirror_[n][j - 1] == step.evicted) {
            mirror_[n][j - 1] = kNoPage;
            break;
          }
      }
      if (step.fault) {
        ++inner_cost_;
        int placed = 0;
        for (int j : slot_list(masks_[n]))
          if (mirror_[n][j - 1] == kNoPage) {
            placed = j;
            break;
          }
        if (!placed)
          throw std::logic_error("SlotLaminar: no vacant mirror slot");
        mirror_[n][placed - 1] = vp;
        repair(n, vp, placed);
      }
    }

    for (int j : slot_list(masks_[root])) {
      PageId cur = mirror_[root][j - 1];
      if (cur != root_before[j - 1] && cur != kNoPage) ++virtual_root_cost_;
    }

    for (int j : slot_list(masks_[root])) {
      PageId cur = mirror_[root][j - 1];
      config_.slot[j - 1] = cur == kNoPage ? kNoPage : vp_page(cur);
    }
    if (always_check_) check_invariants();
  }

  const CacheConfig& config() const override { return config_; }

  std::size_t inner_cost() const { return inner_cost_; }
  std::size_t virtual_root_cost() const { return virtual_root_cost_; }

  void check_invariants() const {
    for (std::size_t n = 0; n < forest_.nodes.size(); ++n) {
      std::vector<PageId> mirrored;
      for (int j : slot_list(masks_[n])) {
        PageId vp = mirror_[n][j - 1];
        if (vp != kNoPage) mirrored.push_back(vp);
      }
      std::vector<PageId> cached = engines_[n]->cached();
      std::sort(mirrored.begin(), mirrored.end());
      std::sort(cached.begin(), cached.end());
      if (mirrored != cached)
        throw std::logic_error("SlotLaminar: mirror does not match the inner "
                               "cache");
      for (int j : slot_list(masks_[n])) {
        PageId vp = mirror_[n][j - 1];
        if (vp == kNoPage) continue;
        int home = vp_slot(vp);
        int c = child_containing(static_cast<int>(n), home);
        if (c < 0) continue;
        for (int jc : slot_list(masks_[c]))
          if (mirror_[c][jc - 1] == vp && jc != j)
            throw std::logic_error(
                "SlotLaminar: node and child disagree on a slot");
      }
    }
  }

 private:
  int node_of(SlotSet s) const {
    for (std::size_t n = 0; n < masks_.size(); ++n)
      if (masks_[n] == s) return static_cast<int>(n);
    throw std::invalid_argument("SlotLaminar: slot set not in the family");
  }

  int child_containing(int n, int slot) const {
    for (int c : forest_.nodes[n].children)
      if (has_slot(masks_[c], slot)) return c;
    return -1;
  }

  // The preferred virtual page below a node: follow the child that received
  // the most recent strictly-deeper request for this page; the default is
  // the page's copy for the smallest slot of the leftmost leaf.
  PageId preferred_vp(const std::map<std::pair<PageId, int>, int>& prevc,
                      PageId p, int n) const {
    while (true) {
      auto it = prevc.find({p, n});
      if (it == prevc.end()) break;
      n = it->second;
    }
    int leaf = forest_.leftmost_leaf(n);
    return vp_make(p, static_cast<int>(forest_.nodes[leaf].set.front()));
  }

  void record(std::map<std::pair<PageId, int>, int>& prevc, PageId p,
              int n) const {
    int child = n;
    for (int a = forest_.nodes[n].parent; a >= 0;
         child = a, a = forest_.nodes[a].parent)
      prevc[{p, a}] = child;
  }

  void swap_slots(int n, int a, int b) {
    std::swap(mirror_[n][a - 1], mirror_[n][b - 1]);
  }

  // new[s1] = old[s2], new[sp] = old[s1], new[s2] = old[sp]
  void cycle_slots(int n, int s1, int sp, int s2) {
    PageId old_s1 = mirror_[n][s1 - 1];
    PageId old_sp = mirror_[n][sp - 1];
    PageId old_s2 = mirror_[n][s2 - 1];
    mirror_[n][s1 - 1] = old_s2;
    mirror_[n][sp - 1] = old_s1;
    mirror_[n][s2 - 1] = old_sp;
  }

  // vp was just retrieved into slot sp of node n; realign with the child
  // that owns vp's home slot and with the ancestors.
  void repair(int n, PageId vp, int sp) {
    int s1 = 0;
    int c = child_containing(n, vp_slot(vp));
    if (c >= 0)
      for (int j : slot_list(masks_[c]))
        if (mirror_[c][j - 1] == vp) {
          s1 = j;
          break;
        }
    if (s1 == sp) s1 = 0;

    int s2 = 0;
    int parent = forest_.nodes[n].parent;
    if (parent >= 0)
      for (int j : slot_list(masks_[parent]))
        if (mirror_[parent][j - 1] == vp) {
          s2 = j;
          break;
        }
    if (s2 == sp) s2 = 0;

    if (!s1 && !s2) return;
    if (s1 && s2 && s1 != s2) {
      swap_slots(n, s1, sp);
      for (int a = parent; a >= 0; a = forest_.nodes[a].parent)
        cycle_slots(a, s1, sp, s2);
    } else if (s1 && s2) {  // s1 == s2
      swap_slots(n, s1, sp);
    } else if (s1) {
      swap_slots(n, s1, sp);
      for (int a = parent; a >= 0; a = forest_.nodes[a].parent)
        swap_slots(a, s1, sp);
    } else {
      for (int a = parent; a >= 0; a = forest_.nodes[a].parent)
        swap_slots(a, s2, sp);
    }
  }

  std::string inner_;
  std::uint64_t seed_ = 0;
  bool always_check_ = false;
  int k_ = 0;
  SlotSetFamily family_;
  LaminarForest forest_;
  std::vector<SlotSet> masks_;
  std::vector<std::unique_ptr<PagingEngine>> engines_;
  std::vector<std::vector<PageId>> mirror_;
  std::map<std::pair<PageId, int>, int> prevc_;
  CacheConfig config_;
  std::size_t inner_cost_ = 0;
  std::size_t virtual_root_cost_ = 0;
};

}  // namespace slotpag
