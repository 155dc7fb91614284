#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"

namespace slotpag {

// A request <p,S'> is a descendant of <p,S> when S' is a subset of S; only
// requests to the same page are related.
inline bool request_descendant_of(const Request& a, const Request& b) {
  return a.page == b.page && subset_of(a.slots, b.slots);
}

// Requests in R with no proper descendant in R (duplicates collapsed).
inline std::vector<Request> rep_requests(std::vector<Request> reqs) {
  std::sort(reqs.begin(), reqs.end());
  reqs.erase(std::unique(reqs.begin(), reqs.end()), reqs.end());
  std::vector<Request> out;
  for (const Request& r : reqs) {
    bool minimal = true;
    for (const Request& other : reqs)
      if (other != r && request_descendant_of(other, r)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(r);
  }
  return out;
}

// Ancestors of r in R: same page, slot set containing r's.
inline std::vector<Request> anc_requests(const Request& r,
                                         const std::vector<Request>& reqs) {
  std::vector<Request> out;
  for (const Request& other : reqs)
    if (request_descendant_of(r, other)) out.push_back(other);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Laminar fast path: R (with slot sets drawn from a laminar family) is
// satisfiable iff for every family set S, rep(R) has at most |S| requests
// to subsets of S.
inline bool is_satisfiable_laminar(const SlotSetFamily& family,
                                   const std::vector<Request>& reqs) {
  std::vector<Request> rep = rep_requests(reqs);
  for (SlotSet s : family) {
    int count = 0;
    for (const Request& r : rep)
      if (subset_of(r.slots, s)) ++count;
    if (count > slot_count(s)) return false;
  }
  return true;
}

// Dispatches to the laminar counting criterion when the family is laminar
// and covers every requested slot set, otherwise backtracks exhaustively.
inline bool is_satisfiable(int k, const SlotSetFamily& family,
                           const std::vector<Request>& reqs,
                           const Caps& caps = {}) {
  bool covered = !family.empty();
  for (const Request& r : reqs)
    if (std::find(family.begin(), family.end(), r.slots) == family.end()) {
      covered = false;
      break;
    }
  if (covered && family_is_laminar(family))
    return is_satisfiable_laminar(family, reqs);
  return is_satisfiable_generic(k, reqs, caps);
}

// Laminar forest over sets of integers (slot indices or page ids).  Children
// are ordered by smallest element; the "leftmost leaf" of a node is reached
// by always descending into the first child.
struct LaminarForest {
  using Set = std::vector<std::int64_t>;  // sorted, distinct

  struct Node {
    Set set;
    int parent = -1;
    std::vector<int> children;
    int depth = 1;  // roots have depth 1
  };

  std::vector<Node> nodes;
  std::vector<int> roots;

  static bool set_subset(const Set& a, const Set& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  static bool set_disjoint(const Set& a, const Set& b) {
    Set tmp;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(tmp));
    return tmp.empty();
  }

  static LaminarForest build(std::vector<Set> sets) {
    for (Set& s : sets) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      if (s.empty()) throw std::invalid_argument("laminar forest: empty set");
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    for (std::size_t a = 0; a < sets.size(); ++a)
      for (std::size_t b = a + 1; b < sets.size(); ++b)
        if (!set_disjoint(sets[a], sets[b]) &&
            !set_subset(sets[a], sets[b]) && !set_subset(sets[b], sets[a]))
          throw std::invalid_argument("laminar forest: family is not laminar");

    // Larger sets first so each node's parent is already placed.
    std::stable_sort(sets.begin(), sets.end(),
                     [](const Set& x, const Set& y) {
                       return x.size() > y.size();
                     });
    LaminarForest f;
    for (const Set& s : sets) {
      Node node;
      node.set = s;
      // Parent: the smallest strict superset among placed nodes.
      int best = -1;
      for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        const Node& cand = f.nodes[i];
        if (cand.set != s && set_subset(s, cand.set) &&
            (best < 0 || cand.set.size() < f.nodes[best].set.size()))
          best = static_cast<int>(i);
      }
      node.parent = best;
      if (best >= 0) node.depth = f.nodes[best].depth + 1;
      f.nodes.push_back(std::move(node));
      int idx = static_cast<int>(f.nodes.size()) - 1;
      if (best >= 0)
        f.nodes[best].children.push_back(idx);
      else
        f.roots.push_back(idx);
    }
    auto by_min = [&f](int a, int b) {
      return f.nodes[a].set.front() < f.nodes[b].set.front();
    };
    for (Node& n : f.nodes) std::sort(n.children.begin(), n.children.end(), by_min);
    std::sort(f.roots.begin(), f.roots.end(), by_min);
    return f;
  }

  int find(const Set& s) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].set == s) return static_cast<int>(i);
    return -1;
  }

  bool is_leaf(int i) const { return nodes[i].children.empty(); }

  int leftmost_leaf(int i) const {
    while (!nodes[i].children.empty()) i = nodes[i].children.front();
    return i;
  }

  // Default preferred page of a node: smallest element of its leftmost leaf.
  std::int64_t default_element(int i) const {
    return nodes[leftmost_leaf(i)].set.front();
  }

  int height() const {
    int h = 0;
    for (const Node& n : nodes) h = std::max(h, n.depth);
    return h;
  }

  bool is_strict_ancestor(int anc, int node) const {
    for (int p = nodes[node].parent; p >= 0; p = nodes[p].parent)
      if (p == anc) return true;
    return false;
  }

  static Set set_from_slots(SlotSet s) {
    Set out;
    for (int j : slot_list(s)) out.push_back(j);
    return out;
  }

  static LaminarForest from_slot_family(const SlotSetFamily& family) {
    std::vector<Set> sets;
    for (SlotSet s : family) sets.push_back(set_from_slots(s));
    return build(std::move(sets));
  }
};

// Page-subset paging: each request names a set of pages, any one of which
// must be cached (in any slot) to serve it.  Families of requestable page
// sets are laminar in everything built here.
struct PageSetSequence {
  int k = 0;
  std::vector<LaminarForest::Set> family;
  std::vector<LaminarForest::Set> requests;
};

// Online preferred-page state for a laminar page family.  prev_child[n] is
// the child of n whose subtree received the most recent request to a proper
// descendant of n; -1 when no such request has happened.
struct PreferredPageTracker {
  const LaminarForest* forest = nullptr;
  std::vector<int> prev_child;

  explicit PreferredPageTracker(const LaminarForest& f)
      : forest(&f), prev_child(f.nodes.size(), -1) {}

  // Preferred page of node n given the request history recorded so far.
  std::int64_t preferred(int n) const {
    while (prev_child[n] >= 0) n = prev_child[n];
    return forest->default_element(n);
  }

  // Record a request to node n (call after computing its preferred page).
  void record(int n) {
    int child = n;
    for (int p = forest->nodes[n].parent; p >= 0;
         child = p, p = forest->nodes[p].parent)
      prev_child[p] = child;
  }
};

}  // namespace slotpag
