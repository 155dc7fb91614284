#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/laminar.hpp"
#include "slotpaging/paging.hpp"

namespace slotpag {

// Replaces each page-set request by its preferred page: follow, level by
// level, the child that received the most recent request to a proper
// descendant; with no such request the preferred page is the smallest page
// of the leftmost leaf.  Caching the preferred page serves the original
// request, so any standard paging algorithm can run on the induced
// sequence.  Requests must be exact members of the family.
inline std::vector<PageId> induced_page_sequence(const PageSetSequence& seq) {
  LaminarForest forest = LaminarForest::build(seq.family);
  PreferredPageTracker tracker(forest);
  std::vector<PageId> out;
  for (const auto& set : seq.requests) {
    LaminarForest::Set sorted = set;
    std::sort(sorted.begin(), sorted.end());
    int node = forest.find(sorted);
    if (node < 0)
      throw std::invalid_argument(
          "induced_page_sequence: request set is not in the family");
    out.push_back(tracker.preferred(node));
    tracker.record(node);
  }
  return out;
}

struct PageLaminarRun {
  std::vector<PageId> induced;
  PagingRun inner;
};

inline PageLaminarRun page_laminar_run(const PageSetSequence& seq,
                                       const std::string& inner_name,
                                       std::uint64_t seed = 0) {
  PageLaminarRun out;
  out.induced = induced_page_sequence(seq);
  auto engine = make_paging_engine(inner_name, seed);
  if (auto* belady = dynamic_cast<BeladyEngine*>(engine.get()))
    belady->set_future(out.induced);
  out.inner = run_paging(*engine, seq.k, out.induced);
  // The cache after step t holds the preferred page of request t, which
  // belongs to the requested set, so the run is valid by construction.
  for (std::size_t t = 0; t < seq.requests.size(); ++t) {
    const auto& cache = out.inner.cache_trace[t];
    bool ok = false;
    for (PageId p : seq.requests[t])
      if (std::find(cache.begin(), cache.end(), p) != cache.end()) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::logic_error("page_laminar_run: request left unserved");
  }
  return out;
}

}  // namespace slotpag
