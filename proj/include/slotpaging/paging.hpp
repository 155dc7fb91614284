#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"

namespace slotpag {

// Classic paging over single pages with an unordered cache of a given
// capacity.  Engines report what they evicted so reductions can mirror
// their moves.
class PagingEngine {
 public:
  struct Step {
    bool fault = false;
    PageId evicted = kNoPage;
  };

  virtual ~PagingEngine() = default;
  virtual void reset(int capacity) = 0;
  virtual Step serve(PageId p) = 0;
  virtual const std::vector<PageId>& cached() const = 0;
};

class LruEngine : public PagingEngine {
 public:
  void reset(int capacity) override {
    cap_ = capacity;
    cache_.clear();
    last_use_.clear();
    now_ = 0;
  }

  Step serve(PageId p) override {
    ++now_;
    last_use_[p] = now_;
    if (std::find(cache_.begin(), cache_.end(), p) != cache_.end()) return {};
    Step st{true, kNoPage};
    if (static_cast<int>(cache_.size()) == cap_) {
      auto victim = std::min_element(
          cache_.begin(), cache_.end(), [&](PageId a, PageId b) {
            return last_use_[a] != last_use_[b] ? last_use_[a] < last_use_[b]
                                                : a < b;
          });
      st.evicted = *victim;
      cache_.erase(victim);
    }
    cache_.push_back(p);
    return st;
  }

  const std::vector<PageId>& cached() const override { return cache_; }

 private:
  int cap_ = 0;
  std::vector<PageId> cache_;
  std::map<PageId, long long> last_use_;
  long long now_ = 0;
};

class FifoEngine : public PagingEngine {
 public:
  void reset(int capacity) override {
    cap_ = capacity;
    cache_.clear();
    order_.clear();
  }

  Step serve(PageId p) override {
    if (std::find(cache_.begin(), cache_.end(), p) != cache_.end()) return {};
    Step st{true, kNoPage};
    if (static_cast<int>(cache_.size()) == cap_) {
      st.evicted = order_.front();
      order_.pop_front();
      cache_.erase(std::find(cache_.begin(), cache_.end(), st.evicted));
    }
    cache_.push_back(p);
    order_.push_back(p);
    return st;
  }

  const std::vector<PageId>& cached() const override { return cache_; }

 private:
  int cap_ = 0;
  std::vector<PageId> cache_;
  std::deque<PageId> order_;
};

// Randomized marking: on a fault with every cached page marked, unmark all;
// evict a uniformly random unmarked page.
class MarkerEngine : public PagingEngine {
 public:
  explicit MarkerEngine(std::uint64_t seed) : rng_(seed) {}

  void reset(int capacity) override {
    cap_ = capacity;
    cache_.clear();
    marked_.clear();
  }

  Step serve(PageId p) override {
    if (std::find(cache_.begin(), cache_.end(), p) != cache_.end()) {
      marked_.insert(p);
      return {};
    }
    Step st{true, kNoPage};
    if (static_cast<int>(cache_.size()) == cap_) {
      std::vector<PageId> unmarked;
      for (PageId q : cache_)
        if (!marked_.count(q)) unmarked.push_back(q);
      if (unmarked.empty()) {
        marked_.clear();
        unmarked = cache_;
      }
      std::sort(unmarked.begin(), unmarked.end());
      std::uniform_int_distribution<std::size_t> pick(0, unmarked.size() - 1);
      st.evicted = unmarked[pick(rng_)];
      cache_.erase(std::find(cache_.begin(), cache_.end(), st.evicted));
    }
    cache_.push_back(p);
    marked_.insert(p);
    return st;
  }

  const std::vector<PageId>& cached() const override { return cache_; }

 private:
  int cap_ = 0;
  std::vector<PageId> cache_;
  std::set<PageId> marked_;
  std::mt19937_64 rng_;
};

// Offline: evicts the cached page whose next use lies farthest in the
// future (never used again beats everything; ties to the smaller id).
class BeladyEngine : public PagingEngine {
 public:
  void set_future(std::vector<PageId> future) {
    future_ = std::move(future);
    pos_ = 0;
  }

  void reset(int capacity) override {
    cap_ = capacity;
    cache_.clear();
    pos_ = 0;
  }

  Step serve(PageId p) override {
    if (pos_ >= future_.size() || future_[pos_] != p)
      throw std::logic_error("BeladyEngine: request stream does not match "
                             "the provided future");
    ++pos_;
    if (std::find(cache_.begin(), cache_.end(), p) != cache_.end()) return {};
    Step st{true, kNoPage};
    if (static_cast<int>(cache_.size()) == cap_) {
      auto next_use = [&](PageId q) -> std::size_t {
        for (std::size_t i = pos_; i < future_.size(); ++i)
          if (future_[i] == q) return i;
        return future_.size();
      };
      PageId victim = cache_.front();
      std::size_t victim_use = next_use(victim);
      for (PageId q : cache_) {
        std::size_t use = next_use(q);
        if (use > victim_use || (use == victim_use && q < victim)) {
          victim = q;
          victim_use = use;
        }
      }
      st.evicted = victim;
      cache_.erase(std::find(cache_.begin(), cache_.end(), victim));
    }
    cache_.push_back(p);
    return st;
  }

  const std::vector<PageId>& cached() const override { return cache_; }

 private:
  int cap_ = 0;
  std::vector<PageId> cache_;
  std::vector<PageId> future_;
  std::size_t pos_ = 0;
};

// Names: lru, fifo, marker, belady.  Belady callers must set_future first.
inline std::unique_ptr<PagingEngine> make_paging_engine(
    const std::string& name, std::uint64_t seed = 0) {
  if (name == "lru") return std::make_unique<LruEngine>();
  if (name == "fifo") return std::make_unique<FifoEngine>();
  if (name == "marker") return std::make_unique<MarkerEngine>(seed);
  if (name == "belady") return std::make_unique<BeladyEngine>();
  throw std::invalid_argument("unknown paging engine '" + name + "'");
}

inline bool paging_engine_is_offline(const std::string& name) {
  return name == "belady";
}

struct PagingRun {
  std::size_t cost = 0;
  std::vector<std::vector<PageId>> cache_trace;  // cache after each request
};

inline PagingRun run_paging(PagingEngine& engine, int capacity,
                            const std::vector<PageId>& pages) {
  engine.reset(capacity);
  PagingRun out;
  for (PageId p : pages) {
    if (engine.serve(p).fault) ++out.cost;
    out.cache_trace.push_back(engine.cached());
  }
  return out;
}

}  // namespace slotpag
