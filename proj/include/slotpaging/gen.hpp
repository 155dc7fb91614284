#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/laminar.hpp"
#include "slotpaging/rational.hpp"

namespace slotpag {

// Random laminar family over [k]: the full set, recursively partitioned
// into shuffled blocks, each block kept with its own chance of splitting
// further.
inline SlotSetFamily gen_laminar_family(int k, std::mt19937_64& rng) {
  SlotSetFamily out;
  std::vector<int> slots(k);
  for (int i = 0; i < k; ++i) slots[i] = i + 1;

  auto emit = [&](const std::vector<int>& part) {
    SlotSet s = 0;
    for (int j : part) s |= slot_bit(j);
    out.push_back(s);
  };

  auto split = [&](auto&& self, std::vector<int> part) -> void {
    emit(part);
    if (part.size() < 2) return;
    std::bernoulli_distribution go(0.7);
    if (!go(rng)) return;
    std::shuffle(part.begin(), part.end(), rng);
    std::uniform_int_distribution<std::size_t> cut(1, part.size() - 1);
    std::set<std::size_t> cuts{0, part.size()};
    int blocks = std::uniform_int_distribution<int>(2, 3)(rng);
    for (int b = 1; b < blocks; ++b) cuts.insert(cut(rng));
    auto it = cuts.begin();
    for (auto next = std::next(it); next != cuts.end(); it = next++) {
      std::vector<int> sub(part.begin() + *it, part.begin() + *next);
      std::sort(sub.begin(), sub.end());
      self(self, std::move(sub));
    }
  };
  split(split, slots);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Random general family: `size` distinct nonempty subsets of [k], always
// including the full set so every request stays satisfiable alone.
inline SlotSetFamily gen_general_family(int k, int size,
                                        std::mt19937_64& rng) {
  std::set<SlotSet> fam{full_slots(k)};
  std::uniform_int_distribution<SlotSet> pick(1, full_slots(k));
  int guard = 64 * size + 64;
  while (static_cast<int>(fam.size()) < size && guard-- > 0)
    fam.insert(pick(rng));
  return SlotSetFamily(fam.begin(), fam.end());
}

// Uniform requests over family x page pool.
inline RequestSequence gen_requests(int k, SlotSetFamily family, int pages,
                                    int len, std::mt19937_64& rng) {
  if (family.empty()) throw std::invalid_argument("gen_requests: empty family");
  RequestSequence out;
  out.k = k;
  out.family = std::move(family);
  std::uniform_int_distribution<std::size_t> fpick(0, out.family.size() - 1);
  std::uniform_int_distribution<PageId> ppick(1, pages);
  for (int t = 0; t < len; ++t)
    out.requests.push_back({ppick(rng), out.family[fpick(rng)]});
  return out;
}

inline RequestSequence gen_random_instance(int k, bool laminar, int pages,
                                           int len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SlotSetFamily fam = laminar ? gen_laminar_family(k, rng)
                              : gen_general_family(k, 2 * k, rng);
  return gen_requests(k, std::move(fam), pages, len, rng);
}

// Standard paging: every request may use any slot.
inline RequestSequence gen_standard_instance(int k, int pages, int len,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return gen_requests(k, {full_slots(k)}, pages, len, rng);
}

// All-or-One: the full set plus all singletons, generals drawn with the
// given probability.
inline RequestSequence gen_aoo_instance(int k, int pages, int len,
                                        std::uint64_t seed,
                                        double general_prob = 0.5) {
  std::mt19937_64 rng(seed);
  RequestSequence out;
  out.k = k;
  out.family.push_back(full_slots(k));
  for (int j = 1; j <= k; ++j) out.family.push_back(slot_bit(j));
  std::bernoulli_distribution general(general_prob);
  std::uniform_int_distribution<int> spick(1, k);
  std::uniform_int_distribution<PageId> ppick(1, pages);
  for (int t = 0; t < len; ++t) {
    SlotSet s = general(rng) ? full_slots(k) : slot_bit(spick(rng));
    out.requests.push_back({ppick(rng), s});
  }
  return out;
}

// Small positive rational weights, denominators 1..4.
inline WeightMap gen_random_weights(int pages, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 8), den(1, 4);
  WeightMap w;
  for (PageId p = 1; p <= pages; ++p)
    w.weight_of[p] = Rat(num(rng), den(rng));
  return w;
}

// Random page-set requests drawn from a laminar page family shaped like a
// laminar slot family's closure over a small page pool.
inline PageSetSequence gen_page_laminar_instance(int k, int pages, int len,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<LaminarForest::Set> fam;
  // Partition pages into a random laminar family of page sets.
  std::vector<PageId> pool(pages);
  for (int i = 0; i < pages; ++i) pool[i] = i + 1;
  auto split = [&](auto&& self, std::vector<PageId> part) -> void {
    std::sort(part.begin(), part.end());
    fam.insert(part);
    if (part.size() < 2) return;
    std::bernoulli_distribution go(0.7);
    if (!go(rng)) return;
    std::shuffle(part.begin(), part.end(), rng);
    std::uniform_int_distribution<std::size_t> cut(1, part.size() - 1);
    std::size_t c = cut(rng);
    self(self, std::vector<PageId>(part.begin(), part.begin() + c));
    self(self, std::vector<PageId>(part.begin() + c, part.end()));
  };
  split(split, pool);

  PageSetSequence out;
  out.k = k;
  out.family.assign(fam.begin(), fam.end());
  std::uniform_int_distribution<std::size_t> fpick(0, out.family.size() - 1);
  for (int t = 0; t < len; ++t) out.requests.push_back(out.family[fpick(rng)]);
  return out;
}

}  // namespace slotpag
