#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/online.hpp"
#include "slotpaging/ref_search.hpp"
#include "slotpaging/slot_laminar.hpp"

namespace slotpag {

// Slot-trace algorithms by name.  "sl:<inner>" (also accepted as
// "sl:pl:<inner>") runs the laminar reduction with a standard paging engine
// inside; plain engine names run the slot-aware baselines.
inline std::unique_ptr<OnlineAlgorithm> make_online_algorithm(
    const std::string& name, std::uint64_t seed = 0, const Caps& caps = {},
    bool check_each_step = false) {
  if (name == "exh") return std::make_unique<ExhSearch>(caps);
  if (name == "ref") return std::make_unique<RefSearch>(caps);
  if (name == "lru") return std::make_unique<SlotLru>();
  if (name == "fifo") return std::make_unique<SlotFifo>();
  if (name == "marker") return std::make_unique<SlotMarker>(seed);
  if (name == "belady") return std::make_unique<SlotBelady>();
  if (name.rfind("sl:", 0) == 0) {
    std::string inner = name.substr(3);
    if (inner.rfind("pl:", 0) == 0) inner = inner.substr(3);
    return std::make_unique<SlotLaminar>(inner, seed, check_each_step);
  }
  throw std::invalid_argument("unknown algorithm: " + name);
}

inline std::vector<std::string> online_algorithm_names() {
  return {"exh", "ref", "lru", "fifo", "marker", "belady", "sl:lru",
          "sl:fifo", "sl:marker", "sl:belady"};
}

// True when the algorithm requires a laminar family whose members cover all
// requested sets.
inline bool algorithm_needs_laminar(const std::string& name) {
  return name == "ref" || name.rfind("sl:", 0) == 0;
}

}  // namespace slotpag
