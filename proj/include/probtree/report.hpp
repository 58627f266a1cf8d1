#pragma once

// Sampler output: a flat list of (run, value, weight) reports. A single run
// may report several weighted values (importance sampling) or none at all
// (a rejected run); the estimate for a value is the mean over runs of its
// per-run reported weight.

#include <cstdint>
#include <vector>

#include "probtree/table.hpp"
#include "probtree/value.hpp"

namespace probtree {

struct SampleReport {
  struct Item {
    std::uint32_t run;
    Value value;
    double weight;
  };

  std::uint64_t runs = 0;
  std::vector<Item> items;  // ordered by run, then report order within a run

  // Appends another block of runs (item run indices are absolute).
  void merge(SampleReport&& other) {
    runs += other.runs;
    items.insert(items.end(), std::make_move_iterator(other.items.begin()),
                 std::make_move_iterator(other.items.end()));
  }

  // Per-value mean weight across all runs.
  WeightTable aggregate() const;
};

}  // namespace probtree
