#pragma once

// Small standard library of model-building primitives.

#include <cstdint>

#include "probtree/memo.hpp"
#include "probtree/model.hpp"

namespace probtree {

// Weighted boolean choice: true with probability p, false with 1 - p.
// p outside [0, 1] is rejected up front.
Model<bool> flip(double p);

// Uniform choice over {0, ..., n-1}, each with weight 1/n. n <= 0 has no
// outcomes and is rejected.
Model<std::int64_t> uniform(std::int64_t n);

}  // namespace probtree
