#pragma once

// Brute-force enumeration oracle, kept deliberately independent of the core
// engine. It never builds a search tree: it executes a model's direct lane
// from scratch once per complete trail of choices, recording (index, arity)
// at every choice point and backtracking through trails in depth-first order.
// Each replay starts from a fresh memo store and multiplies choice weights
// into a running product. O(paths x program length) — for cross-checking
// small models in tests, not for real inference.

#include "probtree/model.hpp"
#include "probtree/table.hpp"

namespace probtree::oracle {

// Exhaustive weighted enumeration of m's outcomes by trail replay.
WeightTable oracle_enumerate(const Model<Value>& m);

}  // namespace probtree::oracle
