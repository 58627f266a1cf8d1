#pragma once

// The classic sprinkler model: was it raining, given that the grass is wet?
// Two variants of the same joint distribution — an eager one that draws every
// variable up front, and a lazy one that allocates each variable as a
// memoized cell and only draws the ones the query demands.

#include "probtree/model.hpp"

namespace probtree::models {

// Eager: cloudy, rain, sprinkler and the (unused) roof splash are all drawn
// before the wet-grass evidence is checked.
Model<Value> grass_eager();

// Lazy: every variable is a letlazy cell; wet_roof is declared but never
// forced, and the short-circuit disjunction for wet grass skips whatever the
// first conjunct already settles.
Model<Value> grass_lazy();

}  // namespace probtree::models
