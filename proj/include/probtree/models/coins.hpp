#pragma once

// Nested-inference miniatures: an outer model that runs inference on an
// inner coin model and branches on the resulting table. The three variants
// pin down the interplay of nesting with exactness, sampling, and
// memoization.

#include "probtree/model.hpp"

namespace probtree::models {

// Exact inner inference over `flip 0.5 || biased`: the inner table always
// assigns true at least 0.5, so the outer query is deterministically true.
Model<Value> coin_variant_a();

// Two-sample inner frequency table over the same coin: the outer query is
// true unless both walks land false given an unbiased coin.
Model<Value> coin_variant_b();

// The biased flag is drawn through a memoized function *inside* the nested
// exact run: within one inner branch the flag is a persistent fact, and the
// disjunction short-circuits around it when the first coin lands true.
Model<Value> coin_variant_c();

}  // namespace probtree::models
