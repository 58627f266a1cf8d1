#pragma once

// Reification: running a model up to its first suspension yields the root of
// a lazy weighted search tree. Each Open possibility holds a resumable
// request; invoking the request expands one more level. Requests are pure and
// multi-shot, so a tree can be explored in any order, any number of times.

#include <memory>
#include <optional>
#include <utility>

#include "probtree/model.hpp"
#include "probtree/tree.hpp"

namespace probtree {

// Root response of m's search tree, starting from fresh branch state.
Response reify(const Model<Value>& m);

// As reify, but starting from the given branch state and run context. Used by
// nested inference, which runs inside an enclosing branch.
Response reify_with(const Model<Value>& m, BranchState state, RunCtxPtr ctx);

// Expands Open possibilities up to `depth` levels (unbounded when absent),
// multiplying edge weights along the way. Closed duplicates are merged by
// value, listed in first-encounter order; surviving Opens follow, carrying
// their accumulated weights. explore(0, r) merges r's top level in place.
Response explore(std::optional<int> depth, const Response& r);

// Wraps a model with a fresh counter: model_invocations is bumped each time
// the wrapped model starts executing, and every dist choice point expanded in
// its dynamic extent (nested inference included) bumps dist_calls.
std::pair<Model<Value>, std::shared_ptr<ChoiceCounter>> with_counter(
    Model<Value> m);

}  // namespace probtree
