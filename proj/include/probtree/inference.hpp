#pragma once

// Inference procedures over reified search trees. All of them consume the
// same lazy tree interface; none of them re-run a model from the top to
// resume a suspension.

#include <cstdint>
#include <functional>
#include <memory>

#include "probtree/model.hpp"
#include "probtree/random.hpp"
#include "probtree/reify.hpp"
#include "probtree/report.hpp"
#include "probtree/table.hpp"

namespace probtree {

// Exhaustive depth-first exploration from a fresh root. Failed branches
// vanish; the table's total is the model's evidence.
WeightTable exact_reify(const Model<Value>& m);

// Folds an already-reified response into a table, expanding every remaining
// Open possibility fully.
WeightTable table_of(const Response& r);

// Sums only the top-level Closed entries of a response (what a depth-limited
// exploration has already settled); Opens are skipped, so the total may fall
// short of the full evidence.
WeightTable closed_mass(const Response& r);

// Nested exact inference as a model: runs m to completion inside the current
// branch — inheriting its memo state and run context — and returns the
// distribution as an ordinary value. Writes m makes to branch state are
// discarded afterwards.
Model<WeightTable> exact_table(Model<Value> m);

// Nested sampling as a model: draws `samples` root-to-leaf walks of m's
// search tree, with each walk's choices expressed as ordinary dist nodes of
// the enclosing model (so enclosing exact inference enumerates every possible
// sampler outcome, weighted by its probability). A walk that dead-ends is a
// failure of the enclosing branch. Returns the frequency table
// {value: count/samples}.
Model<WeightTable> sampling_as_model(int samples, Model<Value> inner);

// True when t assigns v at least `threshold` weight.
bool at_least(double threshold, const Value& v, const WeightTable& t);

// Shared-bucket memoization across branches. bucketize(f) returns f' such
// that f'(x) behaves as dist over the exact distribution of f(x); that
// distribution is computed once per distinct x — in a host-shared,
// mutex-guarded cache that outlives any single branch — and every caller
// thereafter pays one choice point. f must be self-contained (it runs from a
// fresh branch).
using RecFn = std::function<Model<Value>(Value)>;
RecFn bucketize(std::function<Model<Value>(Value)> f);

// Open-recursion variant for recursive models: f receives a self-reference
// whose calls route through the same shared bucket.
RecFn bucketize_rec(std::function<Model<Value>(const RecFn&, Value)> f);

// Rejection sampling: each run walks the tree by cumulative weight with one
// uniform draw per level; landing in the weight deficit of a node fails the
// run. Successful runs report (value, 1.0).
SampleReport rejection_sample(const Model<Value>& m, int runs,
                              RandomSource rng);

// Importance sampling with look-ahead: each run expands every Open child one
// level, banks the values that settle (scaled by the cumulative branch
// weight), and commits to one unsettled subtree chosen in proportion to its
// one-step mass. Unbiased for every outcome: the expected reported weight of
// a value equals its exact weight.
SampleReport importance_sample(const Model<Value>& m, int runs,
                               RandomSource rng);

enum class SampleKind { kRejection, kImportance };

// Runs `runs` total runs split across `jobs` threads. Run i always draws from
// the engine derived from (seed, i), and reports are concatenated in run
// order, so the result is identical for any jobs value.
SampleReport sample_parallel(SampleKind kind, const Model<Value>& m,
                             int runs, std::uint64_t seed, int jobs);

}  // namespace probtree
