#pragma once

// A small hidden Markov model: a particle drifts on the sites 0..7 and a
// noisy sensor reports whether it sits in the lower or the upper half. The
// naive query re-runs the whole history at every step; the bucketed variant
// memoizes each step's exact distribution in a shared bucket, turning
// exponential work into linear.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "probtree/model.hpp"

namespace probtree::models {

inline constexpr std::int64_t kHmmStates = 8;

// Evidence hook: given the state and the (1-based) step that produced it,
// succeed (possibly after a noisy observation) or fail the branch.
using Evidence = std::function<Model<Unit>(std::int64_t state, int step)>;

// Drift kernel: stay with 0.4, step down/up with 0.3 each; the ends fold the
// lost mass into staying put.
const std::vector<std::pair<double, std::int64_t>>& transition_row(
    std::int64_t state);
Model<std::int64_t> evolve(std::int64_t state);

// Sensor: reports "low" with probability (7 - state) / 7.
double low_prob(std::int64_t state);
Model<bool> observe_low(std::int64_t state);

// No evidence anywhere.
Evidence no_evidence();
// The sensor must read "low" exactly at `step`.
Evidence low_at(int step);
// The sensor must read "low" at every step in [lo, hi].
Evidence low_between(int lo, int hi);

// n steps of the chain from a uniform start, with `ev` consulted after every
// step; the value is the final state. Recursive and deliberately naive: step
// n re-enters the full history.
Model<Value> run(int n, Evidence ev);

// Same chain, but the recursive call is routed through a shared bucket: each
// step's exact state distribution is computed once and replayed as a single
// choice point by everything above it.
Model<Value> run_bucketed(int n, Evidence ev);

// Bundled queries: state after 10 steps given a "low" reading at step 5.
Model<Value> query1();
Model<Value> query1_bucketed();
// State after 10 steps given "low" readings at steps 5 through 10.
Model<Value> query_low_5_to_10();

}  // namespace probtree::models
