#include "probtree/models/hmm.hpp"

#include <array>

#include "probtree/inference.hpp"
#include "probtree/stdlib.hpp"

namespace probtree::models {

const std::vector<std::pair<double, std::int64_t>>& transition_row(
    std::int64_t state) {
  static const std::array<std::vector<std::pair<double, std::int64_t>>,
                          kHmmStates>
      rows = [] {
        std::array<std::vector<std::pair<double, std::int64_t>>, kHmmStates>
            r;
        r[0] = {{0.7, 0}, {0.3, 1}};
        for (std::int64_t i = 1; i < kHmmStates - 1; ++i) {
          r[i] = {{0.4, i}, {0.3, i - 1}, {0.3, i + 1}};
        }
        r[kHmmStates - 1] = {{0.3, kHmmStates - 2}, {0.7, kHmmStates - 1}};
        return r;
      }();
  return rows[static_cast<std::size_t>(state)];
}

Model<std::int64_t> evolve(std::int64_t state) {
  return dist_over<std::int64_t>(transition_row(state));
}

double low_prob(std::int64_t state) {
  return static_cast<double>(kHmmStates - 1 - state) /
         static_cast<double>(kHmmStates - 1);
}

Model<bool> observe_low(std::int64_t state) { return flip(low_prob(state)); }

Evidence no_evidence() {
  return [](std::int64_t, int) { return pure(Unit{}); };
}

Evidence low_at(int step) {
  return [step](std::int64_t state, int n) -> Model<Unit> {
    if (n != step) return pure(Unit{});
    return observe_low(state).then([](bool low) { return require(low); });
  };
}

Evidence low_between(int lo, int hi) {
  return [lo, hi](std::int64_t state, int n) -> Model<Unit> {
    if (n < lo || n > hi) return pure(Unit{});
    return observe_low(state).then([](bool low) { return require(low); });
  };
}

namespace {

Model<std::int64_t> run_states(int n, const Evidence& ev) {
  Model<std::int64_t> state =
      n <= 1 ? uniform(kHmmStates)
             : run_states(n - 1, ev).then(
                   [](std::int64_t s) { return evolve(s); });
  return state.then([ev, n](std::int64_t s) {
    return ev(s, n).map([s](Unit) { return s; });
  });
}

}  // namespace

Model<Value> run(int n, Evidence ev) {
  return run_states(n, ev).map([](std::int64_t s) { return Value(s); });
}

Model<Value> run_bucketed(int n, Evidence ev) {
  auto step = [ev](const RecFn& self, Value nv) -> Model<Value> {
    const int m = static_cast<int>(nv.as_int());
    Model<std::int64_t> state =
        m <= 1 ? uniform(kHmmStates)
               : self(Value(static_cast<std::int64_t>(m - 1)))
                     .then([](Value s) { return evolve(s.as_int()); });
    return state.then([ev, m](std::int64_t s) {
      return ev(s, m).map([s](Unit) { return Value(s); });
    });
  };
  RecFn self = bucketize_rec(step);
  // The top-level step runs unbucketed; only the recursion is shared.
  return step(self, Value(static_cast<std::int64_t>(n)));
}

Model<Value> query1() { return run(10, low_at(5)); }

Model<Value> query1_bucketed() { return run_bucketed(10, low_at(5)); }

Model<Value> query_low_5_to_10() { return run(10, low_between(5, 10)); }

}  // namespace probtree::models
