#pragma once

// Models as first-class values. A Model<T> is a stochastic computation that
// produces a T; deterministic segments are ordinary C++ code between choice
// points. Each combinator populates two independent interpretations:
//
//  * cps    — continuation-passing lane. dist suspends by emitting a tree node
//             whose Open possibilities capture the rest of the program as a
//             shared closure plus a BranchState snapshot. Resuming runs only
//             the suffix (no replay) and is multi-shot.
//  * direct — plain sequential execution against an abstract DirectCtx. The
//             core never implements DirectCtx; the test oracle does, which is
//             what lets the same model definitions run under a completely
//             separate replay-based engine for cross-checking.
//
// Authoring style mirrors the usual monadic chain:
//
//   auto m = flip(0.5).then([](bool cloudy) {
//     return flip(cloudy ? 0.8 : 0.2).then([](bool rain) { ... });
//   });

#include <any>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <type_traits>
#include <utility>
#include <vector>

#include "probtree/errors.hpp"
#include "probtree/table.hpp"
#include "probtree/tree.hpp"
#include "probtree/value.hpp"

namespace probtree {

template <class T>
using ContFn = std::function<Response(T, BranchState)>;
template <class T>
using Cont = std::shared_ptr<const ContFn<T>>;

template <class T, class F>
Cont<T> make_cont(F&& f) {
  return std::make_shared<const ContFn<T>>(std::forward<F>(f));
}

using Choice = std::pair<double, Value>;

// Drops zero-weight entries, rejects invalid weights and oversized totals.
std::vector<Choice> validate_choices(std::vector<Choice> choices);

template <class T>
struct Model;

// Execution context for the direct lane. Implemented only by the oracle.
class DirectCtx {
 public:
  virtual ~DirectCtx() = default;

  // Select one of the (validated, zero-free) choices, accounting its weight.
  virtual Value choose(const std::vector<Choice>& retained) = 0;
  [[noreturn]] virtual void fail() = 0;

  virtual std::uint64_t alloc_cell() = 0;
  virtual const std::any* cache_lookup(const BranchState::Key& key) = 0;
  virtual void cache_store(const BranchState::Key& key, std::any v) = 0;

  // Nested exact inference, inheriting the current memo state.
  virtual WeightTable nested_exact(const Model<Value>& m) = 0;

  // Context for one inner sampling run: choices and failure delegate to this
  // context, but the memo store is an isolated snapshot.
  virtual std::unique_ptr<DirectCtx> make_inner() = 0;
};

template <class T>
struct Model {
  using value_type = T;

  std::function<Response(BranchState, RunCtxPtr, Cont<T>)> cps;
  std::function<T(DirectCtx&)> direct;

  template <class F>
  auto then(F f) const;  // monadic bind
  template <class F>
  auto map(F f) const;
};

namespace detail {

template <class T>
struct ResumeRequest final : RequestImpl {
  Cont<T> k;
  T v;
  BranchState s;
  ResumeRequest(Cont<T> k, T v, BranchState s)
      : k(std::move(k)), v(std::move(v)), s(std::move(s)) {}
  // Multi-shot: copies of the value and state snapshot go out on every call.
  Response operator()() const override { return (*k)(v, s); }
};

}  // namespace detail

template <class T>
Model<std::decay_t<T>> pure(T&& v) {
  using U = std::decay_t<T>;
  auto vp = std::make_shared<const U>(std::forward<T>(v));
  return Model<U>{
      [vp](BranchState s, RunCtxPtr, Cont<U> k) { return (*k)(*vp, std::move(s)); },
      [vp](DirectCtx&) { return *vp; }};
}

template <class A, class F>
auto bind(Model<A> m, F f) -> std::invoke_result_t<F, A> {
  using MB = std::invoke_result_t<F, A>;
  using B = typename MB::value_type;
  auto mp = std::make_shared<const Model<A>>(std::move(m));
  auto fp = std::make_shared<const F>(std::move(f));
  return MB{
      [mp, fp](BranchState s, RunCtxPtr ctx, Cont<B> k) {
        return mp->cps(std::move(s), ctx,
                       make_cont<A>([fp, ctx, k](A a, BranchState s2) {
                         return (*fp)(std::move(a)).cps(std::move(s2), ctx, k);
                       }));
      },
      [mp, fp](DirectCtx& c) { return (*fp)(mp->direct(c)).direct(c); }};
}

template <class T>
Model<T> fail() {
  return Model<T>{
      [](BranchState, RunCtxPtr, Cont<T>) { return Response(); },
      [](DirectCtx& c) -> T {
        c.fail();
        throw std::logic_error("unreachable: DirectCtx::fail returned");
      }};
}

// Zero-probability evidence as a statement: require(cond) fails the branch.
inline Model<Unit> require(bool cond) {
  return cond ? pure(Unit{}) : fail<Unit>();
}

// The probabilistic choice effect. One tree node per execution; one child per
// retained choice, in the order supplied.
inline Model<Value> dist(std::vector<Choice> choices) {
  auto retained = std::make_shared<const std::vector<Choice>>(
      validate_choices(std::move(choices)));
  return Model<Value>{
      [retained](BranchState s, RunCtxPtr ctx, Cont<Value> k) {
        if (ctx->counter)
          ctx->counter->dist_calls.fetch_add(1, std::memory_order_relaxed);
        std::vector<ResponseEntry> es;
        es.reserve(retained->size());
        for (const auto& [w, v] : *retained)
          es.push_back({w, Possibility::open(
                               std::make_shared<detail::ResumeRequest<Value>>(
                                   k, v, s))});
        return Response(std::move(es));
      },
      [retained](DirectCtx& c) { return c.choose(*retained); }};
}

// Defers model construction to execution time (per explored branch).
template <class F, class MT = std::invoke_result_t<F>>
MT defer(F f) {
  using T = typename MT::value_type;
  auto fp = std::make_shared<const F>(std::move(f));
  return MT{
      [fp](BranchState s, RunCtxPtr ctx, Cont<T> k) {
        return (*fp)().cps(std::move(s), ctx, k);
      },
      [fp](DirectCtx& c) { return (*fp)().direct(c); }};
}

// Allocates a fresh memo cell id in the current branch (no tree node).
inline Model<std::uint64_t> alloc_cell() {
  return Model<std::uint64_t>{
      [](BranchState s, RunCtxPtr, Cont<std::uint64_t> k) {
        std::uint64_t id = s.next_cell++;
        return (*k)(id, std::move(s));
      },
      [](DirectCtx& c) { return c.alloc_cell(); }};
}

// Runs `compute` at most once per branch for a given (cell, key); later
// applications on the same branch return the cached result without a node.
template <class T>
Model<T> cached_apply(std::uint64_t cell, Value key, Model<T> compute) {
  auto cp = std::make_shared<const Model<T>>(std::move(compute));
  auto kp = std::make_shared<const BranchState::Key>(cell, std::move(key));
  return Model<T>{
      [kp, cp](BranchState s, RunCtxPtr ctx, Cont<T> k) {
        if (auto it = s.cache.find(*kp); it != s.cache.end())
          return (*k)(std::any_cast<T>(it->second), std::move(s));
        return cp->cps(std::move(s), ctx,
                       make_cont<T>([kp, k](T t, BranchState s2) {
                         s2.cache[*kp] = t;
                         return (*k)(std::move(t), std::move(s2));
                       }));
      },
      [kp, cp](DirectCtx& c) -> T {
        if (const std::any* hit = c.cache_lookup(*kp))
          return std::any_cast<T>(*hit);
        T t = cp->direct(c);
        c.cache_store(*kp, t);
        return t;
      }};
}

template <class A, class F>
auto fmap(Model<A> m, F f) -> Model<std::decay_t<std::invoke_result_t<F, A>>> {
  using B = std::decay_t<std::invoke_result_t<F, A>>;
  return bind(std::move(m),
              [f = std::move(f)](A a) { return pure<B>(f(std::move(a))); });
}

template <class T>
template <class F>
auto Model<T>::then(F f) const {
  return probtree::bind(*this, std::move(f));
}

template <class T>
template <class F>
auto Model<T>::map(F f) const {
  return probtree::fmap(*this, std::move(f));
}

// dist over typed choices (encoded through Value).
template <class T>
Model<T> dist_over(const std::vector<std::pair<double, T>>& choices) {
  std::vector<Choice> cs;
  cs.reserve(choices.size());
  for (const auto& [w, v] : choices) cs.emplace_back(w, to_value(v));
  return fmap(dist(std::move(cs)),
              [](Value v) { return from_value<T>(v); });
}

}  // namespace probtree
