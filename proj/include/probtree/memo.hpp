#pragma once

// First-class memoization over branch-local state. A memoized stochastic
// function is evaluated at most once per argument on any root-to-leaf path;
// the choice it makes becomes a persistent fact of that possible world.
// Sibling branches are isolated (BranchState is copied at forks), so a
// memoized result never leaks across branches.

#include <cstdint>
#include <functional>
#include <memory>
#include <type_traits>
#include <utility>

#include "probtree/model.hpp"

namespace probtree {

template <class A, class B>
using MemoFn = std::function<Model<B>(A)>;

// memo(f): allocates a fresh cell and returns the memoized version of f.
// Arguments are compared structurally (via their Value encoding).
template <class A, class F,
          class B = typename std::invoke_result_t<F, A>::value_type>
Model<MemoFn<A, B>> memo(F f) {
  auto fp = std::make_shared<const F>(std::move(f));
  return fmap(alloc_cell(), [fp](std::uint64_t cell) -> MemoFn<A, B> {
    return [cell, fp](A a) {
      Value key = to_value(a);
      return cached_apply<B>(cell, std::move(key), (*fp)(std::move(a)));
    };
  });
}

// A deferred, branch-memoized computation (memo of a nullary thunk), or a
// plain constant. Forcing a never-forced cell is the only thing that runs it;
// a cell that is never forced contributes nothing to the search tree.
template <class T>
class Lazy {
 public:
  Lazy(std::uint64_t cell, std::shared_ptr<const Model<T>> comp)
      : cell_(cell), comp_(std::move(comp)) {}

  static Lazy constant(T v) {
    Lazy l;
    l.konst_ = std::make_shared<const T>(std::move(v));
    return l;
  }

  Model<T> force() const {
    if (konst_) return pure(*konst_);
    return cached_apply<T>(cell_, Value(), *comp_);
  }

 private:
  Lazy() = default;
  std::uint64_t cell_ = 0;
  std::shared_ptr<const Model<T>> comp_;
  std::shared_ptr<const T> konst_;
};

template <class T>
Model<Lazy<T>> letlazy(Model<T> m) {
  auto comp = std::make_shared<const Model<T>>(std::move(m));
  return fmap(alloc_cell(),
              [comp](std::uint64_t cell) { return Lazy<T>(cell, comp); });
}

}  // namespace probtree
