#pragma once

// Lazy stochastic lists. The spine and the elements are memoized separately:
// walking the structure never forces an element, and forcing one element
// never forces its neighbours. Append allocates a single deferred cell and
// forces nothing — demand propagates one node at a time.

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "probtree/memo.hpp"
#include "probtree/model.hpp"

namespace probtree {

template <class E>
class LazyList;

// One resolved spine node: either the end of the list or a (head cell, tail
// list) pair. Heads stay lazy even after the spine is resolved.
template <class E>
struct LazyNode {
  std::optional<std::pair<Lazy<E>, LazyList<E>>> cons;

  static LazyNode nil() { return LazyNode{}; }
  static LazyNode make(Lazy<E> head, LazyList<E> tail) {
    return LazyNode{std::make_pair(std::move(head), std::move(tail))};
  }
};

template <class E>
class LazyList {
 public:
  explicit LazyList(Lazy<LazyNode<E>> cell) : cell_(std::move(cell)) {}

  static LazyList nil() {
    return LazyList(Lazy<LazyNode<E>>::constant(LazyNode<E>::nil()));
  }
  static LazyList cons(Lazy<E> head, LazyList tail) {
    return LazyList(Lazy<LazyNode<E>>::constant(
        LazyNode<E>::make(std::move(head), std::move(tail))));
  }

  // Resolves just this list's first node (memoized per branch).
  Model<LazyNode<E>> force_node() const { return cell_.force(); }

 private:
  Lazy<LazyNode<E>> cell_;
};

// List of independently-lazy elements with a fully determined spine.
template <class E>
Model<LazyList<E>> lazy_list_of(std::vector<Model<E>> elems) {
  Model<LazyList<E>> acc = pure(LazyList<E>::nil());
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
    Model<E> head = std::move(*it);
    acc = acc.then([head](LazyList<E> tail) {
      return fmap(letlazy(head), [tail](Lazy<E> h) {
        return LazyList<E>::cons(h, tail);
      });
    });
  }
  return acc;
}

// Append without forcing: one fresh spine cell whose computation, when first
// demanded on a branch, resolves y's first node and rebuilds from there.
template <class E>
Model<LazyList<E>> lappend(LazyList<E> y, LazyList<E> z) {
  Model<LazyNode<E>> step =
      y.force_node().then([z](LazyNode<E> node) -> Model<LazyNode<E>> {
        if (!node.cons) return z.force_node();
        Lazy<E> head = node.cons->first;
        LazyList<E> tail = node.cons->second;
        return fmap(lappend(tail, z), [head](LazyList<E> rest) {
          return LazyNode<E>::make(head, rest);
        });
      });
  return fmap(letlazy(std::move(step)), [](Lazy<LazyNode<E>> cell) {
    return LazyList<E>(cell);
  });
}

namespace detail {

template <class E>
Model<std::vector<E>> force_list_from(LazyList<E> xs, std::vector<E> acc) {
  return xs.force_node().then(
      [acc](LazyNode<E> node) -> Model<std::vector<E>> {
        if (!node.cons) return pure(acc);
        Lazy<E> head = node.cons->first;
        LazyList<E> tail = node.cons->second;
        return head.force().then([acc, tail](E e) {
          auto next = acc;
          next.push_back(std::move(e));
          return force_list_from(tail, std::move(next));
        });
      });
}

}  // namespace detail

// Forces the whole list, elements included, left to right.
template <class E>
Model<std::vector<E>> force_list(LazyList<E> xs) {
  return detail::force_list_from(std::move(xs), std::vector<E>{});
}

}  // namespace probtree
