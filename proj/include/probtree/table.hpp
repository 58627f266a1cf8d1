#pragma once

// WeightTable: the result of exact inference — a finite map from outcome
// values to accumulated probability mass. Sub-normalized: total() <= 1, with
// any deficit being failure mass. Iteration order is the total order on
// Value, so downstream output is deterministic.

#include <cstddef>
#include <map>

#include "probtree/value.hpp"

namespace probtree {

class WeightTable {
 public:
  using Map = std::map<Value, double>;

  // Accumulates mass onto a value. Non-positive contributions are dropped so
  // that every stored weight stays strictly positive.
  void add(const Value& v, double w) {
    if (w <= 0.0) return;
    entries_[v] += w;
  }

  double get(const Value& v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? 0.0 : it->second;
  }

  double total() const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  // True when both tables hold the same values with weights within tol.
  bool close_to(const WeightTable& o, double tol) const;

 private:
  Map entries_;
};

}  // namespace probtree
