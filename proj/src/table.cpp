#include "probtree/table.hpp"

#include <cmath>
#include <vector>

#include "probtree/numeric.hpp"

namespace probtree {

double WeightTable::total() const {
  std::vector<double> ws;
  ws.reserve(entries_.size());
  for (const auto& [v, w] : entries_) ws.push_back(w);
  return pairwise_sum(ws);
}

bool WeightTable::close_to(const WeightTable& o, double tol) const {
  if (entries_.size() != o.entries_.size()) return false;
  auto it = o.entries_.begin();
  for (const auto& [v, w] : entries_) {
    if (!(v == it->first)) return false;
    if (std::fabs(w - it->second) > tol) return false;
    ++it;
  }
  return true;
}

}  // namespace probtree
