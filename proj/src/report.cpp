#include "probtree/report.hpp"

#include <map>

namespace probtree {

WeightTable SampleReport::aggregate() const {
  std::map<Value, double> sums;
  for (const auto& item : items) sums[item.value] += item.weight;
  WeightTable out;
  if (runs == 0) return out;
  const double denom = static_cast<double>(runs);
  for (const auto& [v, w] : sums) out.add(v, w / denom);
  return out;
}

}  // namespace probtree
