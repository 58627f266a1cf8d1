#include "probtree/stdlib.hpp"

#include <string>
#include <utility>
#include <vector>

#include "probtree/errors.hpp"
#include "probtree/numeric.hpp"

namespace probtree {

Model<bool> flip(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidWeightError("flip: probability " + render_double(p) +
                             " outside [0, 1]");
  }
  return dist_over<bool>({{p, true}, {1.0 - p, false}});
}

Model<std::int64_t> uniform(std::int64_t n) {
  if (n <= 0) {
    throw EmptyChoicesError("uniform: no outcomes for n = " +
                            std::to_string(n));
  }
  std::vector<std::pair<double, std::int64_t>> choices;
  choices.reserve(static_cast<std::size_t>(n));
  const double w = 1.0 / static_cast<double>(n);
  for (std::int64_t i = 0; i < n; ++i) choices.emplace_back(w, i);
  return dist_over<std::int64_t>(std::move(choices));
}

}  // namespace probtree
