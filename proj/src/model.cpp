#include "probtree/model.hpp"

#include <cmath>

#include "probtree/numeric.hpp"

namespace probtree {

std::vector<Choice> validate_choices(std::vector<Choice> choices) {
  std::vector<Choice> retained;
  retained.reserve(choices.size());
  for (auto& [w, v] : choices) {
    if (w == 0.0) continue;  // zero-weight choices are dropped silently
    if (!std::isfinite(w) || w < 0.0)
      throw InvalidWeightError("dist: invalid weight " + render_double(w));
    retained.emplace_back(w, std::move(v));
  }
  if (retained.empty())
    throw EmptyChoicesError("dist: no choices with positive weight");
  std::vector<double> ws;
  ws.reserve(retained.size());
  for (const auto& [w, v] : retained) ws.push_back(w);
  if (double t = pairwise_sum(ws); t > 1.0 + kWeightSlack)
    throw WeightSumError("dist: weights sum to " + render_double(t) +
                         " > 1");
  return retained;
}

}  // namespace probtree
