#include "probtree/tree.hpp"

#include <vector>

#include "probtree/numeric.hpp"

namespace probtree {

RunCtxPtr default_ctx() {
  static const RunCtxPtr ctx = std::make_shared<const RunCtx>();
  return ctx;
}

double Response::total() const {
  std::vector<double> ws;
  ws.reserve(entries_.size());
  for (const auto& e : entries_) ws.push_back(e.weight);
  return pairwise_sum(ws);
}

}  // namespace probtree
