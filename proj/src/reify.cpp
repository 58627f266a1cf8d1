#include "probtree/reify.hpp"

#include <atomic>
#include <map>
#include <vector>

namespace probtree {

Response reify_with(const Model<Value>& m, BranchState state, RunCtxPtr ctx) {
  return m.cps(std::move(state), std::move(ctx),
               make_cont<Value>([](Value v, BranchState) {
                 return Response::closed_singleton(std::move(v));
               }));
}

Response reify(const Model<Value>& m) {
  return reify_with(m, BranchState{}, default_ctx());
}

namespace {

// remaining < 0 means unbounded.
void explore_into(const Response& r, double w, int remaining,
                  std::vector<std::pair<Value, double>>& closed,
                  std::map<Value, std::size_t>& index,
                  std::vector<ResponseEntry>& opens) {
  for (const auto& entry : r) {
    const double w2 = w * entry.weight;
    if (entry.poss.is_closed()) {
      auto [it, fresh] = index.try_emplace(entry.poss.value(), closed.size());
      if (fresh) {
        closed.emplace_back(entry.poss.value(), w2);
      } else {
        closed[it->second].second += w2;
      }
    } else if (remaining == 0) {
      opens.push_back(ResponseEntry{w2, entry.poss});
    } else {
      explore_into(entry.poss.request(), w2,
                   remaining < 0 ? -1 : remaining - 1, closed, index, opens);
    }
  }
}

}  // namespace

Response explore(std::optional<int> depth, const Response& r) {
  std::vector<std::pair<Value, double>> closed;
  std::map<Value, std::size_t> index;
  std::vector<ResponseEntry> opens;
  explore_into(r, 1.0, depth ? *depth : -1, closed, index, opens);

  std::vector<ResponseEntry> entries;
  entries.reserve(closed.size() + opens.size());
  for (auto& [v, w] : closed) {
    entries.push_back(ResponseEntry{w, Possibility::closed(std::move(v))});
  }
  for (auto& e : opens) entries.push_back(std::move(e));
  return Response(std::move(entries));
}

std::pair<Model<Value>, std::shared_ptr<ChoiceCounter>> with_counter(
    Model<Value> m) {
  auto counter = std::make_shared<ChoiceCounter>();
  auto inner = std::make_shared<const Model<Value>>(std::move(m));
  auto ctx = std::make_shared<const RunCtx>(RunCtx{counter});
  Model<Value> wrapped{
      [inner, counter, ctx](BranchState s, RunCtxPtr, Cont<Value> k) {
        counter->model_invocations.fetch_add(1, std::memory_order_relaxed);
        return inner->cps(std::move(s), ctx, std::move(k));
      },
      [inner](DirectCtx& c) { return inner->direct(c); }};
  return {std::move(wrapped), counter};
}

}  // namespace probtree
