#include "probtree/models/registry.hpp"

#include <algorithm>

#include "probtree/models/coins.hpp"
#include "probtree/models/grass.hpp"
#include "probtree/models/hmm.hpp"
#include "probtree/models/motif.hpp"

namespace probtree::models {

namespace {

std::vector<ModelEntry> build_registry() {
  std::vector<ModelEntry> entries = {
      {"coin_a", "nested exact inference over a possibly biased coin",
       [] { return coin_variant_a(); }},
      {"coin_b", "nested two-walk sampling over a possibly biased coin",
       [] { return coin_variant_b(); }},
      {"coin_c", "nested exact inference with a memoized bias",
       [] { return coin_variant_c(); }},
      {"grass", "was it raining, given wet grass (eager)",
       [] { return grass_eager(); }},
      {"grass_lazy", "was it raining, given wet grass (lazy cells)",
       [] { return grass_lazy(); }},
      {"hmm_query1", "drift chain state after 10 steps, low reading at 5",
       [] { return query1(); }},
      {"hmm_query1_bucketed",
       "same query with the recursion routed through a shared bucket",
       [] { return query1_bucketed(); }},
      {"hmm_low_5_to_10",
       "drift chain state after 10 steps, low readings at 5 through 10",
       [] { return query_low_5_to_10(); }},
      {"motif_develop", "full development distribution of the motif [0, 2]",
       [] { return motif_listing({0, 2}); }},
      {"motif_likelihood",
       "likelihood that [0, 2, 4] develops into [0, 3, 4]",
       [] { return motif_likelihood({0, 2, 4}, {0, 3, 4}); }},
  };
  std::sort(entries.begin(), entries.end(),
            [](const ModelEntry& a, const ModelEntry& b) {
              return a.name < b.name;
            });
  return entries;
}

}  // namespace

const std::vector<ModelEntry>& registry() {
  static const std::vector<ModelEntry> entries = build_registry();
  return entries;
}

const ModelEntry* find_model(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

}  // namespace probtree::models
