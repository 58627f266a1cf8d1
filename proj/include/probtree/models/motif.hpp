#pragma once

// Stochastic motif development, in the style of generative music: a source
// melody is transformed by a random binary tree of edits — whole subtrees may
// be deleted or transposed, runs of notes survive verbatim — and a likelihood
// query asks how probable a given variant is. Everything is lazy: structure
// decisions live in list spine cells and notes in element cells, so a
// mismatch early in the variant cuts off the rest of the tree unexplored.

#include <cstdint>
#include <functional>
#include <vector>

#include "probtree/lazy_list.hpp"
#include "probtree/model.hpp"

namespace probtree::models {

struct MotifParams {
  double stop = 0.3;       // chance a segment stays a literal run
  double erase = 0.2;      // chance a subtree is deleted outright
  double transpose = 0.15; // chance of a semitone shift, each direction
};

// Test instrumentation: called with the source index each time a note cell's
// computation actually runs.
using NoteHook = std::function<void(std::size_t index)>;

// The developed variant of src as a lazy list of pitch classes (mod 12).
Model<LazyList<std::int64_t>> develop_motif(std::vector<std::int64_t> src,
                                            MotifParams params = {},
                                            NoteHook hook = nullptr);

// P(develop(src) == dst): walks dst against the lazy variant and fails at
// the first disagreement. Succeeds with Value(true) on a full match.
Model<Value> motif_likelihood(std::vector<std::int64_t> src,
                              std::vector<std::int64_t> dst,
                              MotifParams params = {},
                              NoteHook hook = nullptr);

// The fully forced variant as a list value (for exact enumeration of the
// whole development distribution of a short motif).
Model<Value> motif_listing(std::vector<std::int64_t> src,
                           MotifParams params = {});

}  // namespace probtree::models
