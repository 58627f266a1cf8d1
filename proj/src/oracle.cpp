#include "probtree/oracle.hpp"

#include <any>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace probtree::oracle {
namespace {

// Branch abort: thrown by fail(), caught by the trail driver. Not an error.
struct OracleFail {};

struct TrailStep {
  std::size_t chosen;
  std::size_t options;
};

struct MemoState {
  std::uint64_t next_cell = 0;
  std::map<BranchState::Key, std::any> cache;
};

WeightTable enumerate_with(const Model<Value>& m, const MemoState& seed);

// Sampling contexts (make_inner) share the enclosing replay's choice points
// but keep an isolated memo snapshot: the inner model's own memoization must
// not leak back into the enclosing branch.
class InnerCtx final : public DirectCtx {
 public:
  InnerCtx(DirectCtx& parent, MemoState memo)
      : parent_(parent), memo_(std::move(memo)) {}

  Value choose(const std::vector<Choice>& retained) override {
    return parent_.choose(retained);
  }
  [[noreturn]] void fail() override {
    parent_.fail();
    throw OracleFail{};  // unreachable; keeps [[noreturn]] honest
  }
  std::uint64_t alloc_cell() override { return memo_.next_cell++; }
  const std::any* cache_lookup(const BranchState::Key& key) override {
    auto it = memo_.cache.find(key);
    return it == memo_.cache.end() ? nullptr : &it->second;
  }
  void cache_store(const BranchState::Key& key, std::any v) override {
    memo_.cache[key] = std::move(v);
  }
  WeightTable nested_exact(const Model<Value>& m) override {
    return enumerate_with(m, memo_);
  }
  std::unique_ptr<DirectCtx> make_inner() override {
    return std::make_unique<InnerCtx>(*this, memo_);
  }

 private:
  DirectCtx& parent_;
  MemoState memo_;
};

// One replay of the model along (a prefix of) the current trail. Choice
// points beyond the recorded prefix take their first option and extend the
// trail; the driver then backtracks by bumping the deepest bumpable step.
class ReplayCtx final : public DirectCtx {
 public:
  ReplayCtx(std::vector<TrailStep>& trail, MemoState memo)
      : trail_(trail), memo_(std::move(memo)) {}

  double weight() const { return weight_; }

  Value choose(const std::vector<Choice>& retained) override {
    std::size_t idx;
    if (cursor_ < trail_.size()) {
      if (trail_[cursor_].options != retained.size()) {
        throw std::logic_error(
            "oracle: choice point changed arity between replays (model is "
            "impure)");
      }
      idx = trail_[cursor_].chosen;
    } else {
      trail_.push_back(TrailStep{0, retained.size()});
      idx = 0;
    }
    ++cursor_;
    weight_ *= retained[idx].first;
    return retained[idx].second;
  }

  [[noreturn]] void fail() override { throw OracleFail{}; }

  std::uint64_t alloc_cell() override { return memo_.next_cell++; }
  const std::any* cache_lookup(const BranchState::Key& key) override {
    auto it = memo_.cache.find(key);
    return it == memo_.cache.end() ? nullptr : &it->second;
  }
  void cache_store(const BranchState::Key& key, std::any v) override {
    memo_.cache[key] = std::move(v);
  }
  WeightTable nested_exact(const Model<Value>& m) override {
    return enumerate_with(m, memo_);
  }
  std::unique_ptr<DirectCtx> make_inner() override {
    return std::make_unique<InnerCtx>(*this, memo_);
  }

 private:
  std::vector<TrailStep>& trail_;
  MemoState memo_;
  std::size_t cursor_ = 0;
  double weight_ = 1.0;
};

WeightTable enumerate_with(const Model<Value>& m, const MemoState& seed) {
  WeightTable out;
  std::vector<TrailStep> trail;
  for (;;) {
    ReplayCtx ctx(trail, seed);  // fresh memo copy per replay
    try {
      Value v = m.direct(ctx);
      out.add(std::move(v), ctx.weight());
    } catch (const OracleFail&) {
      // dead branch: contributes nothing
    }
    while (!trail.empty() &&
           trail.back().chosen + 1 >= trail.back().options) {
      trail.pop_back();
    }
    if (trail.empty()) break;
    ++trail.back().chosen;
  }
  return out;
}

}  // namespace

WeightTable oracle_enumerate(const Model<Value>& m) {
  return enumerate_with(m, MemoState{});
}

}  // namespace probtree::oracle
