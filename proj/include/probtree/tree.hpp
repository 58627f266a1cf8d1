#pragma once

// The lazy weighted search tree that inference procedures walk.
//
// A Response is one node's ordered children: (weight, possibility) pairs. A
// Possibility is either Closed (the program finished with a value) or Open (it
// stopped at a choice point; requesting it resumes the branch and yields that
// branch's own Response). Requests are multi-shot and pure: resuming never
// re-executes program text before the suspension point, and requesting the
// same Open possibility twice yields equivalent Responses, because each Open
// holds an immutable continuation plus a by-value BranchState snapshot.
//
// BranchState carries the per-branch memo store (deferred/memoized results
// keyed by cell id + structural argument value). Sibling branches never see
// each other's writes: state is copied at every fork, which is what makes
// concurrent expansion of distinct possibilities safe.

#include <any>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "probtree/value.hpp"

namespace probtree {

// Instrumentation shared across every branch of a run (unlike BranchState).
// dist_calls counts choice-node expansions, nested inference included;
// model_invocations counts reifications of a with_counter-wrapped model.
struct ChoiceCounter {
  std::atomic<std::uint64_t> dist_calls{0};
  std::atomic<std::uint64_t> model_invocations{0};
};

struct RunCtx {
  std::shared_ptr<ChoiceCounter> counter;  // may be null
};
using RunCtxPtr = std::shared_ptr<const RunCtx>;

// The ambient context used when no counter is installed.
RunCtxPtr default_ctx();

// Per-branch world state, copied at every fork (value semantics).
struct BranchState {
  using Key = std::pair<std::uint64_t, Value>;  // (cell id, argument)
  std::uint64_t next_cell = 0;
  std::map<Key, std::any> cache;
};

class Response;

namespace detail {
// A resumable suspension: immutable once built, callable any number of times.
struct RequestImpl {
  virtual ~RequestImpl() = default;
  virtual Response operator()() const = 0;
};
}  // namespace detail

class Possibility {
 public:
  static Possibility closed(Value v) {
    Possibility p;
    p.value_ = std::move(v);
    return p;
  }
  static Possibility open(std::shared_ptr<const detail::RequestImpl> r) {
    Possibility p;
    p.request_ = std::move(r);
    return p;
  }

  bool is_closed() const { return request_ == nullptr; }
  const Value& value() const { return value_; }
  Response request() const;

 private:
  Possibility() = default;
  Value value_;
  std::shared_ptr<const detail::RequestImpl> request_;
};

struct ResponseEntry {
  double weight;
  Possibility poss;
};

class Response {
 public:
  Response() = default;
  explicit Response(std::vector<ResponseEntry> es) : entries_(std::move(es)) {}

  static Response closed_singleton(Value v) {
    std::vector<ResponseEntry> es;
    es.push_back({1.0, Possibility::closed(std::move(v))});
    return Response(std::move(es));
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const ResponseEntry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // Pairwise sum of entry weights.
  double total() const;

 private:
  std::vector<ResponseEntry> entries_;
};

inline Response Possibility::request() const { return (*request_)(); }

}  // namespace probtree
