#include "probtree/inference.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "probtree/errors.hpp"
#include "probtree/numeric.hpp"

namespace probtree {

// ---------------------------------------------------------------------------
// Exact inference
// ---------------------------------------------------------------------------

namespace {

void dfs_accumulate(const Response& r, double w, WeightTable& t) {
  for (const auto& entry : r) {
    const double w2 = w * entry.weight;
    if (w2 <= 0.0) continue;
    if (entry.poss.is_closed()) {
      t.add(entry.poss.value(), w2);
    } else {
      dfs_accumulate(entry.poss.request(), w2, t);
    }
  }
}

}  // namespace

WeightTable exact_reify(const Model<Value>& m) { return table_of(reify(m)); }

WeightTable table_of(const Response& r) {
  WeightTable t;
  dfs_accumulate(r, 1.0, t);
  return t;
}

WeightTable closed_mass(const Response& r) {
  WeightTable t;
  for (const auto& entry : r) {
    if (entry.poss.is_closed()) t.add(entry.poss.value(), entry.weight);
  }
  return t;
}

Model<WeightTable> exact_table(Model<Value> m) {
  auto mp = std::make_shared<const Model<Value>>(std::move(m));
  return Model<WeightTable>{
      [mp](BranchState s, RunCtxPtr ctx, Cont<WeightTable> k) {
        // The inner run sees a copy of the enclosing branch state: memoized
        // facts flow in, the inner model's own writes are discarded.
        WeightTable t = table_of(reify_with(*mp, s, ctx));
        return (*k)(std::move(t), std::move(s));
      },
      [mp](DirectCtx& c) { return c.nested_exact(*mp); }};
}

bool at_least(double threshold, const Value& v, const WeightTable& t) {
  return t.get(v) >= threshold;
}

// ---------------------------------------------------------------------------
// Nested sampling as a model
// ---------------------------------------------------------------------------

namespace {

// One root-to-leaf walk of a reified tree, with the walk's choices expressed
// as dist nodes of the enclosing model. Dead ends become enclosing failures.
Model<Value> walk_response(Response r);

Model<Value> walk_response(Response r) {
  if (r.empty()) return fail<Value>();
  std::vector<Choice> selector;
  selector.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    selector.emplace_back(r[i].weight,
                          Value(static_cast<std::int64_t>(i)));
  }
  auto rp = std::make_shared<const Response>(std::move(r));
  return dist(std::move(selector)).then([rp](Value iv) -> Model<Value> {
    const auto& entry = (*rp)[static_cast<std::size_t>(iv.as_int())];
    if (entry.poss.is_closed()) return pure(entry.poss.value());
    Possibility poss = entry.poss;
    return defer([poss] { return walk_response(poss.request()); });
  });
}

Model<WeightTable> run_walks(std::shared_ptr<const Response> root, int total,
                             int remaining, std::map<Value, int> counts) {
  if (remaining == 0) {
    WeightTable t;
    for (const auto& [v, n] : counts) {
      t.add(v, static_cast<double>(n) / static_cast<double>(total));
    }
    return pure(std::move(t));
  }
  return walk_response(*root).then(
      [root, total, remaining, counts](Value v) {
        auto next = counts;
        ++next[v];
        return run_walks(root, total, remaining - 1, std::move(next));
      });
}

}  // namespace

Model<WeightTable> sampling_as_model(int samples, Model<Value> inner) {
  if (samples < 1) {
    throw std::invalid_argument("sampling_as_model: samples must be >= 1");
  }
  auto ip = std::make_shared<const Model<Value>>(std::move(inner));
  return Model<WeightTable>{
      [ip, samples](BranchState s, RunCtxPtr ctx, Cont<WeightTable> k) {
        auto root = std::make_shared<const Response>(reify_with(*ip, s, ctx));
        return run_walks(root, samples, samples, {})
            .cps(std::move(s), std::move(ctx), std::move(k));
      },
      [ip, samples](DirectCtx& c) {
        std::map<Value, int> counts;
        for (int i = 0; i < samples; ++i) {
          auto sub = c.make_inner();
          ++counts[ip->direct(*sub)];
        }
        WeightTable t;
        for (const auto& [v, n] : counts) {
          t.add(v, static_cast<double>(n) / static_cast<double>(samples));
        }
        return t;
      }};
}

// ---------------------------------------------------------------------------
// Shared-bucket memoization
// ---------------------------------------------------------------------------

namespace {

struct BucketState {
  std::function<Model<Value>(const RecFn&, Value)> f;
  std::mutex mu;
  // Separate caches per execution lane: the direct lane's tables come from
  // the ambient DirectCtx and must never feed the tree-walking lane (or vice
  // versa), so that each lane stays self-contained.
  std::map<Value, WeightTable> tree_cache;
  std::map<Value, WeightTable> direct_cache;
};

Model<Value> bucket_node(std::shared_ptr<BucketState> s, Value x);

RecFn make_self(std::shared_ptr<BucketState> s) {
  return [s](Value x) { return bucket_node(s, std::move(x)); };
}

template <class Compute>
WeightTable bucket_table(BucketState& s,
                         std::map<Value, WeightTable> BucketState::* cache,
                         const Value& x, Compute&& compute) {
  {
    std::lock_guard<std::mutex> lock(s.mu);
    auto it = (s.*cache).find(x);
    if (it != (s.*cache).end()) return it->second;
  }
  // Computed outside the lock: the bucket body may itself call back into
  // this bucket (recursive models), which must not deadlock.
  WeightTable t = compute();
  std::lock_guard<std::mutex> lock(s.mu);
  auto [it, fresh] = (s.*cache).try_emplace(x, std::move(t));
  (void)fresh;  // a racing thread computed the same deterministic table
  return it->second;
}

std::vector<Choice> table_choices(const WeightTable& t) {
  std::vector<Choice> cs;
  cs.reserve(t.size());
  for (const auto& [v, w] : t) cs.emplace_back(w, v);
  return cs;
}

Model<Value> bucket_node(std::shared_ptr<BucketState> s, Value x) {
  return Model<Value>{
      [s, x](BranchState st, RunCtxPtr ctx, Cont<Value> k) {
        WeightTable t = bucket_table(
            *s, &BucketState::tree_cache, x, [&] {
              // Fresh branch: the bucket body is self-contained. The ambient
              // run context flows in so its choice points are counted.
              return table_of(
                  reify_with(s->f(make_self(s), x), BranchState{}, ctx));
            });
        if (t.size() == 0) return Response{};  // empty bucket: dead branch
        return dist(table_choices(t)).cps(std::move(st), ctx, std::move(k));
      },
      [s, x](DirectCtx& c) {
        WeightTable t = bucket_table(
            *s, &BucketState::direct_cache, x,
            [&] { return c.nested_exact(s->f(make_self(s), x)); });
        if (t.size() == 0) c.fail();
        return c.choose(validate_choices(table_choices(t)));
      }};
}

}  // namespace

RecFn bucketize_rec(std::function<Model<Value>(const RecFn&, Value)> f) {
  auto s = std::make_shared<BucketState>();
  s->f = std::move(f);
  return make_self(std::move(s));
}

RecFn bucketize(std::function<Model<Value>(Value)> f) {
  return bucketize_rec(
      [f = std::move(f)](const RecFn&, Value x) { return f(std::move(x)); });
}

// ---------------------------------------------------------------------------
// Sampling procedures
// ---------------------------------------------------------------------------

namespace {

// Picks an index in proportion to the (positive) weights; u is in [0, 1).
std::size_t pick_proportional(const std::vector<double>& ws, double total,
                              double u) {
  const double target = u * total;
  double cum = 0.0;
  std::size_t last_positive = ws.size();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i] <= 0.0) continue;
    last_positive = i;
    cum += ws[i];
    if (target < cum) return i;
  }
  return last_positive;  // rounding spill lands on the final positive entry
}

Response normalize_response(const Response& r, double total) {
  std::vector<ResponseEntry> entries;
  entries.reserve(r.size());
  for (const auto& e : r) {
    entries.push_back(ResponseEntry{e.weight / total, e.poss});
  }
  return Response(std::move(entries));
}

void rejection_run(const Response& root, std::uint32_t run,
                   RandomSource& rng, SampleReport& rep) {
  Response current = root;
  for (;;) {
    if (current.empty()) return;  // dead end: the run reports nothing
    const double u = rng.next_unit();
    double cum = 0.0;
    const ResponseEntry* picked = nullptr;
    for (const auto& e : current) {
      cum += e.weight;
      if (u < cum) {
        picked = &e;
        break;
      }
    }
    // Weight deficit: the draw landed past the total (< 1) — failed run.
    if (picked == nullptr) return;
    if (picked->poss.is_closed()) {
      rep.items.push_back(
          SampleReport::Item{run, picked->poss.value(), 1.0});
      return;
    }
    Response next = picked->poss.request();
    current = std::move(next);
  }
}

void importance_run(const Response& root, std::uint32_t run,
                    RandomSource& rng, SampleReport& rep) {
  double branch_weight = 1.0;
  Response current = root;
  for (;;) {
    if (current.empty()) return;
    // Sole Open child: descend deterministically, no draw spent.
    if (current.size() == 1 && !current[0].poss.is_closed()) {
      branch_weight *= current[0].weight;
      current = current[0].poss.request();
      continue;
    }
    struct Candidate {
      double mass;  // edge weight x one-step total of the child
      Response child;
    };
    std::vector<Candidate> unsettled;
    for (const auto& e : current) {
      if (e.poss.is_closed()) {
        // Settled now: bank it at the cumulative branch weight.
        rep.items.push_back(SampleReport::Item{
            run, e.poss.value(), branch_weight * e.weight});
        continue;
      }
      Response child = e.poss.request();
      // Look-ahead: a child that settles to a single value is banked without
      // ever being committed to.
      if (child.size() == 1 && child[0].poss.is_closed()) {
        rep.items.push_back(SampleReport::Item{
            run, child[0].poss.value(),
            branch_weight * e.weight * child[0].weight});
        continue;
      }
      const double step_total = child.total();
      unsettled.push_back(Candidate{e.weight * step_total, std::move(child)});
    }
    if (unsettled.empty()) return;
    std::vector<double> masses;
    masses.reserve(unsettled.size());
    for (const auto& c : unsettled) masses.push_back(c.mass);
    const double total_mass = pairwise_sum(masses);
    if (!(total_mass > 0.0)) return;  // nothing live below this level
    const std::size_t pick =
        pick_proportional(masses, total_mass, rng.next_unit());
    branch_weight *= total_mass;
    const double child_total = unsettled[pick].child.total();
    current = normalize_response(unsettled[pick].child, child_total);
  }
}

SampleReport sample_runs(SampleKind kind, const Response& root,
                         std::uint32_t lo, std::uint32_t hi,
                         std::uint64_t seed) {
  SampleReport rep;
  rep.runs = hi - lo;
  for (std::uint32_t i = lo; i < hi; ++i) {
    RandomSource rng = RandomSource::for_run(seed, i);
    if (kind == SampleKind::kRejection) {
      rejection_run(root, i, rng, rep);
    } else {
      importance_run(root, i, rng, rep);
    }
  }
  return rep;
}

}  // namespace

SampleReport rejection_sample(const Model<Value>& m, int runs,
                              RandomSource rng) {
  if (runs < 0) throw std::invalid_argument("rejection_sample: runs < 0");
  const Response root = reify(m);
  return sample_runs(SampleKind::kRejection, root, 0,
                     static_cast<std::uint32_t>(runs), rng.seed());
}

SampleReport importance_sample(const Model<Value>& m, int runs,
                               RandomSource rng) {
  if (runs < 0) throw std::invalid_argument("importance_sample: runs < 0");
  const Response root = reify(m);
  return sample_runs(SampleKind::kImportance, root, 0,
                     static_cast<std::uint32_t>(runs), rng.seed());
}

SampleReport sample_parallel(SampleKind kind, const Model<Value>& m,
                             int runs, std::uint64_t seed, int jobs) {
  if (runs < 0) throw std::invalid_argument("sample_parallel: runs < 0");
  if (jobs < 1) throw std::invalid_argument("sample_parallel: jobs < 1");
  const Response root = reify(m);
  const auto n = static_cast<std::uint32_t>(runs);
  if (jobs == 1 || n < 2) {
    return sample_runs(kind, root, 0, n, seed);
  }
  const auto workers =
      std::min<std::uint32_t>(static_cast<std::uint32_t>(jobs), n);
  std::vector<SampleReport> blocks(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::uint32_t w = 0; w < workers; ++w) {
    const std::uint32_t lo = n / workers * w + std::min(w, n % workers);
    const std::uint32_t hi =
        n / workers * (w + 1) + std::min(w + 1, n % workers);
    threads.emplace_back([&blocks, &root, kind, seed, lo, hi, w] {
      blocks[w] = sample_runs(kind, root, lo, hi, seed);
    });
  }
  for (auto& t : threads) t.join();
  SampleReport rep;
  for (auto& b : blocks) rep.merge(std::move(b));
  return rep;
}

}  // namespace probtree
