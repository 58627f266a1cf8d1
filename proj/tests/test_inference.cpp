#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "probtree/inference.hpp"
#include "probtree/memo.hpp"
#include "probtree/random.hpp"
#include "probtree/reify.hpp"
#include "probtree/stdlib.hpp"

using namespace probtree;

namespace {

// Hand-built tree nodes for sampler unit tests: a request that always
// returns a fixed response.
struct FixedRequest final : detail::RequestImpl {
  Response r;
  explicit FixedRequest(Response r) : r(std::move(r)) {}
  Response operator()() const override { return r; }
};

Possibility open_to(Response r) {
  return Possibility::open(std::make_shared<FixedRequest>(std::move(r)));
}

Response node(std::vector<ResponseEntry> es) { return Response(std::move(es)); }

// Wraps a prebuilt tree as a model (valid only as a top-level target for
// reify-based procedures; it has no direct lane and ignores continuations).
Model<Value> tree_model(Response root) {
  auto rp = std::make_shared<const Response>(std::move(root));
  return Model<Value>{
      [rp](BranchState, RunCtxPtr, Cont<Value>) { return *rp; },
      [](DirectCtx&) -> Value {
        throw std::logic_error("synthetic tree has no direct lane");
      }};
}

}  // namespace

TEST_CASE("exact_reify: weights multiply along paths, failures vanish") {
  Model<Value> m = flip(0.5).then([](bool a) {
    if (!a) return fail<Value>();
    return dist({{0.2, Value(1)}, {0.3, Value(2)}});
  });
  WeightTable t = exact_reify(m);
  CHECK(t.get(Value(1)) == doctest::Approx(0.1));
  CHECK(t.get(Value(2)) == doctest::Approx(0.15));
  CHECK(t.total() == doctest::Approx(0.25));
}

TEST_CASE("exact_table: inner run inherits memoized facts of its branch") {
  // Whatever the outer branch forced, the nested table must agree with it.
  Model<Value> m = letlazy(flip(0.5)).then([](Lazy<bool> cell) {
    return cell.force().then([cell](bool outer) {
      Model<Value> inner = cell.force().map([](bool b) { return Value(b); });
      return exact_table(inner).map([outer](const WeightTable& t) {
        return Value(t.get(Value(outer)) == 1.0);
      });
    });
  });
  WeightTable t = exact_reify(m);
  CHECK(t.get(Value(true)) == doctest::Approx(1.0));
}

TEST_CASE("exact_table: inner writes are discarded afterwards") {
  // The inner run forces the cell (seeing both sides); the outer branch
  // still draws it fresh afterwards.
  Model<Value> m = letlazy(flip(0.5)).then([](Lazy<bool> cell) {
    Model<Value> inner = cell.force().map([](bool b) { return Value(b); });
    return exact_table(inner).then([cell](const WeightTable& t) {
      const bool both = t.get(Value(true)) == 0.5 && t.get(Value(false)) == 0.5;
      return cell.force().map([both](bool outer) {
        return Value(std::string(both ? "open" : "pinned") +
                     (outer ? "-T" : "-F"));
      });
    });
  });
  WeightTable t = exact_reify(m);
  CHECK(t.get(Value("open-T")) == doctest::Approx(0.5));
  CHECK(t.get(Value("open-F")) == doctest::Approx(0.5));
}

TEST_CASE("exact_table: nested evidence shows up as a sub-1 total") {
  Model<Value> inner = flip(0.25).then([](bool b) {
    return require(b).map([](Unit) { return Value("ok"); });
  });
  Model<Value> m = exact_table(inner).map(
      [](const WeightTable& t) { return Value(t.total()); });
  WeightTable t = exact_reify(m);
  REQUIRE(t.size() == 1);
  CHECK(t.begin()->first.as_double() == doctest::Approx(0.25));
}

TEST_CASE("sampling_as_model: enumeration over sampler randomness") {
  // Two walks of a fair coin: frequency of true is 1, .5, or 0 with
  // probability .25, .5, .25.
  Model<Value> coin = flip(0.5).map([](bool b) { return Value(b); });
  Model<Value> m = sampling_as_model(2, coin).map(
      [](const WeightTable& t) { return Value(t.get(Value(true))); });
  WeightTable t = exact_reify(m);
  CHECK(t.get(Value(1.0)) == doctest::Approx(0.25));
  CHECK(t.get(Value(0.5)) == doctest::Approx(0.5));
  CHECK(t.get(Value(0.0)) == doctest::Approx(0.25));
}

TEST_CASE("sampling_as_model: a dead-end walk fails the enclosing branch") {
  Model<Value> inner = flip(0.5).then([](bool b) {
    return require(b).map([](Unit) { return Value("ok"); });
  });
  Model<Value> m = sampling_as_model(1, inner).map(
      [](const WeightTable& t) { return Value(t.get(Value("ok"))); });
  WeightTable t = exact_reify(m);
  CHECK(t.get(Value(1.0)) == doctest::Approx(0.5));
  CHECK(t.total() == doctest::Approx(0.5));  // the failing walk's mass is gone
  CHECK_THROWS_AS(sampling_as_model(0, inner), std::invalid_argument);
}

TEST_CASE("bucketize: the bucket body runs once, ever") {
  auto builds = std::make_shared<std::atomic<int>>(0);
  RecFn g = bucketize([builds](Value) -> Model<Value> {
    builds->fetch_add(1);
    return dist({{0.25, Value(1)}, {0.75, Value(2)}});
  });
  Model<Value> m = dist({{0.5, Value("l")}, {0.5, Value("r")}})
                       .then([g](Value) { return g(Value(0)); });
  WeightTable t = exact_reify(m);
  CHECK(t.get(Value(1)) == doctest::Approx(0.25));
  CHECK(t.get(Value(2)) == doctest::Approx(0.75));
  CHECK(builds->load() == 1);  // shared across both branches
  // And shared across a whole separate reification as well.
  (void)exact_reify(m);
  CHECK(builds->load() == 1);
}

TEST_CASE("bucketize: distinct arguments get distinct buckets") {
  RecFn g = bucketize([](Value x) -> Model<Value> {
    return dist({{0.5, Value(x.as_int())}, {0.5, Value(x.as_int() + 10)}});
  });
  WeightTable t = exact_reify(
      dist({{0.5, Value(1)}, {0.5, Value(2)}}).then([g](Value x) {
        return g(x);
      }));
  CHECK(t.get(Value(1)) == doctest::Approx(0.25));
  CHECK(t.get(Value(11)) == doctest::Approx(0.25));
  CHECK(t.get(Value(2)) == doctest::Approx(0.25));
  CHECK(t.get(Value(12)) == doctest::Approx(0.25));
}

TEST_CASE("bucketize: an empty bucket is a dead branch") {
  RecFn g = bucketize([](Value) { return fail<Value>(); });
  WeightTable t = exact_reify(g(Value(0)));
  CHECK(t.empty());
}

TEST_CASE("bucketize preserves evidence deficits") {
  RecFn g = bucketize([](Value) -> Model<Value> {
    return flip(0.5).then([](bool b) {
      return require(b).map([](Unit) { return Value("s"); });
    });
  });
  WeightTable t = exact_reify(g(Value(0)));
  CHECK(t.get(Value("s")) == doctest::Approx(0.5));
  CHECK(t.total() == doctest::Approx(0.5));
}

TEST_CASE("bucketize_rec: recursion through the bucket is linear") {
  auto builds = std::make_shared<std::atomic<int>>(0);
  RecFn chain = bucketize_rec(
      [builds](const RecFn& self, Value n) -> Model<Value> {
        builds->fetch_add(1);
        if (n.as_int() == 0) return dist({{0.5, Value(0)}, {0.5, Value(1)}});
        return self(Value(n.as_int() - 1)).then([](Value v) {
          return dist({{0.5, Value(v.as_int())},
                       {0.5, Value(v.as_int() + 1)}});
        });
      });
  WeightTable t = exact_reify(chain(Value(6)));
  CHECK(t.total() == doctest::Approx(1.0));
  CHECK(builds->load() == 7);  // one build per level, not per path
}

TEST_CASE("rejection_sample: seeded runs are reproducible and calibrated") {
  Model<Value> m = dist({{0.2, Value("a")}, {0.3, Value("b")}});
  SampleReport r1 = rejection_sample(m, 20000, RandomSource(11));
  SampleReport r2 = rejection_sample(m, 20000, RandomSource(11));
  REQUIRE(r1.items.size() == r2.items.size());
  for (std::size_t i = 0; i < r1.items.size(); ++i) {
    CHECK(r1.items[i].run == r2.items[i].run);
    CHECK(r1.items[i].value == r2.items[i].value);
    CHECK(r1.items[i].weight == r2.items[i].weight);
  }
  // Roughly half the runs land in the deficit and report nothing.
  WeightTable est = r1.aggregate();
  CHECK(est.get(Value("a")) == doctest::Approx(0.2).epsilon(0.05));
  CHECK(est.get(Value("b")) == doctest::Approx(0.3).epsilon(0.05));
  CHECK(static_cast<double>(r1.items.size()) / 20000.0 ==
        doctest::Approx(0.5).epsilon(0.05));
  // Successes always carry weight 1.
  for (const auto& item : r1.items) CHECK(item.weight == 1.0);
}

TEST_CASE("importance_sample: zero variance on a tree it can settle") {
  // root -> {0.5 closed A, 0.5 open B}; B -> {0.3 closed C, 0.7 open D};
  // D -> {1.0 closed E}. Look-ahead settles everything without a single
  // random commitment, so every run reports exactly the same table.
  Response d = node({{1.0, Possibility::closed(Value("E"))}});
  Response b = node({{0.3, Possibility::closed(Value("C"))},
                     {0.7, open_to(d)}});
  Response root = node({{0.5, Possibility::closed(Value("A"))},
                        {0.5, open_to(b)}});
  Model<Value> m = tree_model(root);

  SampleReport rep = importance_sample(m, 100, RandomSource(99));
  CHECK(rep.runs == 100);
  REQUIRE(rep.items.size() == 300);  // three reports per run
  for (std::size_t i = 0; i < rep.items.size(); i += 3) {
    CHECK(rep.items[i].value == Value("A"));
    CHECK(rep.items[i].weight == 0.5);
    CHECK(rep.items[i + 1].value == Value("C"));
    CHECK(rep.items[i + 1].weight == 0.5 * 0.3);
    CHECK(rep.items[i + 2].value == Value("E"));
    CHECK(rep.items[i + 2].weight == 0.5 * 0.7);
  }
  // The aggregate mean re-sums 100 copies of each weight, so it is only
  // bit-exact for the power-of-two weight; the others pick up summation dust.
  WeightTable est = rep.aggregate();
  CHECK(est.get(Value("A")) == 0.5);
  CHECK(est.get(Value("C")) == doctest::Approx(0.5 * 0.3).epsilon(1e-12));
  CHECK(est.get(Value("E")) == doctest::Approx(0.5 * 0.7).epsilon(1e-12));
}

TEST_CASE("importance_sample: evidence is banked, not rejected") {
  // dist [(0.2, 0), (0.8, 1)] with require(v == 1): every run reports the
  // surviving value at its exact weight - no run is wasted.
  Model<Value> m = dist({{0.2, Value(0)}, {0.8, Value(1)}}).then([](Value v) {
    return require(v.as_int() == 1).map([](Unit) { return Value(1); });
  });
  SampleReport rep = importance_sample(m, 5, RandomSource(3));
  REQUIRE(rep.items.size() == 5);
  for (const auto& item : rep.items) {
    CHECK(item.value == Value(1));
    CHECK(item.weight == 0.8);
  }
}

TEST_CASE("importance_sample: unbiased on a branchy model") {
  Model<Value> m = flip(0.3).then([](bool deep) {
    if (!deep) return dist({{0.2, Value(100)}, {0.3, Value(200)}});
    return uniform(3).then([](std::int64_t i) {
      return flip(0.5).map([i](bool b) {
        return Value(i * 2 + (b ? 1 : 0));
      });
    });
  });
  WeightTable exact = exact_reify(m);
  WeightTable est = importance_sample(m, 40000, RandomSource(17)).aggregate();
  for (const auto& [v, w] : exact) {
    CHECK(est.get(v) == doctest::Approx(w).epsilon(0.05));
  }
}

TEST_CASE("sample_parallel: job count never changes the report") {
  Model<Value> m = flip(0.4).then([](bool a) {
    return a ? dist({{0.5, Value(1)}, {0.25, Value(2)}})
             : dist({{0.9, Value(3)}});
  });
  for (SampleKind kind : {SampleKind::kRejection, SampleKind::kImportance}) {
    SampleReport solo = sample_parallel(kind, m, 5001, 23, 1);
    SampleReport four = sample_parallel(kind, m, 5001, 23, 4);
    CHECK(solo.runs == four.runs);
    REQUIRE(solo.items.size() == four.items.size());
    for (std::size_t i = 0; i < solo.items.size(); ++i) {
      CHECK(solo.items[i].run == four.items[i].run);
      CHECK(solo.items[i].value == four.items[i].value);
      CHECK(solo.items[i].weight == four.items[i].weight);
    }
  }
}

TEST_CASE("at_least") {
  WeightTable t;
  t.add(Value(true), 0.3);
  CHECK(at_least(0.3, Value(true), t));
  CHECK_FALSE(at_least(0.30001, Value(true), t));
  CHECK_FALSE(at_least(0.1, Value(false), t));
  CHECK(at_least(0.0, Value("missing"), t));  // zero threshold always holds
}

TEST_CASE("SampleReport: merge and aggregate") {
  SampleReport a;
  a.runs = 2;
  a.items = {{0, Value(1), 1.0}, {1, Value(2), 0.5}};
  SampleReport b;
  b.runs = 2;
  b.items = {{2, Value(1), 1.0}};
  a.merge(std::move(b));
  CHECK(a.runs == 4);
  WeightTable t = a.aggregate();
  CHECK(t.get(Value(1)) == doctest::Approx(0.5));
  CHECK(t.get(Value(2)) == doctest::Approx(0.125));
  SampleReport empty;
  CHECK(empty.aggregate().empty());
}

TEST_CASE("closed_mass folds only what exploration has settled") {
  Model<Value> m = dist({{0.5, Value(0)}, {0.5, Value(1)}}).then([](Value v) {
    return dist({{1.0, Value(v.as_int() + 10)}});
  });
  Response top = reify(m);
  CHECK(closed_mass(explore(0, top)).empty());
  WeightTable full = closed_mass(explore(std::nullopt, top));
  CHECK(full.total() == doctest::Approx(1.0));
  CHECK(full.close_to(table_of(top), 1e-12));
}
