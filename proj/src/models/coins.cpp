#include "probtree/models/coins.hpp"

#include "probtree/inference.hpp"
#include "probtree/memo.hpp"
#include "probtree/stdlib.hpp"

namespace probtree::models {

namespace {

constexpr double kThreshold = 0.3;

// A coin that lands heads on its own or because the whole session is biased.
Model<Value> coin_given(bool biased) {
  return flip(0.5).map([biased](bool x) { return Value(x || biased); });
}

Model<Value> judge(Model<WeightTable> table) {
  return table.map([](const WeightTable& t) {
    return Value(at_least(kThreshold, Value(true), t));
  });
}

}  // namespace

Model<Value> coin_variant_a() {
  return flip(0.5).then([](bool biased) {
    return judge(exact_table(coin_given(biased)));
  });
}

Model<Value> coin_variant_b() {
  return flip(0.5).then([](bool biased) {
    return judge(sampling_as_model(2, coin_given(biased)));
  });
}

Model<Value> coin_variant_c() {
  // The bias is decided lazily inside the nested run: nothing about it is
  // fixed until some branch of the inner model forces it, and the
  // short-circuit skips forcing whenever the plain flip already landed true.
  Model<Value> coin =
      memo<Unit>([](Unit) { return flip(0.5); })
          .then([](MemoFn<Unit, bool> biased) {
            return flip(0.5).then([biased](bool x) -> Model<Value> {
              if (x) return pure(Value(true));
              return biased(Unit{}).map([](bool b) { return Value(b); });
            });
          });
  return judge(exact_table(std::move(coin)));
}

}  // namespace probtree::models
