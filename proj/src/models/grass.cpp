#include "probtree/models/grass.hpp"

#include "probtree/memo.hpp"
#include "probtree/stdlib.hpp"

namespace probtree::models {

// Joint: cloudy ~ flip 0.5; rain ~ flip (cloudy ? 0.8 : 0.2);
// sprinkler ~ flip (cloudy ? 0.1 : 0.5); wet_roof = flip 0.7 && rain;
// wet_grass = flip 0.9 && rain || flip 0.9 && sprinkler.
// Query: P(rain | wet_grass). The conjunctions short-circuit left to right,
// so the second noise flip happens only when the first conjunct is false.

Model<Value> grass_eager() {
  return flip(0.5).then([](bool cloudy) {
    return flip(cloudy ? 0.8 : 0.2).then([cloudy](bool rain) {
      return flip(cloudy ? 0.1 : 0.5).then([rain](bool sprinkler) {
        // Drawn like the other variables, never consulted by the query.
        return flip(0.7).then([rain, sprinkler](bool) {
          Model<bool> wet_grass =
              flip(0.9).then([rain, sprinkler](bool n1) -> Model<bool> {
                if (n1 && rain) return pure(true);
                return flip(0.9).map(
                    [sprinkler](bool n2) { return n2 && sprinkler; });
              });
          return wet_grass.then([rain](bool wet) -> Model<Value> {
            if (!wet) return fail<Value>();
            return pure(Value(rain));
          });
        });
      });
    });
  });
}

namespace {

// b() && m — force b only as far as the short-circuit requires.
Model<bool> lazy_and(Model<bool> noise, Lazy<bool> var) {
  return noise.then([var](bool n) -> Model<bool> {
    if (!n) return pure(false);
    return var.force();
  });
}

}  // namespace

Model<Value> grass_lazy() {
  return letlazy(flip(0.5)).then([](Lazy<bool> cloudy) {
    Model<bool> rain_draw =
        cloudy.force().then([](bool c) { return flip(c ? 0.8 : 0.2); });
    return letlazy(rain_draw).then([cloudy](Lazy<bool> rain) {
      Model<bool> sprinkler_draw =
          cloudy.force().then([](bool c) { return flip(c ? 0.1 : 0.5); });
      return letlazy(sprinkler_draw).then([rain](Lazy<bool> sprinkler) {
        return letlazy(lazy_and(flip(0.7), rain))
            .then([rain, sprinkler](Lazy<bool>) {  // wet_roof: never forced
              Model<bool> wet_grass_draw =
                  lazy_and(flip(0.9), rain).then(
                      [sprinkler](bool left) -> Model<bool> {
                        if (left) return pure(true);
                        return lazy_and(flip(0.9), sprinkler);
                      });
              return letlazy(wet_grass_draw)
                  .then([rain](Lazy<bool> wet_grass) {
                    return wet_grass.force().then(
                        [rain](bool wet) -> Model<Value> {
                          if (!wet) return fail<Value>();
                          return rain.force().map(
                              [](bool r) { return Value(r); });
                        });
                  });
            });
      });
    });
  });
}

}  // namespace probtree::models
