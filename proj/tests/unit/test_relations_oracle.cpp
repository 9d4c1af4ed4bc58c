#include "doctest.h"

#include "corpus.hpp"
#include "oracle.hpp"
#include "semsnap/relations.hpp"

using namespace semsnap;

TEST_CASE("engine relations agree with the brute-force oracle on a random corpus") {
  const auto corpus = testing::random_corpus(400, 2024);
  std::size_t nonempty = 0;
  for (const auto& canvas : corpus) {
    const auto expected = testing::oracle_relations(canvas);
    const auto actual = testing::engine_relations(find_relations(canvas));
    CHECK(actual == expected);
    if (!expected.empty()) ++nonempty;
  }
  CHECK(nonempty > 200);
}

TEST_CASE("hallucinator predicate matches the literal pseudocode reading") {
  for (const auto& canvas : testing::random_corpus(300, 99)) {
    for (std::size_t i = 0; i < canvas.views.size(); ++i) {
      for (std::size_t j = i + 1; j < canvas.views.size(); ++j) {
        const auto ctx = make_pair_context(canvas.views[i], canvas.views[j], canvas.registry);
        CHECK(is_hallucinator(ctx).has_value() ==
              testing::listing_hallucinator(canvas.views[i], canvas.views[j], canvas.registry));
      }
    }
  }
}
