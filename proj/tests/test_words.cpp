#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "propd2/hall.hpp"
#include "propd2/words.hpp"

using namespace propd2;

TEST_CASE("free reduction") {
  GeneratorSet g(2, 1);
  CHECK(g.rank() == 3);
  auto w = FreeWord::reduce(g, {{1, 2}, {1, -2}, {2, 1}});
  CHECK(w.letters().size() == 1);
  CHECK(w.letters()[0].gen == 2);

  // cascade: x1 x2 x2^{-1} x1^{-1} -> empty
  auto v = FreeWord::reduce(g, {{1, 1}, {2, 1}, {2, -1}, {1, -1}});
  CHECK(v.is_identity());

  CHECK_THROWS_AS(FreeWord::generator(g, 4), WordError);
  CHECK_THROWS_AS(GeneratorSet(0, 0), WordError);
  CHECK_THROWS_AS(GeneratorSet(-1, 2), WordError);
}

TEST_CASE("multiply cancels across the seam") {
  GeneratorSet g(2, 0);
  auto a = FreeWord::reduce(g, {{1, 1}, {2, 3}});
  auto b = FreeWord::reduce(g, {{2, -3}, {1, 2}});
  auto ab = multiply(a, b);
  CHECK(ab == FreeWord::generator(g, 1, 3));
  CHECK(multiply(a, invert(a)).is_identity());
}

TEST_CASE("power and conjugate") {
  GeneratorSet g(2, 0);
  auto a = FreeWord::reduce(g, {{1, 1}, {2, 1}});
  auto a3 = power(a, 3);
  CHECK(a3.length() == 6);
  CHECK(power(a, -2) == invert(power(a, 2)));
  CHECK(power(a, 0).is_identity());
  auto c = conjugate(a, FreeWord::generator(g, 1));
  CHECK(multiply(FreeWord::generator(g, 1), c) == multiply(a, FreeWord::generator(g, 1)));
}

TEST_CASE("commutator convention [u,v] = u^-1 v^-1 u v") {
  GeneratorSet g(2, 0);
  auto u = FreeWord::generator(g, 1);
  auto v = FreeWord::generator(g, 2);
  auto c = commutator(u, v);
  CHECK(c == FreeWord::reduce(g, {{1, -1}, {2, -1}, {1, 1}, {2, 1}}));
  CHECK(commutator(v, u) == invert(c));
}

TEST_CASE("endomorphism application") {
  GeneratorSet g(2, 0);
  auto w = FreeWord::reduce(g, {{1, 2}, {2, -1}});
  // x1 -> x1 x2, x2 -> x2
  std::vector<FreeWord> im = {FreeWord::reduce(g, {{1, 1}, {2, 1}}),
                              FreeWord::generator(g, 2)};
  auto r = apply_endomorphism(w, im);
  CHECK(r == FreeWord::reduce(g, {{1, 1}, {2, 1}, {1, 1}}));
  CHECK(apply_endomorphism(w, identity_images(g)) == w);
}

TEST_CASE("hall basis dimensions follow the Witt formula") {
  // necklace counts: rank 2 -> 2,1,2,3,6,9,18; rank 3 -> 3,3,8,18,48
  HallBasis h2(2, 7);
  CHECK(h2.dims() == std::vector<int>{2, 1, 2, 3, 6, 9, 18});
  HallBasis h3(3, 5);
  CHECK(h3.dims() == std::vector<int>{3, 3, 8, 18, 48});
  CHECK(h3.count_up_to(3) == 14);
}

TEST_CASE("hall entries satisfy the defining conditions") {
  HallBasis h(3, 6);
  for (int i = 0; i < h.size(); ++i) {
    const auto& e = h.entry(i);
    if (e.is_generator()) {
      CHECK(e.weight == 1);
      continue;
    }
    CHECK(e.left > e.right);
    CHECK(e.left < i);
    CHECK(e.weight == h.weight(e.left) + h.weight(e.right));
    const auto& l = h.entry(e.left);
    if (!l.is_generator()) CHECK(l.right <= e.right);
    CHECK(h.definition(e.left, e.right) == i);
  }
}

TEST_CASE("hall word expansion") {
  GeneratorSet g(2, 0);
  HallBasis h(2, 3);
  // entry 2 is [x2, x1]
  CHECK(h.word(2, g) == commutator(FreeWord::generator(g, 2), FreeWord::generator(g, 1)));
}
