#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "magnus.hpp"
#include "propd2/collect.hpp"

using namespace propd2;

namespace {

FreeWord rand_word(std::mt19937& rng, GeneratorSet g, int max_letters) {
  std::uniform_int_distribution<int> nlet(1, max_letters);
  std::uniform_int_distribution<int> gen(1, g.rank());
  std::uniform_int_distribution<int> exp(-3, 3);
  std::vector<Letter> raw;
  int n = nlet(rng);
  for (int i = 0; i < n; ++i) {
    int e = exp(rng);
    if (e == 0) e = 1;
    raw.push_back({gen(rng), e});
  }
  return FreeWord::reduce(g, raw);
}

}  // namespace

TEST_CASE("truncation parameter defaults") {
  auto t = TruncationParams::make(3, 3, 4);
  CHECK(t.mod_exp == 1 * 5 + 2);
  CHECK(t.modulus == 2187);
  CHECK(t.q_exp() == 1);
  auto t0 = TruncationParams::make(3, 0, 4);
  CHECK(t0.mod_exp == 7);
  auto t4 = TruncationParams::make(2, 4, 5);
  CHECK(t4.mod_exp == 2 * 6 + 2);
  CHECK_THROWS_AS(TruncationParams::make(4, 0, 3), WordError);
  CHECK_THROWS_AS(TruncationParams::make(3, 6, 3), WordError);
  CHECK_THROWS_AS(TruncationParams::make(2, 4, 0), WordError);
}

TEST_CASE("collection basics") {
  GeneratorSet g(2, 0);
  NilpotentQuotient nq(g, TruncationParams::make(3, 3, 2));
  auto x1 = FreeWord::generator(g, 1);
  auto x2 = FreeWord::generator(g, 2);

  // identity word
  CHECK(nq.collect(FreeWord(g)).is_zero());

  // [x2,x1] is the weight-2 Hall entry itself
  auto c = nq.collect(commutator(x2, x1));
  CHECK(c.coords == std::vector<Int>{0, 0, 1});
  // [x1,x2] is its inverse
  auto ci = nq.collect(commutator(x1, x2));
  CHECK(ci.coords == std::vector<Int>{0, 0, -1});

  // x2 x1 = x1 x2 [x2,x1]
  auto m = nq.collect(multiply(x2, x1));
  CHECK(m.coords == std::vector<Int>{1, 1, 1});

  CHECK_THROWS_AS(nq.collect(FreeWord::generator(GeneratorSet(3, 0), 1)), WordError);
}

TEST_CASE("group laws on malcev elements") {
  GeneratorSet g(2, 1);
  NilpotentQuotient nq(g, TruncationParams::make(2, 2, 4));
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    auto a = nq.collect(rand_word(rng, g, 5));
    auto b = nq.collect(rand_word(rng, g, 5));
    auto c = nq.collect(rand_word(rng, g, 5));
    CHECK(nq.equal(nq.multiply(nq.multiply(a, b), c), nq.multiply(a, nq.multiply(b, c))));
    CHECK(nq.multiply(a, nq.inverse(a)).is_zero());
    CHECK(nq.equal(nq.multiply(a, nq.identity()), a));
    CHECK(nq.equal(nq.power(a, 5), nq.multiply(a, nq.power(a, 4))));
    CHECK(nq.equal(nq.power(a, -2), nq.inverse(nq.power(a, 2))));
  }
  // exponent modulus: x^(p^M) = 1
  auto x = nq.collect(FreeWord::generator(g, 1));
  CHECK(nq.equal(nq.power(x, nq.params().modulus), nq.identity()));
}

TEST_CASE("collection is multiplicative") {
  GeneratorSet g(3, 0);
  NilpotentQuotient nq(g, TruncationParams::make(3, 0, 4));
  std::mt19937 rng(12);
  for (int t = 0; t < 20; ++t) {
    auto u = rand_word(rng, g, 6);
    auto v = rand_word(rng, g, 6);
    CHECK(nq.equal(nq.collect(multiply(u, v)), nq.multiply(nq.collect(u), nq.collect(v))));
  }
}

TEST_CASE("magnus oracle equivalence") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int p : {2, 3}) {
    for (int cls : {3, 5}) {
      for (int rank : {2, 3}) {
        GeneratorSet g(rank, 0);
        NilpotentQuotient nq(g, TruncationParams::make(p, p, cls));
        for (int t = 0; t < 8; ++t) {
          auto w = rand_word(rng, g, 6);
          // series of w vs series of its collected normal form, both exact
          auto m = nq.collect(w);
          oracle::Series lhs = oracle::embed(w, cls);
          oracle::Series rhs = oracle::Series::one(cls);
          for (int i = 0; i < nq.basis().size(); ++i) {
            if (m.coords[i] == 0) continue;
            rhs = oracle::mul(
                rhs, oracle::power(oracle::embed(nq.basis().word(i, g), cls), m.coords[i]));
          }
          CHECK(lhs == rhs);
          ++checked;
        }
      }
    }
  }
  CHECK(checked >= 64);
}

TEST_CASE("commutator identities in collected form") {
  GeneratorSet g(3, 0);
  for (int p : {2, 3}) {
    NilpotentQuotient nq(g, TruncationParams::make(p, p, 5));
    std::mt19937 rng(7 * p);
    for (int t = 0; t < 15; ++t) {
      auto u = nq.collect(rand_word(rng, g, 4));
      auto v = nq.collect(rand_word(rng, g, 4));
      auto w = nq.collect(rand_word(rng, g, 4));
      // [uv,w] = [u,w][[u,w],v][v,w]
      auto K = nq.commutator(u, w);
      auto lhs1 = nq.commutator(nq.multiply(u, v), w);
      auto rhs1 = nq.multiply(nq.multiply(K, nq.commutator(K, v)), nq.commutator(v, w));
      CHECK(nq.equal(lhs1, rhs1));
      // [u,vw] = [u,w][u,v][[u,v],w]
      auto B = nq.commutator(u, v);
      auto lhs2 = nq.commutator(u, nq.multiply(v, w));
      auto rhs2 = nq.multiply(nq.multiply(nq.commutator(u, w), B), nq.commutator(B, w));
      CHECK(nq.equal(lhs2, rhs2));
    }
  }
}

TEST_CASE("filtration weight") {
  GeneratorSet g(2, 0);
  NilpotentQuotient nq(g, TruncationParams::make(3, 3, 4));
  auto x1 = FreeWord::generator(g, 1);
  auto x2 = FreeWord::generator(g, 2);
  CHECK(nq.filtration_weight(nq.collect(x1)) == 1);
  CHECK(nq.filtration_weight(nq.collect(power(x1, 3))) == 2);
  CHECK(nq.filtration_weight(nq.collect(commutator(x1, commutator(x1, x2)))) == 3);
  CHECK(nq.filtration_weight(nq.identity()) == 5);

  // q = 0: only the commutator series counts
  NilpotentQuotient nq0(g, TruncationParams::make(3, 0, 4));
  CHECK(nq0.filtration_weight(nq0.collect(power(x1, 3))) == 1);
  CHECK(nq0.filtration_weight(nq0.collect(commutator(x2, x1))) == 2);
}

TEST_CASE("filtration laws on random elements") {
  GeneratorSet g(2, 1);
  for (int p : {2, 3}) {
    NilpotentQuotient nq(g, TruncationParams::make(p, p, 5));
    std::mt19937 rng(31 * p);
    std::uniform_int_distribution<int> kdist(-5, 5);
    for (int t = 0; t < 30; ++t) {
      auto a = nq.collect(rand_word(rng, g, 5));
      auto b = nq.collect(rand_word(rng, g, 5));
      int wa = nq.filtration_weight(a);
      int wb = nq.filtration_weight(b);
      int cap = nq.params().cls + 1;
      CHECK(nq.filtration_weight(nq.multiply(a, b)) >= std::min(wa, wb));
      CHECK(nq.filtration_weight(nq.commutator(a, b)) >= std::min(wa + wb, cap));
      CHECK(nq.filtration_weight(nq.power(a, nq.params().q)) >= std::min(wa + 1, cap));
      // [u^k,v] = [u,v]^k = [u,v^k] mod G_{wa+wb+1}
      int k = kdist(rng);
      if (k == 0) k = 2;
      auto ck = nq.power(nq.commutator(a, b), k);
      auto l1 = nq.multiply(nq.commutator(nq.power(a, k), b), nq.inverse(ck));
      auto l2 = nq.multiply(nq.commutator(a, nq.power(b, k)), nq.inverse(ck));
      CHECK(nq.filtration_weight(l1) >= std::min(wa + wb + 1, cap));
      CHECK(nq.filtration_weight(l2) >= std::min(wa + wb + 1, cap));
    }
  }
}

TEST_CASE("graded projection") {
  GeneratorSet g(2, 0);
  NilpotentQuotient nq(g, TruncationParams::make(3, 3, 3));
  auto x1 = FreeWord::generator(g, 1);
  auto x2 = FreeWord::generator(g, 2);

  // x1^3 [x1,x2] at j = 2: pi.xi1 + [xi1,xi2] = pi.xi1 - [x2,x1]
  auto a = nq.collect(multiply(power(x1, 3), commutator(x1, x2)));
  CHECK(nq.filtration_weight(a) == 2);
  auto pr = nq.project_gr(a, 2);
  // gr_2 basis order: pi.xi1, pi.xi2, [x2,x1]
  CHECK(nq.gr_basis(2) == std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {0, 2}});
  CHECK(pr.coeffs == std::vector<Int>{1, 0, 2});

  // x1^9 at j = 3 -> pi^2.xi1
  auto b = nq.collect(power(x1, 9));
  auto pr3 = nq.project_gr(b, 3);
  auto basis3 = nq.gr_basis(3);
  for (size_t i = 0; i < basis3.size(); ++i)
    CHECK(pr3.coeffs[i] == (basis3[i] == std::pair<int, int>{2, 0} ? 1 : 0));

  CHECK(nq.project_gr(nq.identity(), 2).is_zero());
  CHECK_THROWS_AS(nq.project_gr(nq.collect(x1), 2), WordError);

  // q = 0: gr_j only sees weight-j entries
  NilpotentQuotient nq0(g, TruncationParams::make(3, 0, 3));
  auto c = nq0.collect(commutator(x2, x1));
  auto pr0 = nq0.project_gr(c, 2);
  CHECK(nq0.gr_basis(2).size() == 1);
  CHECK(pr0.coeffs == std::vector<Int>{1});
}

TEST_CASE("doubling the exponent modulus changes nothing visible") {
  GeneratorSet g(2, 1);
  for (int p : {2, 3}) {
    auto t1 = TruncationParams::make(p, p, 4);
    auto t2 = TruncationParams::make(p, p, 4, 2 * t1.mod_exp);
    NilpotentQuotient a(g, t1), b(g, t2);
    std::mt19937 rng(5 * p);
    for (int t = 0; t < 15; ++t) {
      auto w = rand_word(rng, g, 5);
      auto ma = a.collect(w);
      auto mb = b.collect(w);
      CHECK(a.filtration_weight(ma) == b.filtration_weight(mb));
      int j = a.filtration_weight(ma);
      if (j <= a.params().cls) {
        CHECK(a.project_gr(ma, j).coeffs == b.project_gr(mb, j).coeffs);
      }
    }
  }
}
