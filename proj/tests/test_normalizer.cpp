#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "propd2/normalizer.hpp"
#include "scramble.hpp"

using namespace propd2;

TEST_CASE("identity pair yields an all-trivial certificate") {
  GeneratorSet g(2, 1);
  auto chi = OrientationCharacter::up(3, 1);
  auto s0 = build_r1({2, 1, chi}, identity_images(g));
  auto pair = PairPresentation::make(g, s0);
  auto out = normalize_to_depth(pair, chi, 5);
  REQUIRE(std::holds_alternative<BasisChangeCertificate>(out));
  const auto& cert = std::get<BasisChangeCertificate>(out);
  CHECK(cert.steps.size() == 3);
  for (const auto& st : cert.steps)
    for (const auto& t : st.t) CHECK(t.is_identity());
  CHECK(cert.final_basis == identity_images(g));
  for (const Int& l : cert.lambda) CHECK(l == 0);
  CHECK(verify_certificate(cert, pair, chi));
}

TEST_CASE("one step clears a weight-3 residual at q = 0") {
  GeneratorSet g(2, 0);
  auto chi = OrientationCharacter::trivial(3);
  auto x1 = FreeWord::generator(g, 1), x2 = FreeWord::generator(g, 2);
  auto s0 = multiply(commutator(x1, x2), commutator(x1, commutator(x1, x2)));
  auto pair = PairPresentation::make(g, s0);
  auto out = normalize_to_depth(pair, chi, 3);
  REQUIRE(std::holds_alternative<BasisChangeCertificate>(out));
  const auto& cert = std::get<BasisChangeCertificate>(out);
  CHECK(verify_certificate(cert, pair, chi));
  // the single step is genuinely non-trivial
  bool moved = false;
  for (const auto& t : cert.steps[0].t)
    if (!t.is_identity()) moved = true;
  CHECK(moved);
}

TEST_CASE("q = 2 alpha/lambda bookkeeping") {
  GeneratorSet g(2, 0);
  auto chi = OrientationCharacter::minus_power(2);
  auto r1w = build_r1({2, 0, chi}, identity_images(g));
  // e = x1^4 in front: residual class pi^2 . xi_1 at j = 3
  auto s0 = multiply(power(FreeWord::generator(g, 1), 4), r1w);
  auto pair = PairPresentation::make(g, s0);
  auto out = normalize_to_depth(pair, chi, 4);
  REQUIRE(std::holds_alternative<BasisChangeCertificate>(out));
  const auto& cert = std::get<BasisChangeCertificate>(out);
  for (const Int& l : cert.lambda) CHECK(l % 4 == 0);
  CHECK(verify_certificate(cert, pair, chi));
}

TEST_CASE("initialization failure is reported") {
  GeneratorSet g(2, 1);
  auto chi = OrientationCharacter::up(3, 1);
  auto x1 = FreeWord::generator(g, 1);
  auto pair = PairPresentation::make(
      g, multiply(x1, FreeWord::generator(g, 3)));  // x1 survives homology
  auto out = normalize_to_depth(pair, chi, 4);
  REQUIRE(std::holds_alternative<NormalizeFailure>(out));
  const auto& f = std::get<NormalizeFailure>(out);
  CHECK(f.stage == NormalizeFailure::Stage::Initialization);
  CHECK(f.conclusive());
}

TEST_CASE("scrambled standard pairs round-trip") {
  struct Set {
    OrientationCharacter chi;
    int n, b;
  };
  std::vector<Set> sets = {
      {OrientationCharacter::trivial(3), 2, 1},
      {OrientationCharacter::up(3, 1), 2, 0},
      {OrientationCharacter::minus_power(2), 2, 1},
  };
  std::mt19937 rng(7);
  for (const auto& set : sets) {
    GeneratorSet g(set.n, set.b);
    auto s0 = build_r1({set.n, set.b, set.chi}, identity_images(g));
    for (int trial = 0; trial < 4; ++trial) {
      auto phi = testutil::random_scramble(g, rng);
      auto s0p = apply_endomorphism(s0, phi);
      std::vector<FreeWord> per(phi.begin() + set.n, phi.end());
      auto pair = PairPresentation::make(g, s0p, per);
      auto out = normalize_to_depth(pair, set.chi, 5, phi);
      REQUIRE(std::holds_alternative<BasisChangeCertificate>(out));
      CHECK(verify_certificate(std::get<BasisChangeCertificate>(out), pair, set.chi));
    }
  }
}

TEST_CASE("corrupted certificates are rejected") {
  GeneratorSet g(2, 0);
  auto chi = OrientationCharacter::up(3, 1);
  auto x1 = FreeWord::generator(g, 1), x2 = FreeWord::generator(g, 2);
  auto s0 = multiply(build_r1({2, 0, chi}, identity_images(g)),
                     power(commutator(x1, commutator(x1, x2)), 3));
  auto pair = PairPresentation::make(g, s0);
  auto out = normalize_to_depth(pair, chi, 4);
  REQUIRE(std::holds_alternative<BasisChangeCertificate>(out));
  auto cert = std::get<BasisChangeCertificate>(out);
  REQUIRE(verify_certificate(cert, pair, chi));

  auto bad = cert;
  bad.steps[0].t[0] = multiply(bad.steps[0].t[0], power(commutator(x1, x2), 3));
  bad.transcript_hash = certificate_hash(bad);  // re-hash so replay must catch it
  CHECK_FALSE(verify_certificate(bad, pair, chi));

  auto bad2 = cert;
  bad2.final_basis[0] = FreeWord::generator(g, 2);  // not a generating set
  bad2.transcript_hash = certificate_hash(bad2);
  CHECK_FALSE(verify_certificate(bad2, pair, chi));

  auto bad3 = cert;
  bad3.transcript_hash = "0000000000000000";
  CHECK_FALSE(verify_certificate(bad3, pair, chi));
}

TEST_CASE("determinism of certificates") {
  GeneratorSet g(2, 1);
  auto chi = OrientationCharacter::trivial(3);
  auto s0 = build_r1({2, 1, chi}, identity_images(g));
  std::mt19937 rng(11);
  auto phi = testutil::random_scramble(g, rng);
  auto s0p = apply_endomorphism(s0, phi);
  auto pair = PairPresentation::make(g, s0p, {phi[2]});
  auto a = normalize_to_depth(pair, chi, 5, phi);
  auto b = normalize_to_depth(pair, chi, 5, phi);
  REQUIRE(std::holds_alternative<BasisChangeCertificate>(a));
  REQUIRE(std::holds_alternative<BasisChangeCertificate>(b));
  CHECK(std::get<BasisChangeCertificate>(a).transcript_hash ==
        std::get<BasisChangeCertificate>(b).transcript_hash);
  CHECK(std::get<BasisChangeCertificate>(a).final_basis ==
        std::get<BasisChangeCertificate>(b).final_basis);
}

TEST_CASE("cap_off reductions") {
  // (n=2, b=1): capping gives the Demushkin word [x1,x2]
  GeneratorSet g21(2, 1);
  auto x1 = FreeWord::generator(g21, 1), x2 = FreeWord::generator(g21, 2);
  auto s0 = multiply(commutator(x1, x2), FreeWord::generator(g21, 3));
  auto res = cap_off(PairPresentation::make(g21, s0), 1);
  REQUIRE(res.kind == CapResult::Kind::OneRelator);
  GeneratorSet g20(2, 0);
  CHECK(*res.relator ==
        commutator(FreeWord::generator(g20, 1), FreeWord::generator(g20, 2)));
  CHECK(cup_form(*res.relator, 3).nondegenerate);

  // (n=0, b=2, s0 = s1 s2): capping s2 leaves the G = S0 = S1 terminal
  GeneratorSet g02(0, 2);
  auto s0b = multiply(FreeWord::generator(g02, 1), FreeWord::generator(g02, 2));
  auto res2 = cap_off(PairPresentation::make(g02, s0b), 2);
  REQUIRE(res2.kind == CapResult::Kind::Pair);
  CHECK(res2.pair->gens == GeneratorSet(0, 1));
  CHECK(res2.pair->s0 == FreeWord::generator(GeneratorSet(0, 1), 1));
  auto res3 = cap_off(*res2.pair, 1);
  CHECK(res3.kind == CapResult::Kind::TwoPeripherals);

  // (n=2, b=2) standard instance caps twice to a Demushkin terminal
  GeneratorSet g22(2, 2);
  auto chi = OrientationCharacter::trivial(3);
  auto std22 = build_r1({2, 2, chi}, identity_images(g22));
  auto c1 = cap_off(PairPresentation::make(g22, std22), 2);
  REQUIRE(c1.kind == CapResult::Kind::Pair);
  auto c2 = cap_off(*c1.pair, 1);
  REQUIRE(c2.kind == CapResult::Kind::OneRelator);
  CHECK(cup_form(*c2.relator, 3).nondegenerate);

  // peripheral word must be a designated generator
  auto conj = PairPresentation::make(
      g21, s0, {conjugate(FreeWord::generator(g21, 3), x1)});
  CHECK_THROWS_AS(cap_off(conj, 1), WordError);
  CHECK_THROWS_AS(cap_off(PairPresentation::make(g21, s0), 2), WordError);
}
