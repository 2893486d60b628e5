#include <doctest.h>

#include "quatorder/fppoly.hpp"
#include "test_util.hpp"

using namespace quatorder;

namespace {
FpPoly random_poly(uint64_t p, testutil::Rng& rng, long maxdeg = 6) {
  std::vector<uint64_t> c;
  long deg = rng.range(0, maxdeg);
  for (long i = 0; i <= deg; ++i) c.push_back(rng.next() % p);
  return FpPoly(p, std::move(c));
}
}  // namespace

TEST_CASE("normalization and basics") {
  FpPoly f(61, {20, 1, 0, 0});
  CHECK(f.degree() == 1);
  CHECK(f.str() == "X + 20");
  CHECK(FpPoly::zero(61).is_zero());
  CHECK(FpPoly(61, {122}).is_zero());
  CHECK(FpPoly(61, {0, 0, 5}).degree() == 2);
}

TEST_CASE("gcd with the zero polynomial returns the monic argument") {
  FpPoly h(61, {40, 2});  // 2X + 40 = 2(X + 20)
  FpPoly g = poly_gcd(FpPoly::zero(61), h);
  CHECK(g == FpPoly(61, {20, 1}));
  CHECK(poly_gcd(h, FpPoly::zero(61)) == FpPoly(61, {20, 1}));
  CHECK(poly_gcd(h, h) == h.monic());
}

TEST_CASE("gcd divides both arguments and is monic") {
  testutil::Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    FpPoly f = random_poly(61, rng), g = random_poly(61, rng);
    FpPoly d = poly_gcd(f, g);
    if (d.is_zero()) {
      CHECK(f.is_zero());
      CHECK(g.is_zero());
      continue;
    }
    CHECK(d.leading() == 1);
    CHECK(f.divrem(d).second.is_zero());
    CHECK(g.divrem(d).second.is_zero());
    // commutative up to monic scaling
    CHECK(poly_gcd(g, f) == d);
  }
}

TEST_CASE("modulus mismatch") {
  CHECK_THROWS_WITH_AS(poly_gcd(FpPoly(61, {1}), FpPoly(7, {1})),
                       doctest::Contains("modulus-mismatch"), Error);
}

TEST_CASE("derivative") {
  FpPoly f(61, {1, 0, 1});  // X^2 + 1
  CHECK(f.derivative() == FpPoly(61, {0, 2}));
  CHECK(f.derivative(0) == f);
  // X^p has zero derivative in characteristic p
  std::vector<uint64_t> xp(62, 0);
  xp[61] = 1;
  CHECK(FpPoly(61, xp).derivative().is_zero());
}

TEST_CASE("derivative is linear and satisfies the product rule") {
  testutil::Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    FpPoly f = random_poly(101, rng), g = random_poly(101, rng);
    CHECK((f + g).derivative() == f.derivative() + g.derivative());
    CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
  }
}

TEST_CASE("classify_output") {
  // X - 41 over F_61
  auto out = classify_output(FpPoly(61, {20, 1}));
  REQUIRE(out.has_value());
  CHECK(out->kind == JOutcome::Kind::root);
  CHECK(out->root == 41);

  // the conjugate-pair quadratic over F_20063
  auto pair = classify_output(FpPoly(20063, {6627, 2748, 1}));
  REQUIRE(pair.has_value());
  CHECK(pair->kind == JOutcome::Kind::pair);

  // X^2 - 1 over F_61 splits: undecided
  CHECK(!classify_output(FpPoly(61, {60, 0, 1})).has_value());
  // constants and high degrees: undecided
  CHECK(!classify_output(FpPoly(61, {5})).has_value());
  CHECK(!classify_output(FpPoly(61, {1, 1, 1, 1})).has_value());
}

TEST_CASE("classification matches the degree/discriminant contract") {
  testutil::Rng rng(11);
  for (int t = 0; t < 80; ++t) {
    FpPoly f = random_poly(61, rng, 3);
    auto out = classify_output(f);
    if (f.degree() == 1) {
      REQUIRE(out.has_value());
      CHECK(out->kind == JOutcome::Kind::root);
      CHECK(f.eval(out->root) == 0);
    } else if (f.degree() == 2) {
      uint64_t disc =
          (f.coeff(1) * f.coeff(1) + 4 * 61 - 4 * f.coeff(2) % 61 * f.coeff(0) % 61) % 61;
      bool irred = disc != 0 && !is_square_mod_p(disc, 61);
      CHECK(out.has_value() == irred);
    } else {
      CHECK(!out.has_value());
    }
  }
}

TEST_CASE("is_square_mod_p") {
  CHECK(is_square_mod_p(1, 61));
  CHECK(is_square_mod_p(0, 61));
  CHECK(is_square_mod_p(2, 7));
  CHECK(!is_square_mod_p(3, 7));
  // squares mod 7 are {0,1,2,4}
  for (uint64_t a = 0; a < 7; ++a)
    CHECK(is_square_mod_p(a, 7) == (a == 0 || a == 1 || a == 2 || a == 4));
}

TEST_CASE("multiplicity counting") {
  FpPoly x_minus_3(61, {58, 1});
  FpPoly f = x_minus_3 * x_minus_3 * FpPoly(61, {1, 1});
  CHECK(f.multiplicity_of(x_minus_3) == 2);
  CHECK(f.multiplicity_of(FpPoly(61, {1, 1})) == 1);
  CHECK(f.multiplicity_of(FpPoly(61, {5, 1})) == 0);
}
