#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "quatorder/classpoly.hpp"

using namespace quatorder;

TEST_CASE("discriminant parsing") {
  CHECK_NOTHROW(Discriminant::parse(3));
  CHECK_NOTHROW(Discriminant::parse(4));
  CHECK_NOTHROW(Discriminant::parse(1056));
  CHECK_THROWS_WITH_AS(Discriminant::parse(5), doctest::Contains("invalid-discriminant"), Error);
  CHECK_THROWS_AS(Discriminant::parse(1), Error);
  CHECK_THROWS_AS(Discriminant::parse(-7), Error);
  CHECK_THROWS_AS(Discriminant::parse(0), Error);
}

TEST_CASE("reduced forms: known class numbers") {
  auto h = [](long d) { return reduced_forms(Discriminant::parse(d)).size(); };
  CHECK(h(3) == 1);
  CHECK(h(4) == 1);
  CHECK(h(7) == 1);
  CHECK(h(23) == 3);
  CHECK(h(47) == 5);
  CHECK(h(71) == 7);
  CHECK(h(244) == 6);
  CHECK(h(1056) == 16);
  CHECK(h(2056) == 16);
  CHECK(h(2300) == 18);
  auto f7 = reduced_forms(Discriminant::parse(7));
  REQUIRE(f7.size() == 1);
  CHECK(f7[0] == ReducedForm{1, 1, 2});
}

TEST_CASE("reduced form conditions hold") {
  for (long d : {23L, 47L, 163L, 1056L, 2300L}) {
    for (const auto& f : reduced_forms(Discriminant::parse(d))) {
      CHECK(f.b * f.b - 4 * f.a * f.c == -d);
      CHECK(abs(f.b) <= f.a);
      CHECK(f.a <= f.c);
      if (abs(f.b) == f.a || f.a == f.c) CHECK(f.b >= 0);
      CHECK(gcd(gcd(f.a, f.b), f.c) == 1);
    }
  }
}

TEST_CASE("classical Hilbert class polynomials") {
  CHECK(hilbert_class_poly(Discriminant::parse(3)).coeffs == std::vector<Int>{0, 1});
  CHECK(hilbert_class_poly(Discriminant::parse(4)).coeffs == std::vector<Int>{-1728, 1});
  CHECK(hilbert_class_poly(Discriminant::parse(7)).coeffs == std::vector<Int>{3375, 1});
  CHECK(hilbert_class_poly(Discriminant::parse(8)).coeffs == std::vector<Int>{-8000, 1});
  CHECK(hilbert_class_poly(Discriminant::parse(11)).coeffs == std::vector<Int>{32768, 1});
  CHECK(hilbert_class_poly(Discriminant::parse(163)).coeffs ==
        std::vector<Int>{Int("262537412640768000"), 1});
  // h(-23) = 3
  CHECK(hilbert_class_poly(Discriminant::parse(23)).coeffs ==
        std::vector<Int>{Int("12771880859375"), Int("-5151296875"), Int("3491750"), 1});
}

TEST_CASE("degree equals the class number") {
  for (long d : {3L, 4L, 7L, 23L, 60L, 71L, 1056L}) {
    Discriminant disc = Discriminant::parse(d);
    CHECK(hilbert_class_poly(disc).degree() ==
          static_cast<long>(reduced_forms(disc).size()));
  }
}

TEST_CASE("reduction mod p") {
  ClassPoly h7 = hilbert_class_poly(Discriminant::parse(7));
  FpPoly r = reduce_mod_p(h7, 61);
  CHECK(r == FpPoly(61, {20, 1}));  // X - 41
  CHECK(r.eval(41) == 0);
  FpPoly r4 = reduce_mod_p(hilbert_class_poly(Discriminant::parse(4)), 7);
  CHECK(r4 == FpPoly(7, {1, 1}));  // X - 6
}

TEST_CASE("reduction commutes with the derivative") {
  for (long d : {23L, 31L, 59L}) {
    ClassPoly h = hilbert_class_poly(Discriminant::parse(d));
    ClassPoly dh = h;
    dh.coeffs.erase(dh.coeffs.begin());
    for (size_t i = 0; i < dh.coeffs.size(); ++i) dh.coeffs[i] *= Int(i) + 1;
    CHECK(reduce_mod_p(h, 61).derivative() == FpPoly::from_int_coeffs(61, dh.coeffs));
  }
}

TEST_CASE("Hurwitz class numbers") {
  CHECK(hurwitz_class_number(3) == make_rat(1, 3));
  CHECK(hurwitz_class_number(4) == make_rat(1, 2));
  CHECK(hurwitz_class_number(23) == 3);
  CHECK(hurwitz_class_number(12) == make_rat(4, 3));
  CHECK(hurwitz_class_number(16) == make_rat(3, 2));
  CHECK(hurwitz_class_number(63) == 5);  // h(-63) = 4, plus h(-7) = 1
  CHECK_THROWS_AS(hurwitz_class_number(5), Error);
  CHECK_THROWS_AS(hurwitz_class_number(-4), Error);
}

TEST_CASE("disk cache round-trips") {
  std::string dir = std::filesystem::temp_directory_path() / "quatorder_cache_test";
  std::filesystem::remove_all(dir);
  {
    HilbertCache cache(dir);
    const ClassPoly& fresh = cache.get(23);
    CHECK(fresh.degree() == 3);
  }
  {
    HilbertCache cache(dir);  // now served from disk
    const ClassPoly& loaded = cache.get(23);
    CHECK(loaded.coeffs == hilbert_class_poly(Discriminant::parse(23)).coeffs);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("memoization returns a stable reference") {
  HilbertCache cache;
  const ClassPoly& a = cache.get(7);
  const ClassPoly& b = cache.get(7);
  CHECK(&a == &b);
}
