#include <doctest.h>

#include "quatorder/oracle.hpp"
#include "test_util.hpp"

using namespace quatorder;

TEST_CASE("classical supersingular sets for small p") {
  auto s5 = supersingular_set(5);
  CHECK(s5.roots_in_fp == std::vector<uint64_t>{0});
  CHECK(s5.pairs.empty());

  auto s7 = supersingular_set(7);
  CHECK(s7.roots_in_fp == std::vector<uint64_t>{6});
  CHECK(s7.pairs.empty());
  CHECK(s7.polynomial == FpPoly(7, {1, 1}));  // X - 6

  auto s11 = supersingular_set(11);
  CHECK(s11.roots_in_fp == std::vector<uint64_t>{0, 1});

  auto s13 = supersingular_set(13);
  CHECK(s13.roots_in_fp == std::vector<uint64_t>{5});

  // fixed tables below the scan threshold
  CHECK(supersingular_set(2).roots_in_fp == std::vector<uint64_t>{0});
  CHECK(supersingular_set(3).roots_in_fp == std::vector<uint64_t>{0});
}

TEST_CASE("p = 61: three rational j-invariants and one conjugate pair") {
  auto s = supersingular_set(61);
  CHECK(s.roots_in_fp == std::vector<uint64_t>{9, 41, 50});
  REQUIRE(s.pairs.size() == 1);
  CHECK(s.pairs[0] == std::pair<uint64_t, uint64_t>{38, 24});
  CHECK(s.count() == 5);
  CHECK(s.polynomial.degree() == 5);
}

TEST_CASE("single-j tests") {
  CHECK(is_supersingular_j({6, 0}, 7));
  CHECK(!is_supersingular_j({0, 0}, 7));  // 7 = 1 mod 3: j = 0 is ordinary
  CHECK(is_supersingular_j({41, 0}, 61));
  CHECK(!is_supersingular_j({3, 0}, 61));
  CHECK(is_supersingular_j({0, 0}, 5));
  CHECK(is_supersingular_j({5, 0}, 13));
  CHECK(!is_supersingular_j({1728 % 13, 0}, 13));  // 13 = 1 mod 4
}

TEST_CASE("j = 0 and j = 1728 follow the classical congruence criteria") {
  for (uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
    CHECK(is_supersingular_j({0, 0}, p) == (p % 3 == 2));
    CHECK(is_supersingular_j({1728 % p, 0}, p) == (p % 4 == 3));
  }
}

TEST_CASE("Galois stability of the criterion") {
  const uint64_t p = 61;
  testutil::Rng rng(17);
  for (int t = 0; t < 25; ++t) {
    uint64_t u = rng.next() % p, v = rng.next() % p;
    // conj(u + v s) = u - v s since s^p = -s
    CHECK(is_supersingular_j({u, v}, p) == is_supersingular_j({u, (p - v) % p}, p));
  }
}

TEST_CASE("scan output is consistent and squarefree") {
  for (uint64_t p : {13ull, 37ull, 61ull}) {
    auto s = supersingular_set(p);
    CHECK(s.polynomial.degree() == static_cast<long>(s.count()));
    // squarefree: gcd with derivative is 1
    CHECK(poly_gcd(s.polynomial, s.polynomial.derivative()).degree() == 0);
    // every factor checks back through the single-j test
    for (uint64_t r : s.roots_in_fp) CHECK(is_supersingular_j({r, 0}, p));
    // pair quadratics are irreducible
    for (const auto& [b, c] : s.pairs) CHECK(FpPoly(p, {c, b, 1}).is_irreducible_quadratic());
    // count is near p/12
    CHECK(s.count() >= static_cast<size_t>((p - 1) / 12));
    CHECK(s.count() <= static_cast<size_t>(p / 12 + 2));
  }
}

TEST_CASE("parallel scan matches the serial scan") {
  auto serial = supersingular_set(37, 1);
  auto parallel = supersingular_set(37, 4);
  CHECK(serial.roots_in_fp == parallel.roots_in_fp);
  CHECK(serial.pairs == parallel.pairs);
  CHECK(serial.polynomial == parallel.polynomial);
}
