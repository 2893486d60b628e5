#include <doctest.h>

#include "quatorder/enumerate.hpp"
#include "quatorder/linalg.hpp"
#include "test_util.hpp"

using namespace quatorder;

TEST_CASE("row HNF basics") {
  IntMat m{{2, 0}, {0, 2}, {1, 1}};
  IntMat h = hnf_rows(m);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == std::vector<Int>{1, 1});
  CHECK(h[1] == std::vector<Int>{0, 2});

  // unimodular changes of the generating set leave the HNF fixed
  IntMat m2{{3, 1}, {1, 1}, {4, 2}};
  IntMat m3{{1, 1}, {4, 2}, {7, 3}};
  CHECK(hnf_rows(m2) == hnf_rows(m3));
}

TEST_CASE("lattice_canon is lower-left and unique") {
  IntMat m{{2, 1, 0}, {0, 3, 1}, {1, 0, 5}};
  IntMat c = lattice_canon(m);
  REQUIRE(c.size() == 3);
  CHECK(c[0][1] == 0);
  CHECK(c[0][2] == 0);
  CHECK(c[1][2] == 0);
  CHECK(c[1][1] > 0);
  // shuffled generators, same lattice
  IntMat shuffled{{1, 0, 5}, {2, 1, 0}, {2, 4, 1}};
  IntMat big{m[0], m[1], m[2], {3, 4, 1}};
  (void)big;
  CHECK(lattice_canon(shuffled) == lattice_canon(IntMat{m[2], m[0], {0, 3, 1}}));
}

TEST_CASE("kernel of a linear form") {
  std::vector<Int> form{2, 1, 0, 7};
  IntMat ker = integer_kernel_of_form(form);
  REQUIRE(ker.size() == 3);
  for (const auto& row : ker) {
    Int dot = 0;
    for (size_t i = 0; i < 4; ++i) dot += row[i] * form[i];
    CHECK(dot == 0);
  }
  // spans the full kernel: (1,-2,0,0), (0,7,0,-1) and (0,0,1,0) must be inside
  IntMat h = hnf_rows(ker);
  auto contains = [&](std::vector<Int> v) {
    IntMat ext = h;
    ext.push_back(std::move(v));
    return hnf_rows(ext) == h;
  };
  CHECK(contains({1, -2, 0, 0}));
  CHECK(contains({0, 7, 0, -1}));
  CHECK(contains({0, 0, 1, 0}));
}

TEST_CASE("rational determinant") {
  RatMat m{{Rat(2), Rat(1)}, {Rat(1), Rat(2)}};
  CHECK(det_rat(m) == 3);
  RatMat sing{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK(det_rat(sing) == 0);
}

TEST_CASE("solve_in_row_span") {
  RatMat basis{{Rat(1), Rat(0), Rat(2)}, {Rat(0), Rat(1), Rat(3)}};
  auto c = solve_in_row_span(basis, {Rat(2), Rat(3), Rat(13)});
  CHECK(c[0] == 2);
  CHECK(c[1] == 3);
  CHECK_THROWS_AS(solve_in_row_span(basis, {Rat(0), Rat(0), Rat(1)}), Error);
}

TEST_CASE("exact sqrt bounds") {
  CHECK(floor_add_sqrt(Rat(0), Rat(2)) == 1);
  CHECK(floor_add_sqrt(Rat(0), Rat(4)) == 2);
  CHECK(floor_add_sqrt(make_rat(1, 2), make_rat(9, 4)) == 2);
  CHECK(ceil_sub_sqrt(Rat(0), Rat(2)) == -1);
  CHECK(ceil_sub_sqrt(Rat(10), Rat(4)) == 8);
  CHECK(floor_add_sqrt(Rat(-5), Rat(0)) == -5);
}

TEST_CASE("enumerate_gram vs brute force") {
  // independent oracle: box enumeration with the diagonal-dominance bound
  auto brute = [](const IntMat& g, long bound) {
    std::vector<std::pair<Int, std::vector<Int>>> out;
    long lim = 2 * bound + 2;
    for (long a = -lim; a <= lim; ++a)
      for (long b = -lim; b <= lim; ++b)
        for (long c = -lim; c <= lim; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          std::vector<Int> v{a, b, c};
          Int q = 0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) q += g[i][j] * v[i] * v[j];
          if (q > 2 * bound) continue;
          for (auto& e : v)
            if (e != 0) {
              if (e < 0)
                for (auto& f : v) f = -f;
              break;
            }
          out.emplace_back(q / 2, v);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<IntMat> grams{
      {{2, 0, 0}, {0, 4, 0}, {0, 0, 6}},
      {{2, 1, 0}, {1, 4, 1}, {0, 1, 6}},
      {{4, 2, 2}, {2, 6, 1}, {2, 1, 8}},
  };
  for (const auto& g : grams) {
    for (long bound : {1L, 3L, 9L, 25L}) {
      auto fast = enumerate_gram(g, bound);
      auto slow = brute(g, bound);
      REQUIRE(fast.size() == slow.size());
      for (size_t i = 0; i < fast.size(); ++i) {
        CHECK(fast[i].nr == slow[i].first);
        CHECK(fast[i].coords == slow[i].second);
      }
    }
  }
}

TEST_CASE("enumerate_gram: ordering, primitivity, empty bound") {
  IntMat g{{2, 0, 0}, {0, 4, 0}, {0, 0, 6}};
  CHECK(enumerate_gram(g, 0).empty());
  auto vs = enumerate_gram(g, 3);
  REQUIRE(vs.size() >= 4);
  CHECK(vs[0].nr == 1);
  CHECK(vs[0].coords == std::vector<Int>{1, 0, 0});
  CHECK(vs[1].nr == 2);
  CHECK(vs[1].coords == std::vector<Int>{0, 1, 0});
  // norm-3 ties resolved lexicographically: (0,0,1) < (1,-1,0) < (1,1,0)
  CHECK(vs[2].nr == 3);
  CHECK(vs[2].coords == std::vector<Int>{0, 0, 1});
  CHECK(vs[3].coords == std::vector<Int>{1, -1, 0});
  for (const auto& v : vs) {
    Int g0 = 0;
    for (const auto& e : v.coords) g0 = gcd(g0, e);
    CHECK(v.primitive == (g0 == 1));
  }
}
