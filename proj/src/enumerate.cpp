#include "quatorder/enumerate.hpp"

#include <algorithm>
#include <functional>

namespace quatorder {

namespace {

// q <= sqrt(r)  for rationals, r >= 0, decided exactly
bool le_sqrt(const Rat& q, const Rat& r) {
  if (q <= 0) return true;
  return q * q <= r;
}

}  // namespace

Int floor_add_sqrt(const Rat& c, const Rat& r) {
  if (r < 0) throw Error("internal", "negative radicand");
  Int guess = floor_div(c.get_num(), c.get_den()) + isqrt(r.get_num() * r.get_den()) / r.get_den();
  while (le_sqrt(Rat(guess + 1) - c, r)) ++guess;
  while (!le_sqrt(Rat(guess) - c, r)) --guess;
  return guess;
}

Int ceil_sub_sqrt(const Rat& c, const Rat& r) { return -floor_add_sqrt(-c, r); }

std::vector<ShortVector> enumerate_gram(const IntMat& gram, const Int& bound) {
  const size_t n = gram.size();
  std::vector<ShortVector> out;
  if (bound < 1 || n == 0) return out;

  // exact Cholesky: Q(x) = sum_i d[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2
  std::vector<Rat> d(n);
  RatMat mu(n, std::vector<Rat>(n, Rat(0)));
  {
    RatMat r(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) r[i][j] = Rat(gram[i][j]);
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < i; ++k)
        for (size_t j = i; j < n; ++j) r[i][j] -= d[k] * mu[k][i] * mu[k][j];
      d[i] = r[i][i];
      if (d[i] <= 0) throw Error("bad-input", "Gram matrix is not positive definite");
      for (size_t j = i + 1; j < n; ++j) mu[i][j] = r[i][j] / d[i];
    }
  }

  const Rat q_budget = Rat(2) * Rat(bound);  // v^T G v <= 2*bound
  std::vector<Int> x(n, 0);

  auto emit = [&](const Rat& qval) {
    if (qval.get_den() != 1 || floor_mod(qval.get_num(), 2) != 0)
      throw Error("internal", "odd Gram value on an integer vector");
    ShortVector sv;
    sv.nr = qval.get_num() / 2;
    sv.coords = x;
    for (auto& e : sv.coords) {
      if (e == 0) continue;
      if (e < 0)
        for (auto& f : sv.coords) f = -f;
      break;
    }
    Int g = 0;
    for (const auto& e : sv.coords) g = gcd(g, e);
    sv.primitive = (g == 1);
    out.push_back(std::move(sv));
  };

  // descend levels n-1 .. 0; one representative per +- class by requiring the
  // last nonzero coordinate to be positive (suffix_zero tracks that state)
  std::function<void(long, const Rat&, bool)> descend = [&](long level, const Rat& remain,
                                                            bool suffix_zero) {
    const size_t li = static_cast<size_t>(level);
    Rat c = 0;
    for (size_t j = li + 1; j < n; ++j)
      if (x[j] != 0) c += mu[li][j] * Rat(x[j]);
    const Rat rad = remain / d[li];
    Int lo = ceil_sub_sqrt(-c, rad);
    const Int hi = floor_add_sqrt(-c, rad);
    if (suffix_zero && lo < 0) lo = 0;
    for (Int v = lo; v <= hi; ++v) {
      x[li] = v;
      const Rat t = Rat(v) + c;
      const Rat used = d[li] * t * t;
      if (used > remain) continue;
      if (level == 0) {
        if (!(suffix_zero && v == 0)) emit(q_budget - remain + used);
      } else {
        descend(level - 1, remain - used, suffix_zero && v == 0);
      }
    }
    x[li] = 0;
  };
  descend(static_cast<long>(n) - 1, q_budget, true);

  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.nr != b.nr) return a.nr < b.nr;
    return a.coords < b.coords;
  });
  return out;
}

}  // namespace quatorder
