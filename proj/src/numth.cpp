#include "quatorder/numth.hpp"

namespace quatorder {

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int pow_mod(const Int& base, const Int& exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

int legendre(const Int& a, const Int& p) {
  Int am = floor_mod(a, p);
  if (am == 0) return 0;
  Int e = (p - 1) / 2;
  Int r = pow_mod(am, e, p);
  return r == 1 ? 1 : -1;
}

long valuation(Int n, const Int& p) {
  if (n == 0) throw Error("bad-input", "valuation of zero");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::vector<Int> odd_prime_factors(Int n) {
  std::vector<Int> out;
  if (n < 0) n = -n;
  while (n % 2 == 0) n /= 2;
  for (Int d = 3; d * d <= n; d += 2) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Int squarefree_part(Int n) {
  if (n <= 0) throw Error("bad-input", "squarefree_part needs n > 0");
  Int s = 1;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      long v = 0;
      while (n % d == 0) {
        n /= d;
        ++v;
      }
      if (v % 2) s *= d;
    }
  }
  return s * n;
}

Int fundamental_disc_abs(const Int& d) {
  Int s = squarefree_part(d);
  // -s = 1 mod 4  <=>  s = 3 mod 4
  return floor_mod(s, 4) == 3 ? s : 4 * s;
}

}  // namespace quatorder
