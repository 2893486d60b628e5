#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quatorder {

// Exact arbitrary-precision integers and rationals. mpq_class keeps values in
// lowest terms with positive denominator once canonicalized; every entry point
// that builds a rational from raw parts goes through make_rat().
using Int = mpz_class;
using Rat = mpq_class;

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw Error("bad-input", "zero denominator");
  Rat r(std::move(num), std::move(den));
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// floor(sqrt(n)), n >= 0
inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool fits_long(const Int& n) { return n.fits_slong_p(); }

inline long to_long(const Int& n) {
  if (!n.fits_slong_p()) throw Error("bad-input", "integer out of range: " + n.get_str());
  return n.get_si();
}

inline uint64_t mod_to_u64(const Int& a, uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

std::string rat_to_string(const Rat& r);
Rat parse_rat(const std::string& s);

}  // namespace quatorder
