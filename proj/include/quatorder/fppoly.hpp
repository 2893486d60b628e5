#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quatorder/rational.hpp"

namespace quatorder {

bool is_square_mod_p(uint64_t a, uint64_t p);

// Dense polynomial over F_p, coefficients ascending, normalized (no leading
// zeros; zero polynomial has an empty coefficient vector). p < 2^32.
class FpPoly {
 public:
  FpPoly(uint64_t p, std::vector<uint64_t> coeffs);
  static FpPoly zero(uint64_t p) { return FpPoly(p, {}); }
  static FpPoly from_int_coeffs(uint64_t p, const std::vector<Int>& ascending);

  uint64_t modulus() const { return p_; }
  const std::vector<uint64_t>& coeffs() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
  uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }

  FpPoly monic() const;
  FpPoly derivative(long k = 1) const;
  uint64_t eval(uint64_t x) const;
  bool is_irreducible_quadratic() const;
  // multiplicity of `factor` (monic, nonconstant) in *this
  long multiplicity_of(const FpPoly& factor) const;

  friend FpPoly operator+(const FpPoly& f, const FpPoly& g);
  friend FpPoly operator-(const FpPoly& f, const FpPoly& g);
  friend FpPoly operator*(const FpPoly& f, const FpPoly& g);
  friend bool operator==(const FpPoly& f, const FpPoly& g) {
    return f.p_ == g.p_ && f.c_ == g.c_;
  }

  // quotient/remainder by monic-normalized divisor
  std::pair<FpPoly, FpPoly> divrem(const FpPoly& g) const;

  std::string str(const std::string& var = "X") const;

 private:
  void normalize();
  uint64_t p_;
  std::vector<uint64_t> c_;
};

// monic gcd; gcd(0, f) = monic(f)
FpPoly poly_gcd(const FpPoly& f, const FpPoly& g);

// outcome of Algorithm 1: a single root in F_p or a conjugate pair in F_{p^2}
// carried as a monic irreducible quadratic
struct JOutcome {
  enum class Kind { root, pair } kind;
  uint64_t root = 0;   // valid for kind == root
  FpPoly minpoly;      // X - root, or the irreducible quadratic
  std::string str() const;
};

// linear -> root; irreducible quadratic -> pair; anything else -> nullopt
std::optional<JOutcome> classify_output(const FpPoly& g);

}  // namespace quatorder
