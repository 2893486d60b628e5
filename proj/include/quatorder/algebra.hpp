#pragma once

#include <array>
#include <string>
#include <vector>

#include "quatorder/rational.hpp"

namespace quatorder {

// A place of Q: a finite prime or the infinite place.
struct Place {
  bool infinite = false;
  Int prime;  // meaningful iff !infinite

  static Place at_infinity() { return Place{true, 0}; }
  static Place finite(Int p) { return Place{false, std::move(p)}; }

  friend bool operator==(const Place& l, const Place& r) {
    return l.infinite == r.infinite && (l.infinite || l.prime == r.prime);
  }
  friend bool operator<(const Place& l, const Place& r) {
    if (l.infinite != r.infinite) return !l.infinite;  // finite places first
    if (l.infinite) return false;
    return l.prime < r.prime;
  }
  std::string str() const { return infinite ? "inf" : prime.get_str(); }
};

// Hilbert symbol (a,b)_ell over Q_ell, ell a prime or infinity.
int hilbert_symbol(const Int& a, const Int& b, const Place& ell);

// Definite rational quaternion algebra Q<i,j> with i^2 = -a, j^2 = -b, k = ij = -ji.
// Only the diagonalized shape is representable; a declared B_p additionally
// certifies that the ramified places are exactly {p, infinity}.
class QuatAlgebra {
 public:
  // certified B_p; throws bad-input unless ramification is exactly {p, inf}
  static QuatAlgebra bp(Int p, Int a, Int b);
  // definite algebra without a B_p claim (test fixtures, ramification probes)
  static QuatAlgebra definite(Int a, Int b);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  // 0 when the algebra was not declared as a B_p
  const Int& p() const { return p_; }
  bool certified_bp() const { return p_ != 0; }
  const Int& require_p() const;

  friend bool operator==(const QuatAlgebra& l, const QuatAlgebra& r) {
    return l.a_ == r.a_ && l.b_ == r.b_ && l.p_ == r.p_;
  }

 private:
  QuatAlgebra(Int p, Int a, Int b) : p_(std::move(p)), a_(std::move(a)), b_(std::move(b)) {}
  Int p_, a_, b_;
};

// Places where the algebra (-a, -b / Q) is ramified; even cardinality always.
std::vector<Place> ramified_places(const QuatAlgebra& alg);

// Quaternion t + x i + y j + z k with exact rational coefficients.
class Quat {
 public:
  Quat(QuatAlgebra alg, Rat t, Rat x, Rat y, Rat z)
      : alg_(std::move(alg)), c_{std::move(t), std::move(x), std::move(y), std::move(z)} {}
  static Quat scalar(const QuatAlgebra& alg, Rat t) {
    return Quat(alg, std::move(t), 0, 0, 0);
  }

  const QuatAlgebra& algebra() const { return alg_; }
  const std::array<Rat, 4>& coords() const { return c_; }
  const Rat& operator[](int i) const { return c_[static_cast<size_t>(i)]; }

  Rat tr() const { return Rat(2) * c_[0]; }
  Rat nr() const {
    return c_[0] * c_[0] + alg_.a() * c_[1] * c_[1] + alg_.b() * c_[2] * c_[2] +
           alg_.a() * alg_.b() * c_[3] * c_[3];
  }
  Quat conj() const { return Quat(alg_, c_[0], -c_[1], -c_[2], -c_[3]); }
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  Quat operator-() const { return Quat(alg_, -c_[0], -c_[1], -c_[2], -c_[3]); }
  friend Quat operator+(const Quat& u, const Quat& v);
  friend Quat operator-(const Quat& u, const Quat& v);
  friend Quat operator*(const Quat& u, const Quat& v);
  friend Quat operator*(const Rat& s, const Quat& u);
  friend bool operator==(const Quat& u, const Quat& v) {
    return u.alg_ == v.alg_ && u.c_ == v.c_;
  }

  std::string str() const;

 private:
  QuatAlgebra alg_;
  std::array<Rat, 4> c_;
};

// Tr(u * conj(v)); symmetric positive definite pairing
Rat trace_pairing(const Quat& u, const Quat& v);

void require_same_algebra(const Quat& u, const Quat& v);

}  // namespace quatorder
