#pragma once

#include <array>
#include <optional>
#include <vector>

#include "quatorder/algebra.hpp"
#include "quatorder/enumerate.hpp"
#include "quatorder/linalg.hpp"

namespace quatorder {

// Rank-4 lattice in B_p with a canonical basis: rows of `mat` divided by `den`
// give the basis coefficients on (1, i, j, k). `mat` is the unique lower-left
// canonical form and gcd(den, all entries) = 1, so two lattices are equal iff
// their (den, mat) pairs are equal.
class QuatLattice {
 public:
  static QuatLattice from_generators(const QuatAlgebra& alg, const std::vector<Quat>& gens);

  const QuatAlgebra& algebra() const { return alg_; }
  const Int& den() const { return den_; }
  const IntMat& mat() const { return mat_; }
  std::array<Quat, 4> basis() const;
  bool contains(const Quat& x) const;

  friend bool operator==(const QuatLattice& l, const QuatLattice& r) {
    return l.alg_ == r.alg_ && l.den_ == r.den_ && l.mat_ == r.mat_;
  }

 private:
  QuatLattice(QuatAlgebra alg, Int den, IntMat mat)
      : alg_(std::move(alg)), den_(std::move(den)), mat_(std::move(mat)) {}
  QuatAlgebra alg_;
  Int den_;
  IntMat mat_;
};

// Rank-3 lattice of pure (trace-zero) quaternions; canonical 3x3 basis over
// coordinates (x, y, z) plus the integer Gram matrix Tr(v_s conj(v_t)).
class TernaryLattice {
 public:
  static TernaryLattice from_generators(const QuatAlgebra& alg, const std::vector<Quat>& gens);

  const QuatAlgebra& algebra() const { return alg_; }
  const Int& den() const { return den_; }
  const IntMat& mat() const { return mat_; }
  const IntMat& gram() const { return gram_; }
  Int det_gram() const;
  std::array<Quat, 3> gens() const;
  Quat from_coords(const std::vector<Int>& c) const;
  bool contains(const Quat& x) const;

  friend bool operator==(const TernaryLattice& l, const TernaryLattice& r) {
    return l.alg_ == r.alg_ && l.den_ == r.den_ && l.mat_ == r.mat_;
  }

 private:
  TernaryLattice(QuatAlgebra alg, Int den, IntMat mat, IntMat gram)
      : alg_(std::move(alg)), den_(std::move(den)), mat_(std::move(mat)), gram_(std::move(gram)) {}
  QuatAlgebra alg_;
  Int den_;
  IntMat mat_;   // 3x3, canonical
  IntMat gram_;  // integral for sublattices of an order
};

class Order {
 public:
  // verifies 1 in the lattice, multiplicative closure, integrality of traces,
  // norms and the trace pairing; computes D(O) = |det(Tr(b_i b_j))|
  static Order make(const QuatAlgebra& alg, const std::vector<Quat>& basis);

  const QuatAlgebra& algebra() const { return lat_.algebra(); }
  const QuatLattice& lattice() const { return lat_; }
  const Int& disc() const { return disc_; }
  bool is_maximal() const;  // D(O) == p^2; requires a certified B_p
  Quat one() const { return Quat::scalar(algebra(), 1); }

  // {x in O : Tr(x) = 0}, a rank-3 lattice containing the Gross lattice
  TernaryLattice trace_zero_sublattice() const;

  friend bool operator==(const Order& l, const Order& r) { return l.lat_ == r.lat_; }

 private:
  explicit Order(QuatLattice lat, Int disc) : lat_(std::move(lat)), disc_(std::move(disc)) {}
  QuatLattice lat_;
  Int disc_;
};

// O^T = {2x - Tr(x) : x in O}; det(gram) = 32 p^2 for maximal O
class GrossLattice {
 public:
  const TernaryLattice& lattice() const { return lat_; }
  const Order& parent() const { return parent_; }
  std::array<Quat, 3> gens() const { return lat_.gens(); }
  const IntMat& gram() const { return lat_.gram(); }
  Int det_gram() const { return lat_.det_gram(); }

 private:
  friend GrossLattice gross_lattice(const Order&);
  GrossLattice(TernaryLattice lat, Order parent)
      : lat_(std::move(lat)), parent_(std::move(parent)) {}
  TernaryLattice lat_;
  Order parent_;
};

GrossLattice gross_lattice(const Order& o);

struct MinimaTriple {
  Int d1, d2, d3;
  Quat x, y, z;
  std::array<std::vector<Int>, 3> coords;
  Rat mu;  // Tr(x conj(y)) = mu * d1, with y's sign flipped so -1 <= mu <= 0
};

struct ThetaTable {
  long bound = 0;
  std::vector<long> theta;      // theta[k], 1 <= k <= bound (index 0 unused)
  std::vector<long> theta_opt;  // primitive classes only
  long th(long k) const { return (k >= 1 && k <= bound) ? theta[static_cast<size_t>(k)] : 0; }
  long th_opt(long k) const {
    return (k >= 1 && k <= bound) ? theta_opt[static_cast<size_t>(k)] : 0;
  }
  friend bool operator==(const ThetaTable&, const ThetaTable&) = default;
};

// one entry per +- class with Nr <= bound, sorted by (norm, lex coords)
std::vector<ShortVector> enumerate_by_norm(const TernaryLattice& lat, const Int& bound);

MinimaTriple successive_minima(const TernaryLattice& lat);
inline MinimaTriple successive_minima(const GrossLattice& g) {
  return successive_minima(g.lattice());
}

ThetaTable theta_table(const TernaryLattice& lat, long bound);
inline ThetaTable theta_table(const GrossLattice& g, long bound) {
  return theta_table(g.lattice(), bound);
}

// inverse of gross_lattice: the unique order O with O^T equal to the given
// lattice; throws not-an-order when no such (maximal) order exists
Order reconstruct_order(const QuatAlgebra& alg, const std::vector<Quat>& trace_zero_gens);
Order reconstruct_order(const GrossLattice& g);

// whether O contains a root of -p, i.e. a trace-zero element of norm p
bool has_sqrt_minus_p(const Order& o);

}  // namespace quatorder
