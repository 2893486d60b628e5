#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quatorder/classpoly.hpp"
#include "quatorder/lattice.hpp"

namespace quatorder {

struct UnitGroup {
  long count = 0;      // number of norm-1 elements, including +-1
  long max_order = 0;  // largest multiplicative order among the units
  bool has_order_3_or_6 = false;
  bool has_order_4 = false;
};

// exact count of norm-1 elements of O by rank-4 enumeration
UnitGroup unit_group_order(const Order& o);

struct Alg1Step {
  int n = 0;
  std::vector<Int> coords;  // of y_n on the canonical Gross basis
  std::string y;
  Int d;
  int eps = 0;
  int k = 0;
  long deg_g = 0;
  FpPoly g = FpPoly::zero(2);  // snapshot after the gcd update
};

struct Alg1Options {
  // cap on Nr(y_n); reaching it returns an undecided result. 0 means the
  // default 6p (the Schiemann-derived bound used by the matching algorithm).
  Int norm_cap = 0;
};

struct Alg1Result {
  bool decided = false;
  std::optional<JOutcome> outcome;  // present iff decided
  FpPoly g = FpPoly::zero(2);       // final G (decided) / current G (capped)
  std::vector<Alg1Step> trace;
  bool unit_shortcut = false;
  std::string undecided_reason;
};

// the order -> j(O) minimal polynomial procedure; never returns a wrong
// polynomial, returns undecided when the norm cap is exhausted instead
Alg1Result algorithm1(const Order& o, HilbertCache& cache, const Alg1Options& opt = {});

// explicit maximal order with sqrt(-p): the q = 3 (mod 8) family for
// p = 1 (mod 4), the i^2 = -p, j^2 = -1 family for p = 3 (mod 4)
Order ibukiyama_order(const Int& p);

// the ell+1 right orders of the left O-ideals of norm ell (ell prime, != p)
std::vector<Order> neighbors(const Order& o, const Int& ell);

struct TypeRecord {
  Order order;
  GrossLattice gross;
  MinimaTriple minima;
  ThetaTable theta;  // up to 6p: the type fingerprint
  UnitGroup units;
  bool in_fp = false;  // has_sqrt_minus_p, i.e. j(O) in F_p
};

struct TypeSet {
  Int p;
  std::vector<TypeRecord> types;  // sorted by theta fingerprint
  Rat mass;                       // sum over types of (Galois orbit size)/|O^x|
};

// BFS over 2-ideal neighbors from ibukiyama_order(p), deduplicated by the
// theta fingerprint up to 6p; completeness certified by the Eichler mass
// formula mass == (p-1)/24 (throws mass-mismatch otherwise)
TypeSet enumerate_types(const Int& p);

struct MatchEntry {
  size_t type_index;
  JOutcome outcome;
};

struct MatchResult {
  TypeSet types;
  std::vector<MatchEntry> pairs;
  std::vector<std::string> leftover;  // diagnostics for types never decided
  FpPoly product_of_minpolys() const;
};

MatchResult algorithm2(const Int& p, bool restrict_to_fp, HilbertCache& cache, int jobs = 1);

struct Theorem1Pair {
  size_t i = 0, k = 0;
  bool vacuous = false;            // conditions (3) fail for type i
  std::array<bool, 6> hypotheses;  // D1, D2, Nr(x+y), Nr(x-y), D3 optimally
                                   // represented in k; theta' comparison at D3
  bool all_hold = false;
};

struct Theorem1Report {
  Int p;
  std::vector<Theorem1Pair> pairs;  // ordered pairs of distinct types
  size_t vacuous_count = 0;
  bool counterexample = false;
};

// empirical check across all ordered pairs of distinct types; throws
// counterexample-found if the hypothesis set ever holds for a distinct pair
Theorem1Report verify_theorem1(const TypeSet& ts);
Theorem1Report verify_theorem1(const Int& p);

struct DominanceReport {
  Int p;
  long bound = 0;
  // i dominated by k: theta'_i(m) <= theta'_k(m) for all m <= bound
  std::vector<std::pair<size_t, size_t>> relation;  // excludes i == k
  bool antisymmetric = true;
};

DominanceReport dominance_poset(const TypeSet& ts, long bound);
DominanceReport dominance_poset(const Int& p, long bound);

}  // namespace quatorder
