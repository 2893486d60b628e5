#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quatorder/fppoly.hpp"

namespace quatorder {

// element a + b*s of F_{p^2}, s^2 = the smallest positive non-residue mod p
struct Fp2Elem {
  uint64_t a = 0, b = 0;
};

uint64_t smallest_nonresidue(uint64_t p);

// Deuring/Hasse criterion: a curve with invariant j is supersingular iff the
// coefficient of x^(p-1) in (x^3 + Ax + B)^((p-1)/2) vanishes
bool is_supersingular_j(const Fp2Elem& j, uint64_t p);

struct SupersingularSet {
  uint64_t p = 0;
  std::vector<uint64_t> roots_in_fp;                     // sorted
  std::vector<std::pair<uint64_t, uint64_t>> pairs;      // X^2 + bX + c, sorted
  FpPoly polynomial = FpPoly::zero(2);                   // product of all factors
  size_t count() const { return roots_in_fp.size() + 2 * pairs.size(); }
};

// exhaustive scan of all j in F_{p^2}; quadratic in p, intended for p up to a
// few thousand
SupersingularSet supersingular_set(uint64_t p, int jobs = 1);

}  // namespace quatorder
