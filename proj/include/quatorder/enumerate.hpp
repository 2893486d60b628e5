#pragma once

#include <vector>

#include "quatorder/linalg.hpp"
#include "quatorder/rational.hpp"

namespace quatorder {

// A +- class of lattice vectors, represented by integer coordinates whose
// first nonzero entry is positive. nr = (1/2) v^T G v.
struct ShortVector {
  Int nr;
  std::vector<Int> coords;
  bool primitive;  // gcd of coordinates is 1
};

// All +- classes of nonzero v with (1/2) v^T G v <= bound, G a symmetric
// positive definite integer Gram matrix of an even form (v^T G v is even for
// integer v). Exact rational Cholesky descent; no floating point in any bound
// decision. Sorted by norm, then lexicographically by coordinates.
std::vector<ShortVector> enumerate_gram(const IntMat& gram, const Int& bound);

// largest integer <= c + sqrt(r), r >= 0
Int floor_add_sqrt(const Rat& c, const Rat& r);
// smallest integer >= c - sqrt(r), r >= 0
Int ceil_sub_sqrt(const Rat& c, const Rat& r);

}  // namespace quatorder
