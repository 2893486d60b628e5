#pragma once

#include <vector>

#include "quatorder/rational.hpp"

namespace quatorder {

using IntMat = std::vector<std::vector<Int>>;
using RatMat = std::vector<std::vector<Rat>>;

// Reduced row Hermite normal form, pivots scanned left to right. Zero rows are
// dropped; pivots are positive and entries above each pivot lie in [0, pivot).
// If transform != nullptr it receives a unimodular U (rows of the *input*
// combined into each output row, including the dropped zero rows at the end).
IntMat hnf_rows(IntMat m, IntMat* transform = nullptr);

// Canonical basis of the row lattice of m in "lower-left" orientation: row i
// has zeros in every column after its pivot, pivots run from column 0 upward,
// diagonal positive, entries below a pivot reduced mod the pivot. For a
// full-rank square matrix this is lower triangular; unique per lattice.
IntMat lattice_canon(const IntMat& m);

// basis for { c : c . form = 0, c integral }, as rows (n-1 x n for nonzero form)
IntMat integer_kernel_of_form(const std::vector<Int>& form);

Rat det_rat(RatMat m);

// solve x * basis = target over Q (basis: k rows of length n, full row rank);
// returns coefficients or throws if target is outside the row span
std::vector<Rat> solve_in_row_span(const RatMat& basis, const std::vector<Rat>& target);

}  // namespace quatorder
