#pragma once

#include <vector>

#include "quatorder/rational.hpp"

namespace quatorder {

bool is_prime(const Int& n);

Int pow_mod(const Int& base, const Int& exp, const Int& mod);

// Legendre symbol (a/p) for odd prime p: one of -1, 0, +1.
int legendre(const Int& a, const Int& p);

// largest e with p^e | n (n != 0)
long valuation(Int n, const Int& p);

// odd prime factors of |n|, ascending, without multiplicity
std::vector<Int> odd_prime_factors(Int n);

// squarefree part s of n > 0 (n = s * f^2)
Int squarefree_part(Int n);

// |discriminant| of the quadratic field Q(sqrt(-d)), d > 0
Int fundamental_disc_abs(const Int& d);

}  // namespace quatorder
