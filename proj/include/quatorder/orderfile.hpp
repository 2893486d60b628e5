#pragma once

#include <string>

#include "quatorder/lattice.hpp"

namespace quatorder {

// Order file: JSON with fields p, a, b (integers) and basis, a 4x4 matrix of
// "num/den" strings giving the basis coefficients on (1, i, j, k).
Order parse_order_json(const std::string& text);
Order load_order_file(const std::string& path);

// canonical serialization (parse . print is the identity on canonical orders)
std::string order_to_json(const Order& o, int indent = 2);

// FNV-1a 64-bit content digest, for run reports
std::string content_digest(const std::string& bytes);

}  // namespace quatorder
