#include "quatorder/linalg.hpp"

#include <algorithm>

namespace quatorder {

namespace {

void row_sub(std::vector<Int>& r, const Int& q, const std::vector<Int>& s) {
  for (size_t k = 0; k < r.size(); ++k) r[k] -= q * s[k];
}

}  // namespace

IntMat hnf_rows(IntMat m, IntMat* transform) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  IntMat u;
  if (transform) {
    u.assign(rows, std::vector<Int>(rows, 0));
    for (size_t i = 0; i < rows; ++i) u[i][i] = 1;
  }
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // gcd-eliminate column c below row r
    while (true) {
      size_t piv = rows;
      for (size_t i = r; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        if (piv == rows || cmp(abs(m[i][c]), abs(m[piv][c])) < 0) piv = i;
      }
      if (piv == rows) break;
      std::swap(m[r], m[piv]);
      if (transform) std::swap(u[r], u[piv]);
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        Int q = floor_div(m[i][c], m[r][c]);
        row_sub(m[i], q, m[r]);
        if (transform) row_sub(u[i], q, u[r]);
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0) {
      for (auto& e : m[r]) e = -e;
      if (transform)
        for (auto& e : u[r]) e = -e;
    }
    for (size_t i = 0; i < r; ++i) {
      Int q = floor_div(m[i][c], m[r][c]);
      if (q != 0) {
        row_sub(m[i], q, m[r]);
        if (transform) row_sub(u[i], q, u[r]);
      }
    }
    ++r;
  }
  if (transform) *transform = std::move(u);
  m.resize(r);
  return m;
}

IntMat lattice_canon(const IntMat& m) {
  if (m.empty()) return {};
  const size_t cols = m[0].size();
  IntMat rev(m.size(), std::vector<Int>(cols));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < cols; ++j) rev[i][j] = m[i][cols - 1 - j];
  IntMat h = hnf_rows(std::move(rev));
  IntMat out(h.size(), std::vector<Int>(cols));
  for (size_t i = 0; i < h.size(); ++i)
    for (size_t j = 0; j < cols; ++j) out[h.size() - 1 - i][j] = h[i][cols - 1 - j];
  return out;
}

IntMat integer_kernel_of_form(const std::vector<Int>& form) {
  IntMat col(form.size(), std::vector<Int>(1));
  for (size_t i = 0; i < form.size(); ++i) col[i][0] = form[i];
  IntMat u;
  IntMat h = hnf_rows(col, &u);
  // rows of u past the rank produce zero, i.e. the kernel
  IntMat out;
  for (size_t i = h.size(); i < u.size(); ++i) out.push_back(u[i]);
  return out;
}

Rat det_rat(RatMat m) {
  const size_t n = m.size();
  Rat det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rat inv = m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / inv;
      for (size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

std::vector<Rat> solve_in_row_span(const RatMat& basis, const std::vector<Rat>& target) {
  const size_t k = basis.size();
  const size_t n = target.size();
  // Gaussian elimination on the transposed system  basis^T * x^T = target^T
  RatMat aug(n, std::vector<Rat>(k + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
    aug[i][k] = target[i];
  }
  std::vector<long> pivot_of_col(k, -1);
  size_t row = 0;
  for (size_t c = 0; c < k && row < n; ++c) {
    size_t piv = row;
    while (piv < n && aug[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(aug[piv], aug[row]);
    Rat inv = aug[row][c];
    for (auto& e : aug[row]) e /= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == row || aug[i][c] == 0) continue;
      Rat f = aug[i][c];
      for (size_t j = 0; j <= k; ++j) aug[i][j] -= f * aug[row][j];
    }
    pivot_of_col[c] = static_cast<long>(row);
    ++row;
  }
  std::vector<Rat> x(k, Rat(0));
  for (size_t c = 0; c < k; ++c)
    if (pivot_of_col[c] >= 0) x[c] = aug[static_cast<size_t>(pivot_of_col[c])][k];
  // consistency: rows without pivot must have zero rhs
  for (size_t i = row; i < n; ++i)
    if (aug[i][k] != 0) throw Error("bad-input", "vector outside row span");
  return x;
}

}  // namespace quatorder
