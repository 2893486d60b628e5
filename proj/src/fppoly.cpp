#include "quatorder/fppoly.hpp"

#include <sstream>

namespace quatorder {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) { return a * b % p; }

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a, uint64_t p) { return powmod(a, p - 2, p); }

}  // namespace

bool is_square_mod_p(uint64_t a, uint64_t p) {
  if (p == 2) return true;
  a %= p;
  if (a == 0) return true;
  return powmod(a, (p - 1) / 2, p) == 1;
}

FpPoly::FpPoly(uint64_t p, std::vector<uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2 || p >= (1ull << 32)) throw Error("bad-input", "modulus out of range");
  for (auto& e : c_) e %= p_;
  normalize();
}

FpPoly FpPoly::from_int_coeffs(uint64_t p, const std::vector<Int>& ascending) {
  std::vector<uint64_t> c;
  c.reserve(ascending.size());
  for (const auto& e : ascending) c.push_back(mod_to_u64(e, p));
  return FpPoly(p, std::move(c));
}

void FpPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  uint64_t inv = invmod(c_.back(), p_);
  std::vector<uint64_t> out(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) out[i] = mulmod(c_[i], inv, p_);
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::derivative(long k) const {
  if (k < 0) throw Error("bad-input", "negative derivative order");
  FpPoly f = *this;
  while (k-- > 0) {
    std::vector<uint64_t> out;
    for (size_t i = 1; i < f.c_.size(); ++i)
      out.push_back(mulmod(f.c_[i], i % f.p_, f.p_));
    f = FpPoly(f.p_, std::move(out));
  }
  return f;
}

uint64_t FpPoly::eval(uint64_t x) const {
  uint64_t r = 0;
  x %= p_;
  for (size_t i = c_.size(); i-- > 0;) r = (mulmod(r, x, p_) + c_[i]) % p_;
  return r;
}

FpPoly operator+(const FpPoly& f, const FpPoly& g) {
  if (f.p_ != g.p_) throw Error("modulus-mismatch", "different moduli");
  std::vector<uint64_t> out(std::max(f.c_.size(), g.c_.size()), 0);
  for (size_t i = 0; i < out.size(); ++i) out[i] = (f.coeff(i) + g.coeff(i)) % f.p_;
  return FpPoly(f.p_, std::move(out));
}

FpPoly operator-(const FpPoly& f, const FpPoly& g) {
  if (f.p_ != g.p_) throw Error("modulus-mismatch", "different moduli");
  std::vector<uint64_t> out(std::max(f.c_.size(), g.c_.size()), 0);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = (f.coeff(i) + f.p_ - g.coeff(i) % f.p_) % f.p_;
  return FpPoly(f.p_, std::move(out));
}

FpPoly operator*(const FpPoly& f, const FpPoly& g) {
  if (f.p_ != g.p_) throw Error("modulus-mismatch", "different moduli");
  if (f.is_zero() || g.is_zero()) return FpPoly::zero(f.p_);
  std::vector<uint64_t> out(f.c_.size() + g.c_.size() - 1, 0);
  for (size_t i = 0; i < f.c_.size(); ++i) {
    if (f.c_[i] == 0) continue;
    unsigned __int128 acc;
    for (size_t j = 0; j < g.c_.size(); ++j) {
      acc = static_cast<unsigned __int128>(f.c_[i]) * g.c_[j] + out[i + j];
      out[i + j] = static_cast<uint64_t>(acc % f.p_);
    }
  }
  return FpPoly(f.p_, std::move(out));
}

std::pair<FpPoly, FpPoly> FpPoly::divrem(const FpPoly& g) const {
  if (p_ != g.p_) throw Error("modulus-mismatch", "different moduli");
  if (g.is_zero()) throw Error("bad-input", "division by zero polynomial");
  FpPoly r = *this;
  long dg = g.degree();
  if (r.degree() < dg) return {FpPoly::zero(p_), r};
  std::vector<uint64_t> q(static_cast<size_t>(r.degree() - dg) + 1, 0);
  uint64_t inv = invmod(g.leading(), p_);
  while (!r.is_zero() && r.degree() >= dg) {
    size_t shift = static_cast<size_t>(r.degree() - dg);
    uint64_t c = mulmod(r.leading(), inv, p_);
    q[shift] = c;
    for (size_t i = 0; i < g.c_.size(); ++i) {
      uint64_t sub = mulmod(c, g.c_[i], p_);
      r.c_[shift + i] = (r.c_[shift + i] + p_ - sub) % p_;
    }
    r.normalize();
  }
  return {FpPoly(p_, std::move(q)), r};
}

FpPoly poly_gcd(const FpPoly& f, const FpPoly& g) {
  if (f.modulus() != g.modulus()) throw Error("modulus-mismatch", "different moduli");
  FpPoly a = f, b = g;
  while (!b.is_zero()) {
    FpPoly r = a.divrem(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool FpPoly::is_irreducible_quadratic() const {
  if (degree() != 2 || p_ == 2) return false;
  // b^2 - 4ac a non-residue
  uint64_t a = c_[2], b = c_[1], c0 = c_[0];
  uint64_t disc = (mulmod(b, b, p_) + 4 * p_ - mulmod(4 % p_, mulmod(a, c0, p_), p_)) % p_;
  return disc != 0 && !is_square_mod_p(disc, p_);
}

long FpPoly::multiplicity_of(const FpPoly& factor) const {
  if (factor.degree() < 1) throw Error("bad-input", "factor must be nonconstant");
  long m = 0;
  FpPoly cur = *this;
  while (!cur.is_zero()) {
    auto [q, r] = cur.divrem(factor);
    if (!r.is_zero()) break;
    ++m;
    cur = std::move(q);
  }
  return m;
}

std::string FpPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    if (i == 0 || c_[i] != 1) os << c_[i];
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::optional<JOutcome> classify_output(const FpPoly& g) {
  uint64_t p = g.modulus();
  if (g.degree() == 1) {
    FpPoly m = g.monic();
    uint64_t root = (p - m.coeff(0)) % p;
    return JOutcome{JOutcome::Kind::root, root, std::move(m)};
  }
  if (g.degree() == 2 && g.is_irreducible_quadratic())
    return JOutcome{JOutcome::Kind::pair, 0, g.monic()};
  return std::nullopt;
}

std::string JOutcome::str() const {
  if (kind == Kind::root) return "j = " + std::to_string(root);
  return "conjugate pair with minimal polynomial " + minpoly.str();
}

}  // namespace quatorder
