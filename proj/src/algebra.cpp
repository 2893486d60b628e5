#include "quatorder/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "quatorder/numth.hpp"

namespace quatorder {

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_rat(Int(s), 1);
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw Error("bad-input", "malformed rational '" + s + "'");
  }
}

namespace {

// (u^2 - 1)/8 mod 2 for odd u
int omega2(const Int& u) {
  Int m = floor_mod(u, 8);
  return (m == 1 || m == 7) ? 0 : 1;
}
// (u - 1)/2 mod 2 for odd u
int eps2(const Int& u) {
  return floor_mod(u, 4) == 1 ? 0 : 1;
}

}  // namespace

int hilbert_symbol(const Int& a, const Int& b, const Place& ell) {
  if (a == 0 || b == 0) throw Error("bad-input", "hilbert symbol needs nonzero arguments");
  if (ell.infinite) return (a < 0 && b < 0) ? -1 : 1;
  const Int& p = ell.prime;
  if (!is_prime(p)) throw Error("bad-input", "hilbert symbol at non-prime " + p.get_str());
  long alpha = valuation(a, p), beta = valuation(b, p);
  Int u = a, w = b;
  for (long i = 0; i < alpha; ++i) u /= p;
  for (long i = 0; i < beta; ++i) w /= p;
  if (p == 2) {
    long e = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
    return e % 2 ? -1 : 1;
  }
  int sign = 1;
  if ((alpha * beta) % 2 && floor_mod(p, 4) == 3) sign = -sign;
  if (beta % 2 && legendre(u, p) == -1) sign = -sign;
  if (alpha % 2 && legendre(w, p) == -1) sign = -sign;
  return sign;
}

std::vector<Place> ramified_places(const QuatAlgebra& alg) {
  const Int ma = -alg.a(), mb = -alg.b();
  std::vector<Int> candidates{2};
  for (const auto& q : odd_prime_factors(alg.a())) candidates.push_back(q);
  for (const auto& q : odd_prime_factors(alg.b())) candidates.push_back(q);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<Place> out;
  for (const auto& q : candidates)
    if (hilbert_symbol(ma, mb, Place::finite(q)) == -1) out.push_back(Place::finite(q));
  if (hilbert_symbol(ma, mb, Place::at_infinity()) == -1) out.push_back(Place::at_infinity());
  return out;
}

QuatAlgebra QuatAlgebra::definite(Int a, Int b) {
  if (a <= 0 || b <= 0) throw Error("bad-input", "need a, b > 0 (definite algebra)");
  return QuatAlgebra(0, std::move(a), std::move(b));
}

QuatAlgebra QuatAlgebra::bp(Int p, Int a, Int b) {
  if (p < 3 || !is_prime(p)) throw Error("bad-input", "not prime: p = " + p.get_str());
  QuatAlgebra alg = definite(std::move(a), std::move(b));
  auto places = ramified_places(alg);
  bool ok = places.size() == 2 && places[0] == Place::finite(p) && places[1].infinite;
  if (!ok) {
    std::string got;
    for (const auto& pl : places) got += (got.empty() ? "" : ",") + pl.str();
    throw Error("bad-input", "algebra (-" + alg.a().get_str() + ",-" + alg.b().get_str() +
                                 ") is ramified at {" + got + "}, not {" + p.get_str() + ",inf}");
  }
  alg.p_ = std::move(p);
  return alg;
}

const Int& QuatAlgebra::require_p() const {
  if (!certified_bp()) throw Error("bad-input", "operation requires a certified B_p algebra");
  return p_;
}

void require_same_algebra(const Quat& u, const Quat& v) {
  if (!(u.algebra() == v.algebra()))
    throw Error("algebra-mismatch", "operands live in different quaternion algebras");
}

Quat operator+(const Quat& u, const Quat& v) {
  require_same_algebra(u, v);
  return Quat(u.alg_, u.c_[0] + v.c_[0], u.c_[1] + v.c_[1], u.c_[2] + v.c_[2],
              u.c_[3] + v.c_[3]);
}

Quat operator-(const Quat& u, const Quat& v) {
  require_same_algebra(u, v);
  return Quat(u.alg_, u.c_[0] - v.c_[0], u.c_[1] - v.c_[1], u.c_[2] - v.c_[2],
              u.c_[3] - v.c_[3]);
}

Quat operator*(const Rat& s, const Quat& u) {
  return Quat(u.alg_, s * u.c_[0], s * u.c_[1], s * u.c_[2], s * u.c_[3]);
}

Quat operator*(const Quat& u, const Quat& v) {
  require_same_algebra(u, v);
  const Rat &t1 = u.c_[0], &x1 = u.c_[1], &y1 = u.c_[2], &z1 = u.c_[3];
  const Rat &t2 = v.c_[0], &x2 = v.c_[1], &y2 = v.c_[2], &z2 = v.c_[3];
  const Int &a = u.alg_.a(), &b = u.alg_.b();
  return Quat(u.alg_,
              t1 * t2 - a * x1 * x2 - b * y1 * y2 - a * b * z1 * z2,
              t1 * x2 + x1 * t2 + b * (y1 * z2 - z1 * y2),
              t1 * y2 + y1 * t2 + a * (z1 * x2 - x1 * z2),
              t1 * z2 + z1 * t2 + (x1 * y2 - y1 * x2));
}

Rat trace_pairing(const Quat& u, const Quat& v) {
  require_same_algebra(u, v);
  const Int &a = u.algebra().a(), &b = u.algebra().b();
  return Rat(2) * (u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] + a * b * u[3] * v[3]);
}

std::string Quat::str() const {
  static const char* names[4] = {"", "i", "j", "k"};
  std::ostringstream os;
  bool first = true;
  for (int idx = 0; idx < 4; ++idx) {
    const Rat& c = c_[static_cast<size_t>(idx)];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rat ab = abs(c);
    if (idx == 0 || ab != 1) os << rat_to_string(ab);
    if (idx > 0 && ab != 1) os << "*";
    os << names[idx];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace quatorder
