#include "quatorder/classpoly.hpp"

#include <mpfr.h>

#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "quatorder/numth.hpp"

namespace quatorder {

Discriminant Discriminant::parse(Int d) {
  if (d <= 0 || (floor_mod(d, 4) != 0 && floor_mod(d, 4) != 3))
    throw Error("invalid-discriminant",
                "-" + d.get_str() + " is not 0 or 1 mod 4 (need D = 0 or 3 mod 4)");
  return Discriminant{std::move(d)};
}

std::vector<ReducedForm> reduced_forms(const Discriminant& disc) {
  const Int& D = disc.d;
  std::vector<ReducedForm> out;
  Int amax = isqrt(D / 3);
  for (Int a = 1; a <= amax; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      Int num = b * b + D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if ((abs(b) == a || a == c) && b < 0) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      out.push_back(ReducedForm{a, b, c});
    }
  }
  return out;
}

namespace {

// ---- minimal arbitrary-precision complex arithmetic on top of MPFR ----

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_ui(v, 0, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_swap(v, o.v); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v, o.v, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v, o.v);
    return *this;
  }
  ~Real() { mpfr_clear(v); }
  mpfr_t v;
};

struct Cx {
  Real re, im;
  explicit Cx(mpfr_prec_t prec) : re(prec), im(prec) {}
};

mpfr_prec_t precof(const Cx& z) { return mpfr_get_prec(z.re.v); }

Cx cx_add(const Cx& a, const Cx& b) {
  Cx r(precof(a));
  mpfr_add(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_add(r.im.v, a.im.v, b.im.v, MPFR_RNDN);
  return r;
}

Cx cx_sub(const Cx& a, const Cx& b) {
  Cx r(precof(a));
  mpfr_sub(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_sub(r.im.v, a.im.v, b.im.v, MPFR_RNDN);
  return r;
}

Cx cx_mul(const Cx& a, const Cx& b) {
  Cx r(precof(a));
  mpfr_prec_t prec = precof(a);
  Real t1(prec), t2(prec);
  mpfr_mul(t1.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_mul(t2.v, a.im.v, b.im.v, MPFR_RNDN);
  mpfr_sub(r.re.v, t1.v, t2.v, MPFR_RNDN);
  mpfr_mul(t1.v, a.re.v, b.im.v, MPFR_RNDN);
  mpfr_mul(t2.v, a.im.v, b.re.v, MPFR_RNDN);
  mpfr_add(r.im.v, t1.v, t2.v, MPFR_RNDN);
  return r;
}

Cx cx_div(const Cx& a, const Cx& b) {
  mpfr_prec_t prec = precof(a);
  Real den(prec), t1(prec), t2(prec);
  mpfr_mul(t1.v, b.re.v, b.re.v, MPFR_RNDN);
  mpfr_mul(t2.v, b.im.v, b.im.v, MPFR_RNDN);
  mpfr_add(den.v, t1.v, t2.v, MPFR_RNDN);
  Cx r(prec);
  mpfr_mul(t1.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_mul(t2.v, a.im.v, b.im.v, MPFR_RNDN);
  mpfr_add(r.re.v, t1.v, t2.v, MPFR_RNDN);
  mpfr_div(r.re.v, r.re.v, den.v, MPFR_RNDN);
  mpfr_mul(t1.v, a.im.v, b.re.v, MPFR_RNDN);
  mpfr_mul(t2.v, a.re.v, b.im.v, MPFR_RNDN);
  mpfr_sub(r.im.v, t1.v, t2.v, MPFR_RNDN);
  mpfr_div(r.im.v, r.im.v, den.v, MPFR_RNDN);
  return r;
}

Cx cx_mul_ui(const Cx& a, unsigned long s) {
  Cx r(precof(a));
  mpfr_mul_ui(r.re.v, a.re.v, s, MPFR_RNDN);
  mpfr_mul_ui(r.im.v, a.im.v, s, MPFR_RNDN);
  return r;
}

Cx cx_pow_ui(const Cx& base, unsigned long e) {
  Cx r(precof(base));
  mpfr_set_ui(r.re.v, 1, MPFR_RNDN);
  Cx b = base;
  while (e) {
    if (e & 1) r = cx_mul(r, b);
    e >>= 1;
    if (e) b = cx_mul(b, b);
  }
  return r;
}

// j(tau) for tau = (-b + i sqrt(D)) / (2a) via q-expansions of E4 and eta^24
Cx j_invariant(const Int& D, const Int& a, const Int& b, mpfr_prec_t prec) {
  // q = exp(2 pi i tau) = exp(-pi sqrt(D)/a) * (cos(pi b / a) - i sin(pi b / a))
  Real pi(prec), sqrtD(prec), t(prec), radius(prec), angle(prec);
  mpfr_const_pi(pi.v, MPFR_RNDN);
  mpfr_set_z(sqrtD.v, D.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(sqrtD.v, sqrtD.v, MPFR_RNDN);
  mpfr_mul(t.v, pi.v, sqrtD.v, MPFR_RNDN);
  mpfr_div_z(t.v, t.v, a.get_mpz_t(), MPFR_RNDN);
  mpfr_neg(t.v, t.v, MPFR_RNDN);
  mpfr_exp(radius.v, t.v, MPFR_RNDN);
  mpfr_mul_z(angle.v, pi.v, b.get_mpz_t(), MPFR_RNDN);
  mpfr_div_z(angle.v, angle.v, a.get_mpz_t(), MPFR_RNDN);
  Cx q(prec);
  mpfr_cos(q.re.v, angle.v, MPFR_RNDN);
  mpfr_sin(q.im.v, angle.v, MPFR_RNDN);
  mpfr_neg(q.im.v, q.im.v, MPFR_RNDN);
  mpfr_mul(q.re.v, q.re.v, radius.v, MPFR_RNDN);
  mpfr_mul(q.im.v, q.im.v, radius.v, MPFR_RNDN);

  // series truncated once q^n < 2^-(prec+32): n > (prec+32) ln2 / (pi sqrt(D)/a)
  double decay = 3.14159265358979 * std::sqrt(D.get_d()) / a.get_d();
  long N = static_cast<long>((static_cast<double>(prec) + 32.0) * 0.693147181 / decay) + 8;

  // powers q^1..q^N
  std::vector<Cx> qp;
  qp.reserve(static_cast<size_t>(N) + 1);
  qp.push_back(Cx(prec));
  mpfr_set_ui(qp[0].re.v, 1, MPFR_RNDN);
  for (long n = 1; n <= N; ++n) qp.push_back(cx_mul(qp.back(), q));

  // eta product: P = sum_k (-1)^k (q^{k(3k-1)/2} + q^{k(3k+1)/2})
  Cx P(prec);
  mpfr_set_ui(P.re.v, 1, MPFR_RNDN);
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2;
    long e2 = k * (3 * k + 1) / 2;
    if (e1 > N) break;
    Cx term = qp[static_cast<size_t>(e1)];
    if (e2 <= N) term = cx_add(term, qp[static_cast<size_t>(e2)]);
    P = (k % 2) ? cx_sub(P, term) : cx_add(P, term);
  }
  Cx delta = cx_mul(q, cx_pow_ui(P, 24));

  // E4 = 1 + 240 sum sigma_3(n) q^n
  std::vector<uint64_t> sigma3(static_cast<size_t>(N) + 1, 0);
  for (long ddiv = 1; ddiv <= N; ++ddiv) {
    uint64_t d3 = static_cast<uint64_t>(ddiv) * ddiv * ddiv;
    for (long n = ddiv; n <= N; n += ddiv) sigma3[static_cast<size_t>(n)] += d3;
  }
  Cx e4(prec);
  mpfr_set_ui(e4.re.v, 1, MPFR_RNDN);
  for (long n = 1; n <= N; ++n)
    e4 = cx_add(e4, cx_mul_ui(qp[static_cast<size_t>(n)], 240 * sigma3[static_cast<size_t>(n)]));

  return cx_div(cx_pow_ui(e4, 3), delta);
}

// integer coefficient vector (ascending) at one working precision, or empty on
// a failed rounding certificate
std::vector<Int> coeffs_at_precision(const Int& D, const std::vector<ReducedForm>& forms,
                                     mpfr_prec_t prec) {
  std::vector<Cx> coeffs;
  coeffs.push_back(Cx(prec));
  mpfr_set_ui(coeffs[0].re.v, 1, MPFR_RNDN);
  for (const auto& f : forms) {
    Cx j = j_invariant(D, f.a, f.b, prec);
    coeffs.insert(coeffs.begin(), Cx(prec));
    // multiply running product by (X - j)
    for (size_t i = 0; i + 1 < coeffs.size(); ++i)
      coeffs[i] = cx_sub(coeffs[i], cx_mul(j, coeffs[i + 1]));
  }
  std::vector<Int> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (mpfr_cmp_d(c.im.v, 0.26) > 0 || mpfr_cmp_d(c.im.v, -0.26) < 0) return {};
    Int r;
    mpfr_get_z(r.get_mpz_t(), c.re.v, MPFR_RNDN);
    mpfr_t err;
    mpfr_init2(err, 64);
    mpfr_sub_z(err, c.re.v, r.get_mpz_t(), MPFR_RNDN);
    bool bad = mpfr_cmp_d(err, 0.26) > 0 || mpfr_cmp_d(err, -0.26) < 0;
    mpfr_clear(err);
    if (bad) return {};
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

ClassPoly hilbert_class_poly(const Discriminant& disc) {
  const Int& D = disc.d;
  auto forms = reduced_forms(disc);
  if (forms.empty()) throw Error("internal", "no reduced forms for D = " + D.get_str());
  double s = 0;
  for (const auto& f : forms) s += 1.0 / f.a.get_d();
  long prec = static_cast<long>(std::ceil(3.14159265358979 * std::sqrt(D.get_d()) * s /
                                          std::log(2.0))) + 96;
  // certify by recomputation at doubled precision; identical integers required
  for (int attempt = 0; attempt < 4; ++attempt, prec *= 2) {
    auto lo = coeffs_at_precision(D, forms, prec);
    if (lo.empty()) continue;
    auto hi = coeffs_at_precision(D, forms, 2 * prec);
    if (hi == lo) return ClassPoly{D, std::move(lo)};
  }
  throw Error("precision-exhausted",
              "H_{-" + D.get_str() + "} did not stabilize after 3 precision doublings");
}

FpPoly reduce_mod_p(const ClassPoly& h, uint64_t p) {
  return FpPoly::from_int_coeffs(p, h.coeffs);
}

Rat hurwitz_class_number(const Int& n) {
  if (n <= 0 || (floor_mod(n, 4) != 0 && floor_mod(n, 4) != 3))
    throw Error("bad-input", "Hurwitz class number needs n = 0 or 3 mod 4, n > 0");
  Rat total = 0;
  for (Int f = 1; f * f <= n; ++f) {
    if (n % (f * f) != 0) continue;
    Int d = n / (f * f);
    if (floor_mod(d, 4) != 0 && floor_mod(d, 4) != 3) continue;
    long h = static_cast<long>(reduced_forms(Discriminant::parse(d)).size());
    if (d == 3)
      total += make_rat(h, 3);
    else if (d == 4)
      total += make_rat(h, 2);
    else
      total += Rat(h);
  }
  return total;
}

std::string ClassPoly::str(const std::string& var) const {
  std::string out;
  for (size_t i = coeffs.size(); i-- > 0;) {
    const Int& c = coeffs[i];
    if (c == 0 && coeffs.size() > 1) continue;
    if (out.empty()) {
      out += (c < 0 ? "-" : "");
    } else {
      out += (c < 0 ? " - " : " + ");
    }
    Int a = abs(c);
    if (i == 0 || a != 1) out += a.get_str();
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

HilbertCache::HilbertCache(std::string cache_dir) : dir_(std::move(cache_dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::shared_ptr<ClassPoly> HilbertCache::load_from_disk(const Int& d) {
  if (dir_.empty()) return nullptr;
  std::ifstream in(dir_ + "/H_" + d.get_str() + ".txt");
  if (!in) return nullptr;
  std::string dstr;
  long h = 0;
  if (!(in >> dstr >> h) || Int(dstr) != d || h < 1) return nullptr;
  std::vector<Int> desc;
  std::string line;
  while (in >> line) desc.emplace_back(line);
  if (static_cast<long>(desc.size()) != h + 1 || desc[0] != 1) return nullptr;
  auto poly = std::make_shared<ClassPoly>();
  poly->d = d;
  poly->coeffs.assign(desc.rbegin(), desc.rend());
  return poly;
}

void HilbertCache::store_to_disk(const ClassPoly& h) {
  if (dir_.empty()) return;
  std::string path = dir_ + "/H_" + h.d.get_str() + ".txt";
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << h.d.get_str() << " " << h.degree() << "\n";
    for (size_t i = h.coeffs.size(); i-- > 0;) out << h.coeffs[i].get_str() << "\n";
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
}

const ClassPoly& HilbertCache::get(const Int& d) {
  std::unique_lock<std::mutex> lock(mu_);
  for (;;) {
    auto it = done_.find(d);
    if (it != done_.end()) return *it->second;
    if (inflight_.insert(d).second) break;  // we are the single writer for d
    cv_.wait(lock);
  }
  lock.unlock();
  std::shared_ptr<ClassPoly> result;
  try {
    result = load_from_disk(d);
    if (!result)
      result = std::make_shared<ClassPoly>(hilbert_class_poly(Discriminant::parse(d)));
  } catch (...) {
    lock.lock();
    inflight_.erase(d);
    cv_.notify_all();
    throw;
  }
  lock.lock();
  store_to_disk(*result);
  auto& slot = done_[d];
  slot = std::move(result);
  inflight_.erase(d);
  cv_.notify_all();
  return *slot;
}

}  // namespace quatorder
