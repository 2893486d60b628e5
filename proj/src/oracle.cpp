#include "quatorder/oracle.hpp"

#include <algorithm>
#include <thread>

#include "quatorder/numth.hpp"

namespace quatorder {

namespace {

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

struct Fp2Ctx {
  uint64_t p, nr;
  Fp2Elem mul(const Fp2Elem& u, const Fp2Elem& v) const {
    return {(u.a * v.a + nr * (u.b * v.b % p)) % p, (u.a * v.b + u.b * v.a) % p};
  }
  Fp2Elem sub(const Fp2Elem& u, const Fp2Elem& v) const {
    return {(u.a + p - v.a) % p, (u.b + p - v.b) % p};
  }
  Fp2Elem inv(const Fp2Elem& u) const {
    // (a - bs) / (a^2 - nr b^2)
    uint64_t den = (u.a * u.a % p + p - nr * (u.b * u.b % p) % p) % p;
    uint64_t di = powmod(den, p - 2, p);
    return {u.a * di % p, (p - u.b % p) % p * di % p};
  }
  bool zero(const Fp2Elem& u) const { return u.a == 0 && u.b == 0; }
};

// dense truncated polynomial over F_{p^2}; index = degree
struct Fp2Poly {
  std::vector<uint64_t> re, im;
  size_t size() const { return re.size(); }
};

// c = a * b truncated above degree tmax; 128-bit accumulators, one reduction
// per output coefficient
Fp2Poly mul_trunc(const Fp2Poly& a, const Fp2Poly& b, size_t tmax, const Fp2Ctx& F) {
  size_t out_len = std::min(a.size() + b.size() - 1, tmax + 1);
  Fp2Poly c;
  c.re.assign(out_len, 0);
  c.im.assign(out_len, 0);
  for (size_t k = 0; k < out_len; ++k) {
    size_t i0 = (k + 1 >= b.size()) ? k + 1 - b.size() : 0;
    size_t i1 = std::min(k, a.size() - 1);
    unsigned __int128 srr = 0, sii = 0, sri = 0, sir = 0;
    for (size_t i = i0; i <= i1; ++i) {
      size_t j = k - i;
      srr += static_cast<unsigned __int128>(a.re[i]) * b.re[j];
      sii += static_cast<unsigned __int128>(a.im[i]) * b.im[j];
      sri += static_cast<unsigned __int128>(a.re[i]) * b.im[j];
      sir += static_cast<unsigned __int128>(a.im[i]) * b.re[j];
    }
    uint64_t rr = static_cast<uint64_t>(srr % F.p);
    uint64_t ii = static_cast<uint64_t>(sii % F.p);
    c.re[k] = (rr + F.nr * ii) % F.p;
    c.im[k] = static_cast<uint64_t>((sri + sir) % F.p);
  }
  return c;
}

Fp2Poly pow_trunc(Fp2Poly base, uint64_t e, size_t tmax, const Fp2Ctx& F) {
  Fp2Poly r;
  r.re = {1 % F.p};
  r.im = {0};
  while (e) {
    if (e & 1) r = mul_trunc(r, base, tmax, F);
    e >>= 1;
    if (e) base = mul_trunc(base, base, tmax, F);
  }
  return r;
}

bool is_ss(const Fp2Elem& j, const Fp2Ctx& F) {
  const uint64_t p = F.p;
  Fp2Elem A, B;
  if (F.zero(j)) {
    A = {0, 0};
    B = {1, 0};
  } else if (j.a == 1728 % p && j.b == 0) {
    A = {1, 0};
    B = {0, 0};
  } else {
    Fp2Elem k = F.mul(j, F.inv(F.sub({1728 % p, 0}, j)));
    A = F.mul({3 % p, 0}, k);
    B = F.mul({2 % p, 0}, k);
  }
  Fp2Poly f;
  f.re = {B.a, A.a, 0, 1};
  f.im = {B.b, A.b, 0, 0};
  size_t tmax = 3 * (p - 1) / 2;
  Fp2Poly g = pow_trunc(std::move(f), (p - 1) / 2, tmax, F);
  size_t idx = p - 1;
  if (idx >= g.size()) return true;
  return g.re[idx] == 0 && g.im[idx] == 0;
}

}  // namespace

uint64_t smallest_nonresidue(uint64_t p) {
  for (uint64_t a = 2; a < p; ++a)
    if (powmod(a, (p - 1) / 2, p) == p - 1) return a;
  throw Error("bad-input", "no non-residue mod " + std::to_string(p));
}

bool is_supersingular_j(const Fp2Elem& j, uint64_t p) {
  if (p < 5) throw Error("bad-input", "is_supersingular_j needs p >= 5");
  Fp2Ctx F{p, smallest_nonresidue(p)};
  return is_ss({j.a % p, j.b % p}, F);
}

SupersingularSet supersingular_set(uint64_t p, int jobs) {
  SupersingularSet out;
  out.p = p;
  if (p == 2 || p == 3) {
    out.roots_in_fp = {0};
    out.polynomial = FpPoly(p, {0, 1});
    return out;
  }
  if (p < 2 || !is_prime(Int(static_cast<unsigned long>(p))))
    throw Error("bad-input", "not prime: " + std::to_string(p));
  Fp2Ctx F{p, smallest_nonresidue(p)};

  // scan u + v s for v in [0, (p-1)/2]; v > 0 found once per conjugate pair
  if (jobs < 1) jobs = 1;
  size_t nthreads = std::min<size_t>(static_cast<size_t>(jobs), p);
  std::vector<std::vector<uint64_t>> roots(nthreads);
  std::vector<std::vector<std::pair<uint64_t, uint64_t>>> pairs(nthreads);
  auto work = [&](size_t tid) {
    for (uint64_t u = tid; u < p; u += nthreads) {
      for (uint64_t v = 0; v <= (p - 1) / 2; ++v) {
        if (!is_ss({u, v}, F)) continue;
        if (v == 0)
          roots[tid].push_back(u);
        else  // minimal polynomial (X - j)(X - j^p) = X^2 - 2uX + (u^2 - nr v^2)
          pairs[tid].emplace_back((2 * (p - u)) % p,
                                  (u * u % p + p - F.nr * (v * v % p) % p) % p);
      }
    }
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (size_t t = 0; t < nthreads; ++t) threads.emplace_back(work, t);
    for (auto& t : threads) t.join();
  }
  for (size_t t = 0; t < nthreads; ++t) {
    out.roots_in_fp.insert(out.roots_in_fp.end(), roots[t].begin(), roots[t].end());
    out.pairs.insert(out.pairs.end(), pairs[t].begin(), pairs[t].end());
  }
  std::sort(out.roots_in_fp.begin(), out.roots_in_fp.end());
  std::sort(out.pairs.begin(), out.pairs.end());

  FpPoly poly(p, {1});
  for (uint64_t r : out.roots_in_fp) poly = poly * FpPoly(p, {(p - r) % p, 1});
  for (const auto& [b, c] : out.pairs) poly = poly * FpPoly(p, {c, b, 1});
  out.polynomial = std::move(poly);
  return out;
}

}  // namespace quatorder
