#include "quatorder/algorithms.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "quatorder/numth.hpp"

namespace quatorder {

namespace {

std::vector<Int> integer_coords_in_basis(const std::array<Quat, 4>& basis, const Quat& x) {
  RatMat b(4, std::vector<Rat>(4));
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) b[i][j] = basis[i][static_cast<int>(j)];
  std::vector<Rat> target{x[0], x[1], x[2], x[3]};
  auto c = solve_in_row_span(b, target);
  std::vector<Int> out(4);
  for (size_t i = 0; i < 4; ++i) {
    if (!is_integer(c[i])) throw Error("internal", "expected integral coordinates");
    out[i] = c[i].get_num();
  }
  return out;
}

long multiplicative_order(const Quat& u) {
  Quat one = Quat::scalar(u.algebra(), 1);
  Quat w = u;
  for (long ord = 1; ord <= 24; ++ord) {
    if (w == one) return ord;
    w = w * u;
  }
  throw Error("internal", "unit of order > 24");
}

std::vector<Int> canonical_class(std::vector<Int> v) {
  for (const auto& e : v) {
    if (e == 0) continue;
    if (e < 0)
      for (auto& f : v) f = -f;
    break;
  }
  return v;
}

}  // namespace

UnitGroup unit_group_order(const Order& o) {
  auto b = o.lattice().basis();
  IntMat gram(4, std::vector<Int>(4));
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      Rat t = trace_pairing(b[i], b[j]);
      gram[i][j] = t.get_num();
    }
  UnitGroup ug;
  for (const auto& sv : enumerate_gram(gram, 1)) {
    if (sv.nr != 1) continue;
    ug.count += 2;
    Quat u = Quat::scalar(o.algebra(), 0);
    for (size_t i = 0; i < 4; ++i) u = u + Rat(sv.coords[i]) * b[i];
    for (const Quat& v : {u, -u}) {
      long ord = multiplicative_order(v);
      ug.max_order = std::max(ug.max_order, ord);
      if (ord == 3 || ord == 6) ug.has_order_3_or_6 = true;
      if (ord == 4) ug.has_order_4 = true;
    }
  }
  return ug;
}

// ---------------------------------------------------------------------------
// Algorithm 1

namespace {

// mutable view of the primitive/short vector stream of a ternary lattice,
// re-enumerated with a growing bound
class VectorStream {
 public:
  VectorStream(const TernaryLattice& lat, Int start_bound, Int cap)
      : lat_(lat), bound_(std::move(start_bound)), cap_(std::move(cap)) {
    if (bound_ > cap_) bound_ = cap_;
    refresh();
  }

  // minimal-norm primitive vector not excluded; nullopt once above the cap
  std::optional<ShortVector> next_primitive(const std::set<std::vector<Int>>& excluded) {
    for (;;) {
      for (const auto& sv : vecs_) {
        if (!sv.primitive || excluded.count(sv.coords)) continue;
        return sv;
      }
      if (!grow()) return std::nullopt;
    }
  }

  // minimal-norm vector (primitive or not) linearly independent of span2
  std::optional<ShortVector> next_outside_plane(const IntMat& span2) {
    for (;;) {
      for (const auto& sv : vecs_) {
        IntMat trial = span2;
        trial.push_back(sv.coords);
        if (hnf_rows(std::move(trial)).size() == 3) return sv;
      }
      if (!grow()) return std::nullopt;
    }
  }

 private:
  bool grow() {
    if (bound_ >= cap_) return false;
    bound_ = std::min(Int(bound_ * 2), cap_);
    refresh();
    return true;
  }
  void refresh() { vecs_ = enumerate_by_norm(lat_, bound_); }
  const TernaryLattice& lat_;
  Int bound_, cap_;
  std::vector<ShortVector> vecs_;
};

}  // namespace

Alg1Result algorithm1(const Order& o, HilbertCache& cache, const Alg1Options& opt) {
  const Int& p = o.algebra().require_p();
  if (!o.is_maximal())
    throw Error("bad-input", "algorithm 1 requires a maximal order (D = " + o.disc().get_str() +
                                 ", expected " + Int(p * p).get_str() + ")");
  if (!p.fits_slong_p() || p >= (Int(1) << 32))
    throw Error("bad-input", "p too large for the F_p polynomial layer");
  const uint64_t p64 = static_cast<uint64_t>(p.get_ui());

  Alg1Result res;

  // Step 1: a nontrivial unit pins j to 0 or 1728
  UnitGroup ug = unit_group_order(o);
  if (ug.count > 2) {
    uint64_t j0 = ug.has_order_3_or_6 ? 0 : (1728 % p64);
    res.decided = true;
    res.unit_shortcut = true;
    res.g = FpPoly(p64, {(p64 - j0) % p64, 1});
    res.outcome = classify_output(res.g);
    return res;
  }

  GrossLattice gross = gross_lattice(o);
  const Int cap = (opt.norm_cap > 0) ? opt.norm_cap : 6 * p;
  VectorStream stream(gross.lattice(), std::max<Int>(8, 4 * isqrt(p)), cap);

  std::set<std::vector<Int>> used;
  std::vector<ShortVector> ys;  // y_1, y_2, ... as signed coordinate vectors
  auto quat_of = [&](const std::vector<Int>& coords) {
    return gross.lattice().from_coords(coords);
  };

  int n = 1, k = 0, cflag = 0;
  Int d_prev = -1;
  FpPoly g = FpPoly::zero(p64);
  bool from_step5 = false;  // next vector comes from Step 5 rather than Step 2
  std::optional<ShortVector> pending;

  for (;;) {
    // Step 2 (or the vector prepared by Step 5)
    ShortVector y;
    if (from_step5 && pending) {
      y = *pending;
      pending.reset();
      from_step5 = false;
    } else {
      auto nxt = stream.next_primitive(used);
      if (!nxt) {
        res.undecided_reason = "no primitive vector below the norm cap " + cap.get_str();
        res.g = g;
        return res;
      }
      y = *nxt;
    }
    if (y.nr > cap) {
      res.undecided_reason = "d_" + std::to_string(n) + " = " + y.nr.get_str() +
                             " exceeds the norm cap " + cap.get_str();
      res.g = g;
      return res;
    }
    used.insert(canonical_class(y.coords));
    ys.push_back(y);

    // Step 3
    const Int& d = y.nr;
    int eps = (fundamental_disc_abs(d) % p == 0) ? 2 : 1;
    k = (d == d_prev) ? k + eps : eps - 1;
    d_prev = d;
    FpPoly h = reduce_mod_p(cache.get(d), p64);
    if (eps == 2 && k == 1)
      g = poly_gcd(poly_gcd(g, h), h.derivative());
    else
      g = poly_gcd(g, h.derivative(k));
    if (!g.is_zero() && g.degree() < 1)
      throw Error("internal", "running gcd collapsed to a constant");

    Alg1Step step;
    step.n = n;
    step.coords = y.coords;
    step.y = quat_of(y.coords).str();
    step.d = d;
    step.eps = eps;
    step.k = k;
    step.deg_g = g.degree();
    step.g = g;
    res.trace.push_back(std::move(step));

    // Step 4
    if (auto out = classify_output(g)) {
      res.decided = true;
      res.outcome = std::move(out);
      res.g = g;
      return res;
    }
    bool branch = (cflag == 1) ||
                  (n == 2 && ys[0].nr >= 15 && 3 * ys[0].nr * ys[1].nr < 16 * p);
    if (!branch) {
      ++n;
      continue;
    }

    // Step 5
    if (n == 2) {
      cflag = 1;
      n = 3;
      ShortVector plus, minus;
      plus.coords = {ys[0].coords[0] + ys[1].coords[0], ys[0].coords[1] + ys[1].coords[1],
                     ys[0].coords[2] + ys[1].coords[2]};
      minus.coords = {ys[0].coords[0] - ys[1].coords[0], ys[0].coords[1] - ys[1].coords[1],
                      ys[0].coords[2] - ys[1].coords[2]};
      plus.nr = quat_of(plus.coords).nr().get_num();
      minus.nr = quat_of(minus.coords).nr().get_num();
      pending = (minus.nr < plus.nr) ? minus : plus;
      from_step5 = true;
    } else if (n == 3) {
      n = 4;
      ShortVector other;
      // the sign combination not taken for y_3
      bool took_plus = (ys[2].coords[0] == ys[0].coords[0] + ys[1].coords[0] &&
                        ys[2].coords[1] == ys[0].coords[1] + ys[1].coords[1] &&
                        ys[2].coords[2] == ys[0].coords[2] + ys[1].coords[2]);
      for (size_t t = 0; t < 3; ++t)
        other.coords.push_back(took_plus ? Int(ys[0].coords[t] - ys[1].coords[t])
                                         : Int(ys[0].coords[t] + ys[1].coords[t]));
      other.nr = quat_of(other.coords).nr().get_num();
      pending = other;
      from_step5 = true;
    } else if (n == 4) {
      n = 5;
      IntMat span2{ys[0].coords, ys[1].coords};
      auto y5 = stream.next_outside_plane(span2);
      if (!y5) {
        res.undecided_reason = "no vector outside <y1,y2> below the norm cap";
        res.g = g;
        return res;
      }
      pending = *y5;
      from_step5 = true;
    } else {
      // Step 5 exhausted with C = 1: fall back to the primitive stream
      ++n;
      from_step5 = false;
    }
  }
}

// ---------------------------------------------------------------------------
// Ibukiyama orders and ideal neighbors

Order ibukiyama_order(const Int& p) {
  if (p < 3 || !is_prime(p)) throw Error("bad-input", "not prime: p = " + p.get_str());
  if (floor_mod(p, 4) == 3) {
    QuatAlgebra alg = QuatAlgebra::bp(p, p, 1);
    Quat one = Quat::scalar(alg, 1);
    std::vector<Quat> basis{
        one, Quat(alg, 0, 0, 1, 0),
        Quat(alg, make_rat(1, 2), make_rat(1, 2), 0, 0),
        Quat(alg, 0, 0, make_rat(1, 2), make_rat(1, 2))};
    Order o = Order::make(alg, basis);
    if (!o.is_maximal() || !has_sqrt_minus_p(o))
      throw Error("internal", "p = 3 mod 4 family failed verification");
    return o;
  }
  // p = 1 mod 4: least prime q = 3 mod 8 with (-q/p) = -1, then r with q | r^2 + p
  Int q = 3;
  for (;; q += 2) {
    if (!is_prime(q) || floor_mod(q, 8) != 3) continue;
    if (legendre(floor_mod(-q, p), p) == -1) break;
  }
  Int r = pow_mod(floor_mod(-p, q), (q + 1) / 4, q);
  if (floor_mod(r * r + p, q) != 0) throw Error("internal", "square root mod q failed");
  QuatAlgebra alg = QuatAlgebra::bp(p, p, q);
  std::vector<Quat> basis{
      Quat::scalar(alg, 1),
      Quat(alg, make_rat(1, 2), 0, make_rat(1, 2), 0),
      Quat(alg, 0, make_rat(1, 2), 0, make_rat(1, 2)),
      Quat(alg, 0, 0, make_rat(r, q), make_rat(1, q))};
  Order o = Order::make(alg, basis);
  if (!o.is_maximal() || !has_sqrt_minus_p(o))
    throw Error("internal", "Ibukiyama family failed verification for q = " + q.get_str());
  return o;
}

std::vector<Order> neighbors(const Order& o, const Int& ell) {
  const Int& p = o.algebra().require_p();
  if (!is_prime(ell) || ell == p)
    throw Error("bad-input", "neighbor step needs a prime ell different from p");
  if (!o.is_maximal()) throw Error("bad-input", "neighbor step needs a maximal order");
  const long l = to_long(ell);
  auto b = o.lattice().basis();

  // structure constants of O mod ell
  long sc[4][4][4];
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      auto c = integer_coords_in_basis(b, b[i] * b[j]);
      for (size_t m = 0; m < 4; ++m)
        sc[i][j][m] = static_cast<long>(mod_to_u64(c[m], static_cast<uint64_t>(l)));
    }

  // cyclic left submodules (O a + ell O)/ell O of dimension 2
  auto rref2 = [&](std::array<std::array<long, 4>, 4> m) -> std::optional<IntMat> {
    size_t rank = 0;
    for (size_t col = 0; col < 4 && rank < 4; ++col) {
      size_t piv = rank;
      while (piv < 4 && m[piv][col] % l == 0) ++piv;
      if (piv == 4) continue;
      std::swap(m[rank], m[piv]);
      long inv = 1;
      for (long t = 1; t < l; ++t)
        if (m[rank][col] * t % l == 1) {
          inv = t;
          break;
        }
      for (auto& e : m[rank]) e = e * inv % l;
      for (size_t i = 0; i < 4; ++i) {
        if (i == rank || m[i][col] % l == 0) continue;
        long f = m[i][col] % l;
        for (size_t j2 = 0; j2 < 4; ++j2) m[i][j2] = ((m[i][j2] - f * m[rank][j2]) % l + l) % l;
      }
      ++rank;
    }
    if (rank != 2) return std::nullopt;
    IntMat out(2, std::vector<Int>(4));
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 4; ++j) out[i][j] = m[i][j];
    return out;
  };

  std::set<IntMat> lines;
  long l4 = l * l * l * l;
  for (long code = 1; code < l4; ++code) {
    long a0 = code % l, a1 = code / l % l, a2 = code / (l * l) % l, a3 = code / (l * l * l);
    std::array<std::array<long, 4>, 4> span{};
    for (size_t i = 0; i < 4; ++i)
      for (size_t m = 0; m < 4; ++m)
        span[i][m] =
            (sc[i][0][m] * a0 + sc[i][1][m] * a1 + sc[i][2][m] * a2 + sc[i][3][m] * a3) % l;
    if (auto v = rref2(span)) lines.insert(*v);
  }
  if (lines.size() != static_cast<size_t>(l) + 1)
    throw Error("split-failure", "found " + std::to_string(lines.size()) + " left ideals mod " +
                                     ell.get_str() + ", expected " + std::to_string(l + 1));

  std::vector<Order> out;
  for (const auto& line : lines) {
    std::vector<Quat> igens;
    for (const auto& bi : b) igens.push_back(Rat(ell) * bi);
    for (const auto& row : line) {
      Quat g = Quat::scalar(o.algebra(), 0);
      for (size_t m = 0; m < 4; ++m) g = g + Rat(row[m]) * b[m];
      igens.push_back(g);
    }
    QuatLattice ideal = QuatLattice::from_generators(o.algebra(), igens);
    // right order: O_R(I) = conj(I) * I / Nr(I), with Nr(I) = ell here
    auto ib = ideal.basis();
    std::vector<Quat> rgens;
    Rat inv_ell = make_rat(1, ell);
    for (const auto& gi : ib)
      for (const auto& gj : ib) rgens.push_back(inv_ell * (gi.conj() * gj));
    Order right = Order::make(o.algebra(), rgens);
    if (!right.is_maximal())
      throw Error("internal", "right order of a norm-" + ell.get_str() + " ideal not maximal");
    out.push_back(std::move(right));
  }
  return out;
}

// ---------------------------------------------------------------------------
// type enumeration and Algorithm 2

TypeSet enumerate_types(const Int& p) {
  Order seed = ibukiyama_order(p);
  const long bound6p = to_long(6 * p);

  TypeSet ts;
  ts.p = p;
  std::map<std::vector<long>, size_t> seen;
  std::vector<Order> queue;

  auto visit = [&](const Order& o) {
    GrossLattice g = gross_lattice(o);
    ThetaTable th = theta_table(g, bound6p);
    auto it = seen.find(th.theta);
    if (it != seen.end()) return;
    seen.emplace(th.theta, ts.types.size());
    TypeRecord rec{o, g, successive_minima(g), std::move(th), unit_group_order(o),
                   has_sqrt_minus_p(o)};
    ts.types.push_back(std::move(rec));
    queue.push_back(o);
  };

  visit(seed);
  while (!queue.empty()) {
    Order cur = std::move(queue.back());
    queue.pop_back();
    for (const auto& nb : neighbors(cur, 2)) visit(nb);
  }

  ts.mass = 0;
  for (const auto& t : ts.types) ts.mass += make_rat(t.in_fp ? 1 : 2, t.units.count);
  Rat expected = make_rat(p - 1, 24);
  if (ts.mass != expected)
    throw Error("mass-mismatch", "enumerated mass " + rat_to_string(ts.mass) +
                                     " != (p-1)/24 = " + rat_to_string(expected));

  std::sort(ts.types.begin(), ts.types.end(),
            [](const TypeRecord& a, const TypeRecord& b) { return a.theta.theta < b.theta.theta; });
  return ts;
}

FpPoly MatchResult::product_of_minpolys() const {
  if (pairs.empty()) throw Error("bad-input", "empty match result");
  FpPoly prod(pairs[0].outcome.minpoly.modulus(), {1});
  for (const auto& e : pairs) prod = prod * e.outcome.minpoly;
  return prod;
}

MatchResult algorithm2(const Int& p, bool restrict_to_fp, HilbertCache& cache, int jobs) {
  MatchResult mr;
  mr.types = enumerate_types(p);
  if (restrict_to_fp) {
    std::vector<TypeRecord> kept;
    for (auto& t : mr.types.types)
      if (t.in_fp) kept.push_back(std::move(t));
    mr.types.types = std::move(kept);
  }
  const size_t nt = mr.types.types.size();

  // Step 2: capped Algorithm 1 runs, embarrassingly parallel over types
  std::vector<std::optional<Alg1Result>> runs(nt);
  {
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto work = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= nt) return;
        try {
          runs[i] = algorithm1(mr.types.types[i].order, cache, Alg1Options{6 * p});
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    size_t nthreads = std::max(1, jobs);
    if (nthreads <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (size_t t = 0; t < std::min(nthreads, nt ? nt : 1); ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<std::optional<JOutcome>> decided(nt);
  std::vector<FpPoly> pending(nt, FpPoly::zero(2));
  for (size_t i = 0; i < nt; ++i) {
    if (runs[i]->decided)
      decided[i] = runs[i]->outcome;
    else
      pending[i] = runs[i]->g;
  }

  // Steps 3-4: cross-eliminate decided minimal polynomials until fixpoint
  for (;;) {
    bool progress = false;
    bool any_open = false;
    for (size_t i = 0; i < nt; ++i) {
      if (decided[i]) continue;
      any_open = true;
      for (size_t j = 0; j < nt; ++j) {
        if (!decided[j]) continue;
        for (;;) {
          FpPoly g = poly_gcd(pending[i], decided[j]->minpoly);
          if (g.degree() < 1) break;
          pending[i] = pending[i].divrem(g).first;
        }
      }
      if (auto out = classify_output(pending[i])) {
        decided[i] = std::move(out);
        progress = true;
      }
    }
    if (!any_open) break;
    if (!progress) {
      for (size_t i = 0; i < nt; ++i)
        if (!decided[i])
          mr.leftover.push_back("type " + std::to_string(i) + " stuck with G = " +
                                pending[i].str() + " (" + runs[i]->undecided_reason + ")");
      break;
    }
  }

  for (size_t i = 0; i < nt; ++i)
    if (decided[i]) mr.pairs.push_back(MatchEntry{i, *decided[i]});
  return mr;
}

// ---------------------------------------------------------------------------
// Theorem 1 verifier and the dominance relation

Theorem1Report verify_theorem1(const TypeSet& ts) {
  Theorem1Report rep;
  rep.p = ts.p;
  const size_t nt = ts.types.size();
  for (size_t i = 0; i < nt; ++i) {
    const auto& ti = ts.types[i];
    const auto& mi = ti.minima;
    bool cond3 = ts.p > 286 && mi.d1 >= 15 && 3 * mi.d1 * mi.d2 < 16 * ts.p;
    Int nxy = (mi.x + mi.y).nr().get_num();
    Int nxmy = (mi.x - mi.y).nr().get_num();
    for (size_t k = 0; k < nt; ++k) {
      if (i == k) continue;
      Theorem1Pair pr;
      pr.i = i;
      pr.k = k;
      pr.vacuous = !cond3;
      pr.hypotheses = {false, false, false, false, false, false};
      if (cond3) {
        const auto& tk = ts.types[k].theta;
        pr.hypotheses[0] = tk.th_opt(to_long(mi.d1)) >= 1;
        pr.hypotheses[1] = tk.th_opt(to_long(mi.d2)) >= 1;
        pr.hypotheses[2] = tk.th_opt(to_long(nxy)) >= 1;
        pr.hypotheses[3] = tk.th_opt(to_long(nxmy)) >= 1;
        pr.hypotheses[4] = tk.th_opt(to_long(mi.d3)) >= 1;
        pr.hypotheses[5] = ti.theta.th_opt(to_long(mi.d3)) <= tk.th_opt(to_long(mi.d3));
        pr.all_hold = std::all_of(pr.hypotheses.begin(), pr.hypotheses.end(),
                                  [](bool h) { return h; });
      }
      if (pr.vacuous) ++rep.vacuous_count;
      if (pr.all_hold) rep.counterexample = true;
      rep.pairs.push_back(pr);
    }
  }
  if (rep.counterexample)
    throw Error("counterexample-found",
                "the five-quantity hypothesis set held for a pair of distinct types at p = " +
                    ts.p.get_str());
  return rep;
}

Theorem1Report verify_theorem1(const Int& p) { return verify_theorem1(enumerate_types(p)); }

DominanceReport dominance_poset(const TypeSet& ts, long bound) {
  if (bound < 1) throw Error("bad-input", "dominance bound must be >= 1");
  DominanceReport rep;
  rep.p = ts.p;
  rep.bound = bound;
  const size_t nt = ts.types.size();
  std::vector<ThetaTable> tables;
  tables.reserve(nt);
  for (const auto& t : ts.types)
    tables.push_back(bound <= t.theta.bound ? t.theta : theta_table(t.gross, bound));
  std::vector<std::vector<bool>> dom(nt, std::vector<bool>(nt, false));
  for (size_t i = 0; i < nt; ++i)
    for (size_t k = 0; k < nt; ++k) {
      if (i == k) continue;
      bool le = true;
      for (long m = 1; m <= bound && le; ++m)
        le = tables[i].th_opt(m) <= tables[k].th_opt(m);
      dom[i][k] = le;
      if (le) rep.relation.emplace_back(i, k);
    }
  for (size_t i = 0; i < nt && rep.antisymmetric; ++i)
    for (size_t k = i + 1; k < nt && rep.antisymmetric; ++k)
      if (dom[i][k] && dom[k][i]) rep.antisymmetric = false;
  if (!rep.antisymmetric && bound >= to_long(6 * ts.p))
    throw Error("internal", "theta' tables of distinct types agree up to 6p");
  return rep;
}

DominanceReport dominance_poset(const Int& p, long bound) {
  return dominance_poset(enumerate_types(p), bound);
}

}  // namespace quatorder
