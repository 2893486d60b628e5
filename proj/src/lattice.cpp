#include "quatorder/lattice.hpp"

#include <algorithm>

#include "quatorder/numth.hpp"

namespace quatorder {

namespace {

// (den, rows) from rational coordinate vectors, canonicalized; checks rank
std::pair<Int, IntMat> clear_and_canon(const std::vector<std::vector<Rat>>& coords,
                                       size_t want_rank) {
  Int den = 1;
  for (const auto& row : coords)
    for (const auto& c : row) den = lcm(den, c.get_den());
  IntMat m(coords.size());
  for (size_t i = 0; i < coords.size(); ++i) {
    m[i].resize(coords[i].size());
    for (size_t j = 0; j < coords[i].size(); ++j) {
      Rat scaled = coords[i][j] * den;
      m[i][j] = scaled.get_num();
    }
  }
  IntMat canon = lattice_canon(m);
  if (canon.size() != want_rank)
    throw Error("bad-input", "generators span rank " + std::to_string(canon.size()) +
                                 ", expected " + std::to_string(want_rank));
  Int g = den;
  for (const auto& row : canon)
    for (const auto& e : row) g = gcd(g, e);
  if (g > 1) {
    den /= g;
    for (auto& row : canon)
      for (auto& e : row) e /= g;
  }
  return {den, canon};
}

// membership of an integer vector in the row lattice of a canonical
// (lower-left) full-rank matrix, by triangular descent from the last column
bool solve_lower_left(const IntMat& canon, std::vector<Int> v) {
  const size_t n = canon.size();
  for (size_t step = 0; step < n; ++step) {
    size_t i = n - 1 - step;  // row with pivot at column i
    const Int& piv = canon[i][i];
    if (v[i] % piv != 0) return false;
    Int c = v[i] / piv;
    if (c != 0)
      for (size_t j = 0; j <= i; ++j) v[j] -= c * canon[i][j];
  }
  return std::all_of(v.begin(), v.end(), [](const Int& e) { return e == 0; });
}

bool lattice_contains(const Int& den, const IntMat& canon, const std::vector<Rat>& coords) {
  std::vector<Int> v(coords.size());
  for (size_t j = 0; j < coords.size(); ++j) {
    Rat scaled = coords[j] * den;
    if (!is_integer(scaled)) return false;
    v[j] = scaled.get_num();
  }
  return solve_lower_left(canon, std::move(v));
}

Int cbrt_floor(const Int& n) {
  Int r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
  return r;
}

long rank_of(IntMat m) { return static_cast<long>(hnf_rows(std::move(m)).size()); }

}  // namespace

QuatLattice QuatLattice::from_generators(const QuatAlgebra& alg, const std::vector<Quat>& gens) {
  if (gens.empty()) throw Error("bad-input", "no generators");
  std::vector<std::vector<Rat>> coords;
  coords.reserve(gens.size());
  for (const auto& g : gens) {
    if (!(g.algebra() == alg)) throw Error("algebra-mismatch", "generator in wrong algebra");
    coords.push_back({g[0], g[1], g[2], g[3]});
  }
  auto [den, mat] = clear_and_canon(coords, 4);
  return QuatLattice(alg, std::move(den), std::move(mat));
}

std::array<Quat, 4> QuatLattice::basis() const {
  auto row = [&](size_t i) {
    return Quat(alg_, make_rat(mat_[i][0], den_), make_rat(mat_[i][1], den_),
                make_rat(mat_[i][2], den_), make_rat(mat_[i][3], den_));
  };
  return {row(0), row(1), row(2), row(3)};
}

bool QuatLattice::contains(const Quat& x) const {
  if (!(x.algebra() == alg_)) return false;
  return lattice_contains(den_, mat_, {x[0], x[1], x[2], x[3]});
}

TernaryLattice TernaryLattice::from_generators(const QuatAlgebra& alg,
                                               const std::vector<Quat>& gens) {
  std::vector<std::vector<Rat>> coords;
  coords.reserve(gens.size());
  for (const auto& g : gens) {
    if (!(g.algebra() == alg)) throw Error("algebra-mismatch", "generator in wrong algebra");
    if (g.tr() != 0) throw Error("bad-input", "generator has nonzero trace");
    coords.push_back({g[1], g[2], g[3]});
  }
  auto [den, mat] = clear_and_canon(coords, 3);
  // Gram on the canonical basis; Tr(v_s conj v_t) = 2(a x x' + b y y' + ab z z')
  const Int &a = alg.a(), &b = alg.b();
  Int den2 = den * den;
  IntMat gram(3, std::vector<Int>(3));
  for (size_t s = 0; s < 3; ++s)
    for (size_t t = s; t < 3; ++t) {
      Int raw = 2 * (a * mat[s][0] * mat[t][0] + b * mat[s][1] * mat[t][1] +
                     a * b * mat[s][2] * mat[t][2]);
      if (raw % den2 != 0)
        throw Error("non-integral", "trace pairing is not integral on this lattice");
      gram[s][t] = gram[t][s] = raw / den2;
    }
  return TernaryLattice(alg, std::move(den), std::move(mat), std::move(gram));
}

Int TernaryLattice::det_gram() const {
  RatMat g(3, std::vector<Rat>(3));
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) g[i][j] = Rat(gram_[i][j]);
  Rat d = det_rat(std::move(g));
  return d.get_num();
}

std::array<Quat, 3> TernaryLattice::gens() const {
  auto row = [&](size_t i) {
    return Quat(alg_, Rat(0), make_rat(mat_[i][0], den_), make_rat(mat_[i][1], den_),
                make_rat(mat_[i][2], den_));
  };
  return {row(0), row(1), row(2)};
}

Quat TernaryLattice::from_coords(const std::vector<Int>& c) const {
  Rat x = 0, y = 0, z = 0;
  for (size_t i = 0; i < 3; ++i) {
    x += Rat(c[i]) * make_rat(mat_[i][0], den_);
    y += Rat(c[i]) * make_rat(mat_[i][1], den_);
    z += Rat(c[i]) * make_rat(mat_[i][2], den_);
  }
  return Quat(alg_, Rat(0), std::move(x), std::move(y), std::move(z));
}

bool TernaryLattice::contains(const Quat& q) const {
  if (!(q.algebra() == alg_) || q.tr() != 0) return false;
  return lattice_contains(den_, mat_, {q[1], q[2], q[3]});
}

Order Order::make(const QuatAlgebra& alg, const std::vector<Quat>& basis) {
  QuatLattice lat = QuatLattice::from_generators(alg, basis);
  auto b = lat.basis();
  if (!lat.contains(Quat::scalar(alg, 1)))
    throw Error("missing-one", "lattice does not contain 1");
  for (const auto& v : b) {
    if (!is_integer(v.tr()))
      throw Error("non-integral", "basis element " + v.str() + " has non-integral trace");
    if (!is_integer(v.nr()))
      throw Error("non-integral", "basis element " + v.str() + " has non-integral norm");
  }
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      if (!is_integer(trace_pairing(b[i], b[j])))
        throw Error("non-integral", "trace pairing is not integral");
      Quat prod = b[i] * b[j];
      if (!lat.contains(prod))
        throw Error("not-a-ring", "basis product " + b[i].str() + " * " + b[j].str() +
                                      " falls outside the lattice");
    }
  // D(O) = |det(Tr(b_i b_j))|
  RatMat tm(4, std::vector<Rat>(4));
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) tm[i][j] = (b[i] * b[j]).tr();
  Rat d = det_rat(std::move(tm));
  if (!is_integer(d)) throw Error("internal", "non-integral discriminant");
  Int disc = abs(d.get_num());
  if (mpz_perfect_square_p(disc.get_mpz_t()) == 0)
    throw Error("internal", "discriminant " + disc.get_str() + " is not a perfect square");
  return Order(std::move(lat), std::move(disc));
}

bool Order::is_maximal() const {
  const Int& p = algebra().require_p();
  return disc_ == p * p;
}

TernaryLattice Order::trace_zero_sublattice() const {
  auto b = lat_.basis();
  std::vector<Int> traces(4);
  for (size_t i = 0; i < 4; ++i) traces[i] = b[i].tr().get_num();
  IntMat ker = integer_kernel_of_form(traces);
  std::vector<Quat> gens;
  for (const auto& row : ker) {
    Quat g = Quat::scalar(algebra(), 0);
    for (size_t j = 0; j < 4; ++j) g = g + Rat(row[j]) * b[j];
    gens.push_back(g);
  }
  return TernaryLattice::from_generators(algebra(), gens);
}

GrossLattice gross_lattice(const Order& o) {
  auto b = o.lattice().basis();
  if (!(b[0] == o.one())) throw Error("internal", "canonical order basis does not start with 1");
  std::vector<Quat> gens;
  for (size_t i = 1; i < 4; ++i)
    gens.push_back(Rat(2) * b[i] - Quat::scalar(o.algebra(), b[i].tr()));
  return GrossLattice(TernaryLattice::from_generators(o.algebra(), gens), o);
}

std::vector<ShortVector> enumerate_by_norm(const TernaryLattice& lat, const Int& bound) {
  return enumerate_gram(lat.gram(), bound);
}

MinimaTriple successive_minima(const TernaryLattice& lat) {
  Int det = lat.det_gram();
  Int bound = cbrt_floor(det / 4) + 1;
  if (bound < 4) bound = 4;
  std::vector<std::vector<Int>> picked;
  std::vector<Int> norms;
  for (;;) {
    picked.clear();
    norms.clear();
    for (const auto& sv : enumerate_gram(lat.gram(), bound)) {
      IntMat trial = picked;
      trial.push_back(sv.coords);
      if (rank_of(trial) == static_cast<long>(trial.size())) {
        picked.push_back(sv.coords);
        norms.push_back(sv.nr);
        if (picked.size() == 3) break;
      }
    }
    if (picked.size() == 3) break;
    bound *= 2;
  }
  MinimaTriple m{norms[0], norms[1], norms[2],
                 lat.from_coords(picked[0]), lat.from_coords(picked[1]),
                 lat.from_coords(picked[2]),
                 {picked[0], picked[1], picked[2]},
                 Rat(0)};
  Rat pairing = trace_pairing(m.x, m.y);
  if (pairing > 0) {
    m.y = -m.y;
    for (auto& e : m.coords[1]) e = -e;
    pairing = -pairing;
  }
  m.mu = pairing / Rat(m.d1);
  return m;
}

ThetaTable theta_table(const TernaryLattice& lat, long bound) {
  if (bound < 1) throw Error("bad-input", "theta bound must be >= 1");
  ThetaTable t;
  t.bound = bound;
  t.theta.assign(static_cast<size_t>(bound) + 1, 0);
  t.theta_opt.assign(static_cast<size_t>(bound) + 1, 0);
  for (const auto& sv : enumerate_gram(lat.gram(), Int(bound))) {
    long k = to_long(sv.nr);
    t.theta[static_cast<size_t>(k)] += 1;
    if (sv.primitive) t.theta_opt[static_cast<size_t>(k)] += 1;
  }
  return t;
}

Order reconstruct_order(const QuatAlgebra& alg, const std::vector<Quat>& trace_zero_gens) {
  try {
    TernaryLattice t = TernaryLattice::from_generators(alg, trace_zero_gens);
    auto v = t.gens();
    Quat one = Quat::scalar(alg, 1);
    std::vector<Quat> l1 = {one, v[0], v[1], v[2]};
    QuatLattice base = QuatLattice::from_generators(alg, l1);
    auto bb = base.basis();
    std::vector<Quat> gens(l1);
    for (int mask = 1; mask < 16; ++mask) {
      Quat w = Quat::scalar(alg, (mask & 1) ? 1 : 0);
      for (int i = 0; i < 3; ++i)
        if (mask & (2 << i)) w = w + v[static_cast<size_t>(i)];
      if (floor_mod(w.nr().get_num(), 4) != 0) continue;
      bool even_pairing = true;
      for (const auto& bj : bb)
        if (floor_mod(trace_pairing(w, bj).get_num(), 2) != 0) {
          even_pairing = false;
          break;
        }
      if (!even_pairing) continue;
      gens.push_back(make_rat(1, 2) * w);
    }
    Order o = Order::make(alg, gens);
    if (!o.is_maximal())
      throw Error("not-an-order", "candidate has discriminant " + o.disc().get_str());
    if (!(gross_lattice(o).lattice() == t))
      throw Error("not-an-order", "candidate order does not reproduce the input lattice");
    return o;
  } catch (const Error& e) {
    if (e.kind() == "not-an-order") throw;
    throw Error("not-an-order", e.what());
  }
}

Order reconstruct_order(const GrossLattice& g) {
  auto gg = g.gens();
  return reconstruct_order(g.lattice().algebra(), {gg[0], gg[1], gg[2]});
}

bool has_sqrt_minus_p(const Order& o) {
  const Int& p = o.algebra().require_p();
  if (!o.is_maximal()) throw Error("bad-input", "has_sqrt_minus_p expects a maximal order");
  for (const auto& sv : enumerate_gram(o.trace_zero_sublattice().gram(), p))
    if (sv.nr == p) return true;
  return false;
}

}  // namespace quatorder
