#include <chrono>
#include <filesystem>
#include <random>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quatorder/algorithms.hpp"
#include "quatorder/numth.hpp"
#include "quatorder/oracle.hpp"
#include "quatorder/orderfile.hpp"

using namespace quatorder;
using nlohmann::json;

namespace {

// exit codes: 0 ok, 1 input error, 2 undecided, 3 internal-invariant failure
constexpr int kOk = 0, kInputError = 1, kUndecided = 2, kInternal = 3;

int exit_code_for(const Error& e) {
  static const std::set<std::string> input_kinds{
      "bad-input",     "not-a-ring",           "missing-one", "non-integral",
      "not-an-order",  "invalid-discriminant", "algebra-mismatch",
      "modulus-mismatch"};
  return input_kinds.count(e.kind()) ? kInputError : kInternal;
}

struct RunReport {
  std::string command;
  std::string input_digest;
  json outputs = json::object();
  json trace = json::array();
  double timing_ms = 0;
  json to_json() const {
    return json{{"command", command},
                {"input_digest", input_digest},
                {"outputs", outputs},
                {"trace", trace},
                {"timing_ms", timing_ms}};
  }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("bad-input", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string default_cache_dir() {
  const char* env = std::getenv("QUATORDER_CACHE_DIR");
  return env ? env : "";
}

std::string poly_with_mod(const FpPoly& f) {
  return f.str() + " (mod " + std::to_string(f.modulus()) + ")";
}

// one random cached H_{-D} is recomputed per run and compared against disk
int spot_check_cache(const std::string& cache_dir) {
  if (cache_dir.empty()) return kOk;
  namespace fs = std::filesystem;
  std::vector<Int> cached;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(cache_dir, ec)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("H_", 0) == 0 && name.size() > 6 && name.substr(name.size() - 4) == ".txt")
      cached.emplace_back(name.substr(2, name.size() - 6));
  }
  if (cached.empty()) return kOk;
  std::random_device rd;
  const Int& d = cached[rd() % cached.size()];
  HilbertCache disk(cache_dir);
  ClassPoly fresh = hilbert_class_poly(Discriminant::parse(d));
  if (disk.get(d).coeffs != fresh.coeffs) {
    std::cerr << "cache spot-check FAILED for D = " << d.get_str()
              << ": cached polynomial differs from a fresh recomputation\n";
    return kInternal;
  }
  std::cerr << "cache spot-check: D = " << d.get_str() << " ok\n";
  return kOk;
}

json poly_coeffs_json(const FpPoly& f) {
  json arr = json::array();
  for (size_t i = f.coeffs().size(); i-- > 0;) arr.push_back(f.coeff(i));
  return arr;  // degree-descending
}

json trace_json(const std::vector<Alg1Step>& steps) {
  json arr = json::array();
  for (const auto& s : steps) {
    json coords = json::array();
    for (const auto& c : s.coords) coords.push_back(c.get_str());
    arr.push_back(json{{"n", s.n},
                       {"y", s.y},
                       {"coords", coords},
                       {"d", s.d.get_str()},
                       {"eps", s.eps},
                       {"k", s.k},
                       {"deg_g", s.deg_g},
                       {"g", poly_coeffs_json(s.g)}});
  }
  return arr;
}

json order_json_obj(const Order& o) {
  return json::parse(order_to_json(o));
}

Int parse_int_arg(const std::string& s, const char* what) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw Error("bad-input", std::string("malformed ") + what + ": " + s);
  }
}

Int require_prime(const Int& p) {
  if (p < 3 || !is_prime(p)) throw Error("bad-input", "not prime: " + p.get_str());
  return p;
}

void emit(const RunReport& rep, bool as_json) {
  if (as_json) std::cout << rep.to_json().dump(2) << "\n";
}

// ---------------------------------------------------------------------------

int cmd_jinv(const std::string& path, bool show_trace, const std::string& cap_str,
             const std::string& cache_dir, bool as_json) {
  Timer timer;
  RunReport rep;
  rep.command = "jinv";
  std::string text = read_file(path);
  rep.input_digest = content_digest(text);
  Order o = parse_order_json(text);
  if (!o.is_maximal())
    throw Error("bad-input", "is_maximal failed: D(O) = " + o.disc().get_str() +
                                 " != p^2; jinv requires a maximal order");
  HilbertCache cache(cache_dir);
  Alg1Options opt;
  if (!cap_str.empty()) opt.norm_cap = parse_int_arg(cap_str, "norm cap");
  Alg1Result res = algorithm1(o, cache, opt);
  rep.trace = trace_json(res.trace);
  rep.timing_ms = timer.ms();
  rep.outputs["decided"] = res.decided;
  if (res.decided) {
    rep.outputs["minpoly"] = poly_coeffs_json(res.outcome->minpoly);
    rep.outputs["kind"] = res.outcome->kind == JOutcome::Kind::root ? "root" : "pair";
    std::cout << poly_with_mod(res.outcome->minpoly) << "\n";
    if (res.outcome->kind == JOutcome::Kind::root) {
      rep.outputs["root"] = res.outcome->root;
      std::cout << "j = " << res.outcome->root << "\n";
    }
  } else {
    rep.outputs["reason"] = res.undecided_reason;
    rep.outputs["g"] = poly_coeffs_json(res.g);
    std::cout << "undecided: " << res.undecided_reason << "\n"
              << "current G = " << poly_with_mod(res.g) << "\n";
  }
  if (show_trace)
    for (const auto& s : res.trace)
      std::cout << "n=" << s.n << " y=" << s.y << " d=" << s.d.get_str() << " eps=" << s.eps
                << " k=" << s.k << " degG=" << s.deg_g << " G=" << s.g.str() << "\n";
  emit(rep, as_json);
  int cache_rc = spot_check_cache(cache_dir);
  if (cache_rc != kOk) return cache_rc;
  return res.decided ? kOk : kUndecided;
}

int cmd_match_all(const std::string& p_str, bool restrict_fp, bool oracle_check, int jobs,
                  const std::string& out_path, const std::string& cache_dir, bool as_json) {
  Timer timer;
  RunReport rep;
  rep.command = "match-all";
  Int p = require_prime(parse_int_arg(p_str, "p"));
  rep.input_digest = content_digest(p.get_str());
  HilbertCache cache(cache_dir);
  MatchResult mr = algorithm2(p, restrict_fp, cache, jobs);

  json pairs = json::array();
  for (const auto& e : mr.pairs) {
    const TypeRecord& t = mr.types.types[e.type_index];
    pairs.push_back(json{{"order_basis", order_json_obj(t.order)["basis"]},
                         {"minpoly", poly_coeffs_json(e.outcome.minpoly)},
                         {"kind", e.outcome.kind == JOutcome::Kind::root ? "root" : "pair"}});
  }
  rep.outputs["pairs"] = pairs;
  rep.outputs["type_count"] = mr.types.types.size();
  rep.outputs["mass"] = rat_to_string(mr.types.mass);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << pairs.dump(2) << "\n";
  }

  for (const auto& e : mr.pairs) {
    const TypeRecord& t = mr.types.types[e.type_index];
    std::cout << "type " << e.type_index << " (D1,D2,D3)=(" << t.minima.d1.get_str() << ","
              << t.minima.d2.get_str() << "," << t.minima.d3.get_str()
              << ") K = " << e.outcome.minpoly.str() << "\n";
  }
  int code = kOk;
  if (!mr.leftover.empty()) {
    for (const auto& l : mr.leftover) std::cout << "leftover: " << l << "\n";
    rep.outputs["leftover"] = mr.leftover;
    code = kUndecided;
  } else if (oracle_check) {
    auto oracle = supersingular_set(static_cast<uint64_t>(p.get_ui()), jobs);
    bool poly_match = !restrict_fp && mr.product_of_minpolys() == oracle.polynomial;
    bool count_match = restrict_fp && mr.pairs.size() == oracle.roots_in_fp.size();
    bool ok = restrict_fp ? count_match : poly_match;
    rep.outputs["oracle_match"] = ok;
    std::cout << "oracle check: " << (ok ? "match" : "MISMATCH") << "\n";
    if (!ok) code = kInternal;
  }
  rep.timing_ms = timer.ms();
  emit(rep, as_json);
  int cache_rc = spot_check_cache(cache_dir);
  if (cache_rc != kOk) return cache_rc;
  return code;
}

int cmd_hilbert(const std::string& d_str, const std::string& p_str,
                const std::string& cache_dir, bool as_json) {
  Timer timer;
  RunReport rep;
  rep.command = "hilbert";
  Int d = parse_int_arg(d_str, "D");
  rep.input_digest = content_digest(d.get_str() + "|" + p_str);
  Discriminant disc = Discriminant::parse(d);
  HilbertCache cache(cache_dir);
  const ClassPoly& h = cache.get(disc.d);
  if (p_str.empty()) {
    json arr = json::array();
    for (size_t i = h.coeffs.size(); i-- > 0;) arr.push_back(h.coeffs[i].get_str());
    rep.outputs["coeffs"] = arr;
    std::cout << h.str() << "\n";
  } else {
    Int p = require_prime(parse_int_arg(p_str, "p"));
    FpPoly r = reduce_mod_p(h, static_cast<uint64_t>(p.get_ui()));
    rep.outputs["coeffs"] = poly_coeffs_json(r);
    std::cout << poly_with_mod(r) << "\n";
  }
  rep.timing_ms = timer.ms();
  emit(rep, as_json);
  return spot_check_cache(cache_dir);
}

int cmd_oracle(const std::string& p_str, int jobs, bool as_json) {
  Timer timer;
  RunReport rep;
  rep.command = "oracle";
  Int p = require_prime(parse_int_arg(p_str, "p"));
  rep.input_digest = content_digest(p.get_str());
  auto s = supersingular_set(static_cast<uint64_t>(p.get_ui()), jobs);
  json roots = json::array();
  for (auto r : s.roots_in_fp) roots.push_back(r);
  json pairs = json::array();
  for (const auto& [b, c] : s.pairs) pairs.push_back(json::array({b, c}));
  rep.outputs = {{"roots_in_fp", roots},
                 {"pairs", pairs},
                 {"polynomial", poly_coeffs_json(s.polynomial)}};
  rep.timing_ms = timer.ms();
  std::cout << "supersingular polynomial: " << poly_with_mod(s.polynomial) << "\n";
  std::cout << "roots in F_p:";
  for (auto r : s.roots_in_fp) std::cout << " " << r;
  std::cout << "\nconjugate pairs:";
  for (const auto& [b, c] : s.pairs) std::cout << " (" << FpPoly(s.p, {c, b, 1}).str() << ")";
  std::cout << "\n";
  emit(rep, as_json);
  return kOk;
}

int cmd_order_info(const std::string& path, bool as_json) {
  Timer timer;
  RunReport rep;
  rep.command = "order-info";
  std::string text = read_file(path);
  rep.input_digest = content_digest(text);
  Order o = parse_order_json(text);
  GrossLattice g = gross_lattice(o);
  auto m = successive_minima(g);
  UnitGroup ug = unit_group_order(o);
  bool fp = o.is_maximal() ? has_sqrt_minus_p(o) : false;
  rep.outputs = {{"p", o.algebra().require_p().get_str()},
                 {"disc", o.disc().get_str()},
                 {"maximal", o.is_maximal()},
                 {"det_gram", g.det_gram().get_str()},
                 {"minima", json::array({m.d1.get_str(), m.d2.get_str(), m.d3.get_str()})},
                 {"mu", rat_to_string(m.mu)},
                 {"unit_count", ug.count},
                 {"has_sqrt_minus_p", fp},
                 {"canonical", order_json_obj(o)}};
  rep.timing_ms = timer.ms();
  std::cout << "p = " << o.algebra().require_p().get_str() << ", D(O) = " << o.disc().get_str()
            << (o.is_maximal() ? " (maximal)" : " (not maximal)") << "\n"
            << "Gross lattice: det(Gram) = " << g.det_gram().get_str() << ", minima = ("
            << m.d1.get_str() << ", " << m.d2.get_str() << ", " << m.d3.get_str() << "), mu = "
            << rat_to_string(m.mu) << "\n"
            << "units: " << ug.count << ", sqrt(-p) in O: " << (fp ? "yes" : "no") << "\n";
  emit(rep, as_json);
  return kOk;
}

int cmd_types(const std::string& p_str, bool as_json) {
  Timer timer;
  RunReport rep;
  rep.command = "types";
  Int p = require_prime(parse_int_arg(p_str, "p"));
  rep.input_digest = content_digest(p.get_str());
  TypeSet ts = enumerate_types(p);
  json types = json::array();
  for (const auto& t : ts.types) {
    types.push_back(json{{"minima", json::array({t.minima.d1.get_str(), t.minima.d2.get_str(),
                                                 t.minima.d3.get_str()})},
                         {"units", t.units.count},
                         {"in_fp", t.in_fp},
                         {"basis", order_json_obj(t.order)["basis"]}});
  }
  rep.outputs = {{"type_count", ts.types.size()}, {"mass", rat_to_string(ts.mass)},
                 {"types", types}};
  rep.timing_ms = timer.ms();
  std::cout << "t_p = " << ts.types.size() << ", mass = " << rat_to_string(ts.mass) << " = (p-1)/24\n";
  for (size_t i = 0; i < ts.types.size(); ++i) {
    const auto& t = ts.types[i];
    std::cout << "type " << i << ": minima (" << t.minima.d1.get_str() << ", "
              << t.minima.d2.get_str() << ", " << t.minima.d3.get_str() << "), units "
              << t.units.count << (t.in_fp ? ", j in F_p" : ", conjugate pair") << "\n";
  }
  emit(rep, as_json);
  return kOk;
}

int cmd_verify(const std::string& p_str, bool theorem1, const std::string& dominance_bound,
               bool properties, bool as_json) {
  Timer timer;
  RunReport rep;
  rep.command = "verify";
  Int p = require_prime(parse_int_arg(p_str, "p"));
  rep.input_digest = content_digest(p.get_str());
  if (!theorem1 && dominance_bound.empty() && !properties)
    throw Error("bad-input", "select at least one of --theorem1/--dominance/--properties");
  TypeSet ts = enumerate_types(p);
  bool all_ok = true;

  if (properties) {
    json checks = json::array();
    auto record = [&](const std::string& name, bool ok, const std::string& witness = "") {
      checks.push_back(json{{"name", name}, {"pass", ok}, {"witness", witness}});
      std::cout << (ok ? "pass" : "FAIL") << "  " << name
                << (witness.empty() || ok ? "" : "  [" + witness + "]") << "\n";
      all_ok = all_ok && ok;
    };
    bool det_ok = true, eq8_ok = true, theta_ok = true, span_ok = true;
    std::string wit_det, wit_eq8, wit_theta, wit_span;
    for (size_t i = 0; i < ts.types.size(); ++i) {
      const auto& t = ts.types[i];
      if (t.gross.det_gram() != 32 * p * p) {
        det_ok = false;
        wit_det = "type " + std::to_string(i);
      }
      Int prod = t.minima.d1 * t.minima.d2 * t.minima.d3;
      if (!(4 * p * p <= prod && prod < 8 * p * p)) {
        eq8_ok = false;
        wit_eq8 = "type " + std::to_string(i);
      }
      for (long k = 1; k <= t.theta.bound; ++k) {
        long sum = 0;
        for (long c = 1; c * c <= k; ++c)
          if (k % (c * c) == 0) sum += t.theta.th_opt(k / (c * c));
        if (t.theta.th(k) != sum) {
          theta_ok = false;
          wit_theta = "type " + std::to_string(i) + ", k = " + std::to_string(k);
          break;
        }
      }
      TernaryLattice span = TernaryLattice::from_generators(
          t.order.algebra(), {t.minima.x, t.minima.y, t.minima.z});
      if (!(span == t.gross.lattice())) {
        span_ok = false;
        wit_span = "type " + std::to_string(i);
      }
    }
    record("det(Gram) = 32 p^2 for every type", det_ok, wit_det);
    record("4p^2 <= D1 D2 D3 < 8p^2 for every type", eq8_ok, wit_eq8);
    record("theta(k) = sum over c^2 | k of theta'(k/c^2)", theta_ok, wit_theta);
    record("<x, y, z> spans the Gross lattice", span_ok, wit_span);
    record("mass = (p-1)/24", ts.mass == make_rat(p - 1, 24), rat_to_string(ts.mass));
    rep.outputs["properties"] = checks;
  }

  if (theorem1) {
    Theorem1Report t1 = verify_theorem1(ts);  // throws counterexample-found on failure
    rep.outputs["theorem1"] = json{{"pairs", t1.pairs.size()},
                                   {"vacuous", t1.vacuous_count},
                                   {"counterexample", t1.counterexample}};
    std::cout << "pass  theorem-1 hypothesis check over " << t1.pairs.size()
              << " ordered pairs (" << t1.vacuous_count << " vacuous)\n";
  }

  if (!dominance_bound.empty()) {
    long bound = to_long(parse_int_arg(dominance_bound, "dominance bound"));
    DominanceReport dr = dominance_poset(ts, bound);
    json rel = json::array();
    for (const auto& [i, k] : dr.relation) rel.push_back(json::array({i, k}));
    rep.outputs["dominance"] =
        json{{"bound", bound}, {"relation", rel}, {"antisymmetric", dr.antisymmetric}};
    std::cout << (dr.antisymmetric ? "pass" : "note") << "  dominance relation up to " << bound
              << ": " << dr.relation.size() << " ordered dominations, "
              << (dr.antisymmetric ? "antisymmetric (partial order)" : "pre-order only") << "\n";
  }

  rep.timing_ms = timer.ms();
  emit(rep, as_json);
  return all_ok ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximal orders of B_p, Gross lattices and supersingular j-invariants"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string cache_dir = default_cache_dir();
  app.add_flag("--json", as_json, "emit a machine-readable run report on stdout");
  app.add_option("--cache-dir", cache_dir,
                 "directory for cached class polynomials (default: $QUATORDER_CACHE_DIR)");

  std::string order_path, p_str, d_str, cap_str, out_path, dominance_bound;
  bool show_trace = false, restrict_fp = false, oracle_check = false;
  bool theorem1 = false, properties = false;
  int jobs = 1;

  auto* jinv = app.add_subcommand("jinv", "minimal polynomial of j(O) for an order file");
  jinv->add_option("order", order_path, "order JSON file")->required();
  jinv->add_flag("--trace", show_trace, "print the per-step log");
  jinv->add_option("--cap", cap_str, "norm cap for y_n (default 6p)");

  auto* match = app.add_subcommand("match-all", "match all types with their j-invariants");
  match->add_option("-p", p_str, "prime")->required();
  match->add_flag("--restrict-fp", restrict_fp, "only types with j(O) in F_p");
  match->add_flag("--oracle-check", oracle_check, "cross-check against the supersingular scan");
  match->add_option("--jobs", jobs, "worker threads");
  match->add_option("-o,--output", out_path, "write the pair list as JSON");

  auto* hilb = app.add_subcommand("hilbert", "Hilbert class polynomial H_{-D}");
  hilb->add_option("-D", d_str, "positive discriminant value")->required();
  hilb->add_option("-p", p_str, "reduce modulo this prime");

  auto* orac = app.add_subcommand("oracle", "supersingular j-invariants by exhaustive scan");
  orac->add_option("-p", p_str, "prime")->required();
  orac->add_option("--jobs", jobs, "worker threads");

  auto* info = app.add_subcommand("order-info", "parse and describe an order file");
  info->add_option("order", order_path, "order JSON file")->required();

  auto* types = app.add_subcommand("types", "enumerate the maximal order types of B_p");
  types->add_option("-p", p_str, "prime")->required();

  auto* verify = app.add_subcommand("verify", "property suites over all types of B_p");
  verify->add_option("-p", p_str, "prime")->required();
  verify->add_flag("--theorem1", theorem1, "distinct-type hypothesis check");
  verify->add_option("--dominance", dominance_bound, "dominance poset up to this bound");
  verify->add_flag("--properties", properties, "lattice invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*jinv) return cmd_jinv(order_path, show_trace, cap_str, cache_dir, as_json);
    if (*match)
      return cmd_match_all(p_str, restrict_fp, oracle_check, jobs, out_path, cache_dir, as_json);
    if (*hilb) return cmd_hilbert(d_str, p_str, cache_dir, as_json);
    if (*orac) return cmd_oracle(p_str, jobs, as_json);
    if (*info) return cmd_order_info(order_path, as_json);
    if (*types) return cmd_types(p_str, as_json);
    if (*verify) return cmd_verify(p_str, theorem1, dominance_bound, properties, as_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInputError;
}
