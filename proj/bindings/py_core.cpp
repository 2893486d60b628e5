#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdlib>

#include "quatorder/algorithms.hpp"
#include "quatorder/numth.hpp"
#include "quatorder/oracle.hpp"
#include "quatorder/orderfile.hpp"

namespace py = pybind11;
using namespace quatorder;

namespace {

py::object to_pyint(const Int& v) {
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const Rat& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_pyint(r.get_num()), to_pyint(r.get_den()));
}

Int int_from(py::handle obj) {
  return Int(py::str(obj).cast<std::string>());
}

py::list poly_desc(const FpPoly& f) {
  py::list out;
  for (size_t i = f.coeffs().size(); i-- > 0;) out.append(f.coeff(i));
  return out;
}

py::dict outcome_dict(const JOutcome& o) {
  py::dict d;
  d["kind"] = o.kind == JOutcome::Kind::root ? "root" : "pair";
  d["minpoly"] = poly_desc(o.minpoly);
  d["text"] = o.minpoly.str();
  if (o.kind == JOutcome::Kind::root) d["root"] = o.root;
  return d;
}

HilbertCache& cache() {
  static HilbertCache c(std::getenv("QUATORDER_CACHE_DIR") ? std::getenv("QUATORDER_CACHE_DIR")
                                                           : "");
  return c;
}

py::dict minima_dict(const MinimaTriple& m) {
  py::dict d;
  d["d1"] = to_pyint(m.d1);
  d["d2"] = to_pyint(m.d2);
  d["d3"] = to_pyint(m.d3);
  d["mu"] = to_fraction(m.mu);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "maximal orders of B_p, Gross lattices and supersingular j-invariants";

  m.def(
      "hilbert",
      [](py::object D, py::object p) {
        const ClassPoly& h = cache().get(int_from(D));
        py::list out;
        if (p.is_none()) {
          for (size_t i = h.coeffs.size(); i-- > 0;) out.append(to_pyint(h.coeffs[i]));
        } else {
          Int pp = int_from(p);
          FpPoly r = reduce_mod_p(h, static_cast<uint64_t>(pp.get_ui()));
          return py::object(poly_desc(r));
        }
        return py::object(out);
      },
      py::arg("D"), py::arg("p") = py::none(),
      "coefficients of H_{-D}, degree-descending; reduced mod p when p is given");

  m.def("class_number", [](py::object D) {
    return reduced_forms(Discriminant::parse(int_from(D))).size();
  });

  m.def("reduced_forms", [](py::object D) {
    py::list out;
    for (const auto& f : reduced_forms(Discriminant::parse(int_from(D))))
      out.append(py::make_tuple(to_pyint(f.a), to_pyint(f.b), to_pyint(f.c)));
    return out;
  });

  m.def("hurwitz", [](py::object n) { return to_fraction(hurwitz_class_number(int_from(n))); });

  m.def("hilbert_symbol", [](py::object a, py::object b, py::object ell) {
    Place place = py::isinstance<py::str>(ell) ? Place::at_infinity()
                                               : Place::finite(int_from(ell));
    return hilbert_symbol(int_from(a), int_from(b), place);
  });

  m.def("ramified_places", [](py::object a, py::object b) {
    py::list out;
    for (const auto& pl : ramified_places(QuatAlgebra::definite(int_from(a), int_from(b))))
      out.append(pl.str());
    return out;
  });

  m.def(
      "order_info",
      [](const std::string& json_text) {
        Order o = parse_order_json(json_text);
        GrossLattice g = gross_lattice(o);
        auto mm = successive_minima(g);
        UnitGroup ug = unit_group_order(o);
        py::dict d;
        d["p"] = to_pyint(o.algebra().require_p());
        d["disc"] = to_pyint(o.disc());
        d["maximal"] = o.is_maximal();
        d["det_gram"] = to_pyint(g.det_gram());
        d["minima"] = minima_dict(mm);
        d["unit_count"] = ug.count;
        d["has_sqrt_minus_p"] = o.is_maximal() ? has_sqrt_minus_p(o) : false;
        d["canonical"] = order_to_json(o);
        return d;
      },
      py::arg("order_json"));

  m.def(
      "jinv",
      [](const std::string& json_text, py::object cap) {
        Order o = parse_order_json(json_text);
        Alg1Options opt;
        if (!cap.is_none()) opt.norm_cap = int_from(cap);
        Alg1Result res = algorithm1(o, cache(), opt);
        py::dict d;
        d["decided"] = res.decided;
        if (res.decided) d["outcome"] = outcome_dict(*res.outcome);
        else d["reason"] = res.undecided_reason;
        py::list steps;
        for (const auto& s : res.trace) {
          py::dict st;
          st["n"] = s.n;
          st["y"] = s.y;
          st["d"] = to_pyint(s.d);
          st["eps"] = s.eps;
          st["k"] = s.k;
          st["deg_g"] = s.deg_g;
          st["g"] = poly_desc(s.g);
          steps.append(st);
        }
        d["trace"] = steps;
        return d;
      },
      py::arg("order_json"), py::arg("cap") = py::none());

  m.def(
      "match_all",
      [](long p, bool restrict_fp, int jobs, bool oracle_check) {
        MatchResult mr = algorithm2(p, restrict_fp, cache(), jobs);
        py::dict d;
        py::list pairs;
        for (const auto& e : mr.pairs) {
          py::dict entry;
          entry["type_index"] = e.type_index;
          entry["outcome"] = outcome_dict(e.outcome);
          entry["order"] = order_to_json(mr.types.types[e.type_index].order);
          pairs.append(entry);
        }
        d["pairs"] = pairs;
        d["type_count"] = mr.types.types.size();
        d["mass"] = to_fraction(mr.types.mass);
        d["leftover"] = mr.leftover;
        if (oracle_check && mr.leftover.empty()) {
          auto oracle = supersingular_set(static_cast<uint64_t>(p), jobs);
          d["oracle_match"] = restrict_fp
                                  ? mr.pairs.size() == oracle.roots_in_fp.size()
                                  : mr.product_of_minpolys() == oracle.polynomial;
        }
        return d;
      },
      py::arg("p"), py::arg("restrict_fp") = false, py::arg("jobs") = 1,
      py::arg("oracle_check") = false);

  m.def(
      "supersingular",
      [](long p, int jobs) {
        auto s = supersingular_set(static_cast<uint64_t>(p), jobs);
        py::dict d;
        d["roots_in_fp"] = s.roots_in_fp;
        py::list pairs;
        for (const auto& [b, c] : s.pairs) pairs.append(py::make_tuple(b, c));
        d["pairs"] = pairs;
        d["polynomial"] = poly_desc(s.polynomial);
        return d;
      },
      py::arg("p"), py::arg("jobs") = 1);

  m.def("is_supersingular",
        [](uint64_t a, uint64_t b, uint64_t p) { return is_supersingular_j({a, b}, p); },
        py::arg("a"), py::arg("b"), py::arg("p"),
        "whether j = a + b*s is supersingular over F_{p^2}");

  m.def(
      "types",
      [](long p) {
        TypeSet ts = enumerate_types(p);
        py::dict d;
        d["p"] = p;
        d["mass"] = to_fraction(ts.mass);
        py::list out;
        for (const auto& t : ts.types) {
          py::dict entry;
          entry["minima"] = minima_dict(t.minima);
          entry["units"] = t.units.count;
          entry["in_fp"] = t.in_fp;
          entry["order"] = order_to_json(t.order);
          out.append(entry);
        }
        d["types"] = out;
        return d;
      },
      py::arg("p"));

  m.def(
      "verify_theorem1",
      [](long p) {
        Theorem1Report rep = verify_theorem1(Int(p));
        py::dict d;
        d["pairs"] = rep.pairs.size();
        d["vacuous"] = rep.vacuous_count;
        d["counterexample"] = rep.counterexample;
        return d;
      },
      py::arg("p"));

  m.def(
      "dominance",
      [](long p, long bound) {
        DominanceReport rep = dominance_poset(Int(p), bound);
        py::dict d;
        d["bound"] = rep.bound;
        d["relation"] = rep.relation;
        d["antisymmetric"] = rep.antisymmetric;
        return d;
      },
      py::arg("p"), py::arg("bound"));

  static py::exception<Error> exc(m, "QuatOrderError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, e.what());
    }
  });
}
