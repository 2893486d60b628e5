#pragma once

#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "quatorder/fppoly.hpp"
#include "quatorder/rational.hpp"

namespace quatorder {

// positive D with -D = 0 or 1 (mod 4), i.e. D = 0 or 3 (mod 4)
struct Discriminant {
  Int d;
  static Discriminant parse(Int d);
};

// primitive reduced binary quadratic form of discriminant -D
struct ReducedForm {
  Int a, b, c;
  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

// one form per ideal class; |result| = h(-D)
std::vector<ReducedForm> reduced_forms(const Discriminant& d);

// monic H_{-D}(X) in Z[X]; coefficients ascending
struct ClassPoly {
  Int d;
  std::vector<Int> coeffs;
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  std::string str(const std::string& var = "X") const;
};

ClassPoly hilbert_class_poly(const Discriminant& d);

FpPoly reduce_mod_p(const ClassPoly& h, uint64_t p);

// Hurwitz class number H(n) for n = 0, 3 (mod 4), n > 0
Rat hurwitz_class_number(const Int& n);

// Memoizing provider for H_{-D}; one computation per key, shared across
// threads. With a cache_dir, integral polynomials are persisted as
//   "<dir>/H_<D>.txt":  "D h"  header then coefficients, degree-descending.
class HilbertCache {
 public:
  explicit HilbertCache(std::string cache_dir = "");
  const ClassPoly& get(const Int& d);
  std::string dir() const { return dir_; }

 private:
  std::shared_ptr<ClassPoly> load_from_disk(const Int& d);
  void store_to_disk(const ClassPoly& h);
  std::string dir_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::set<Int> inflight_;
  std::map<Int, std::shared_ptr<ClassPoly>> done_;
};

}  // namespace quatorder
