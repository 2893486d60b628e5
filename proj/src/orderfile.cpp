#include "quatorder/orderfile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace quatorder {

using nlohmann::json;

Order parse_order_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error("bad-input", std::string("order file is not valid JSON: ") + e.what());
  }
  if (!j.contains("p") || !j.contains("a") || !j.contains("b") || !j.contains("basis"))
    throw Error("bad-input", "order file needs fields p, a, b, basis");
  auto get_int = [&](const char* key) -> Int {
    const auto& v = j.at(key);
    if (v.is_number_integer()) return Int(v.get<long>());
    if (v.is_string()) return Int(v.get<std::string>());
    throw Error("bad-input", std::string("field ") + key + " must be an integer");
  };
  Int p = get_int("p"), a = get_int("a"), b = get_int("b");
  QuatAlgebra alg = QuatAlgebra::bp(p, a, b);
  const auto& basis = j.at("basis");
  if (!basis.is_array() || basis.size() != 4)
    throw Error("bad-input", "basis must be a 4x4 matrix of rational strings");
  std::vector<Quat> bq;
  for (const auto& row : basis) {
    if (!row.is_array() || row.size() != 4)
      throw Error("bad-input", "basis rows must have 4 entries");
    std::array<Rat, 4> c;
    for (size_t k = 0; k < 4; ++k) {
      const auto& e = row[k];
      if (e.is_number_integer())
        c[k] = Rat(e.get<long>());
      else if (e.is_string())
        c[k] = parse_rat(e.get<std::string>());
      else
        throw Error("bad-input", "basis entries must be integers or \"num/den\" strings");
    }
    bq.emplace_back(alg, c[0], c[1], c[2], c[3]);
  }
  return Order::make(alg, bq);
}

Order load_order_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("bad-input", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_order_json(ss.str());
}

std::string order_to_json(const Order& o, int indent) {
  json j;
  j["p"] = o.algebra().require_p().get_str();
  j["a"] = o.algebra().a().get_str();
  j["b"] = o.algebra().b().get_str();
  json rows = json::array();
  for (const auto& q : o.lattice().basis()) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(rat_to_string(q[k]));
    rows.push_back(row);
  }
  j["basis"] = rows;
  return j.dump(indent);
}

std::string content_digest(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace quatorder
