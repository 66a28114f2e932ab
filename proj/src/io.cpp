#include "lattice_flows/io.hpp"

#include <json.hpp>

#include <set>

namespace lattice_flows::io {

namespace {

using nlohmann::json;

Complex entry(const json& x) {
  if (x.is_number()) return {x.get<double>(), 0.0};
  if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())
    return {x[0].get<double>(), x[1].get<double>()};
  throw ParseError("state entries must be numbers or [re, im] pairs");
}

Vec group(const json& doc, const char* key) {
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
  Vec out(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) out(static_cast<Index>(i)) = entry(arr[i]);
  return out;
}

json encode(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json encode(const Vec& x) {
  json arr = json::array();
  for (Index i = 0; i < x.size(); ++i) arr.push_back(encode(x(i)));
  return arr;
}

}  // namespace

State state_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("state JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("state JSON must be an object");
  std::set<std::string> keys;
  for (const auto& [k, _] : doc.items()) keys.insert(k);

  if (keys == std::set<std::string>{"q", "p"}) return State::qp(group(doc, "q"), group(doc, "p"));
  if (keys == std::set<std::string>{"a", "b"}) return State::ab(group(doc, "a"), group(doc, "b"));
  if (keys == std::set<std::string>{"u"}) return State::volterra_u(group(doc, "u"));
  if (keys == std::set<std::string>{"v"}) return State::volterra_v(group(doc, "v"));
  if (keys == std::set<std::string>{"c"}) return State::c_vars(group(doc, "c"));
  throw ParseError("state JSON needs keys q/p, a/b, u, v or c");
}

std::string state_to_json(const State& s) {
  json doc;
  switch (s.chart()) {
    case Chart::qp:
      doc["q"] = encode(Vec(s.head()));
      doc["p"] = encode(Vec(s.tail()));
      break;
    case Chart::flaschka_ab:
      doc["a"] = encode(Vec(s.head()));
      doc["b"] = encode(Vec(s.tail()));
      break;
    case Chart::volterra_u: doc["u"] = encode(s.coords()); break;
    case Chart::volterra_v: doc["v"] = encode(s.coords()); break;
    case Chart::c_vars: doc["c"] = encode(s.coords()); break;
  }
  return doc.dump();
}

std::string matrix_to_json(const Mat& M) {
  json rows = json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < M.cols(); ++j) row.push_back(json::array({M(i, j).real(), M(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

}  // namespace lattice_flows::io
