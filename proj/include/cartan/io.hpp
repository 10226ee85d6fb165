#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cartan/castles.hpp"
#include "cartan/comparison.hpp"
#include "cartan/semigroup.hpp"
#include "cartan/witness.hpp"

// JSON forms of systems, elements, witnesses, castles and maps. Group
// elements and points are referred to by label; scalars are exact literals.
namespace cartan::io {

using json = nlohmann::ordered_json;

inline std::string label_of(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(where + ": expected a label");
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// --- systems ---------------------------------------------------------------

/// {"group": {"elements": [...], "table": [[...]]}, "points": [...], "action": [[...]]}
inline SystemSpec system_spec_from_json(const json& j) {
  SystemSpec s;
  const json& group = field(j, "group", "system");
  const json& elements = field(group, "elements", "group");
  if (!elements.is_array()) throw ParseError("group.elements: expected an array");
  for (std::size_t a = 0; a < elements.size(); ++a)
    s.group_labels.push_back(label_of(elements[a], "group.elements[" + std::to_string(a) + "]"));
  auto element_index = [&](const json& v, const std::string& where) {
    auto l = label_of(v, where);
    for (std::size_t a = 0; a < s.group_labels.size(); ++a)
      if (s.group_labels[a] == l) return a;
    throw ParseError(where + ": unknown group element '" + l + "'");
  };
  const json& table = field(group, "table", "group");
  if (!table.is_array() || table.size() != elements.size())
    throw ParseError("group.table: expected " + std::to_string(elements.size()) + " rows");
  for (std::size_t a = 0; a < table.size(); ++a) {
    const std::string row = "group.table[" + std::to_string(a) + "]";
    if (!table[a].is_array() || table[a].size() != elements.size())
      throw ParseError(row + ": expected " + std::to_string(elements.size()) + " entries");
    std::vector<std::size_t> r;
    for (std::size_t b = 0; b < table[a].size(); ++b) r.push_back(element_index(table[a][b], row + "[" + std::to_string(b) + "]"));
    s.table.push_back(std::move(r));
  }
  const json& points = field(j, "points", "system");
  if (!points.is_array()) throw ParseError("points: expected an array");
  for (std::size_t x = 0; x < points.size(); ++x) s.point_labels.push_back(label_of(points[x], "points[" + std::to_string(x) + "]"));
  const json& action = field(j, "action", "system");
  if (!action.is_array() || action.size() != elements.size())
    throw ParseError("action: expected " + std::to_string(elements.size()) + " rows");
  for (std::size_t g = 0; g < action.size(); ++g) {
    const std::string row = "action[" + std::to_string(g) + "]";
    if (!action[g].is_array() || action[g].size() != points.size())
      throw ParseError(row + ": expected " + std::to_string(points.size()) + " entries");
    std::vector<std::size_t> r;
    for (std::size_t x = 0; x < action[g].size(); ++x) {
      auto l = label_of(action[g][x], row + "[" + std::to_string(x) + "]");
      auto it = std::find(s.point_labels.begin(), s.point_labels.end(), l);
      if (it == s.point_labels.end()) throw ParseError(row + "[" + std::to_string(x) + "]: unknown point '" + l + "'");
      r.push_back(static_cast<std::size_t>(it - s.point_labels.begin()));
    }
    s.action.push_back(std::move(r));
  }
  return s;
}

inline json system_to_json(const DynSystem& sys) {
  json j;
  j["group"]["elements"] = sys.group().labels();
  json table = json::array();
  for (std::size_t a = 0; a < sys.group_order(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < sys.group_order(); ++b) row.push_back(sys.group().label(sys.group().mul(a, b)));
    table.push_back(row);
  }
  j["group"]["table"] = table;
  j["points"] = sys.point_labels();
  json action = json::array();
  for (std::size_t g = 0; g < sys.group_order(); ++g) {
    json row = json::array();
    for (std::size_t x = 0; x < sys.num_points(); ++x) row.push_back(sys.point_label(sys.act(g, x)));
    action.push_back(row);
  }
  j["action"] = action;
  return j;
}

inline SystemRef load_system(const std::string& path) { return make_system(system_spec_from_json(read_json_file(path))); }

// --- labels and sets -------------------------------------------------------

inline std::size_t point_index(const DynSystem& sys, const std::string& l, const std::string& where) {
  if (auto p = sys.find_point(l)) return *p;
  throw ParseError(where + ": unknown point '" + l + "'");
}

inline std::size_t element_index(const DynSystem& sys, const std::string& l, const std::string& where) {
  if (auto g = sys.group().find(l)) return *g;
  throw ParseError(where + ": unknown group element '" + l + "'");
}

inline PointSet set_from_json(const DynSystem& sys, const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of point labels");
  PointSet s;
  for (std::size_t k = 0; k < j.size(); ++k) s.insert(point_index(sys, label_of(j[k], where), where + "[" + std::to_string(k) + "]"));
  return s;
}

inline json set_to_json(const DynSystem& sys, PointSet s) {
  json j = json::array();
  for (auto x : s.points()) j.push_back(sys.point_label(x));
  return j;
}

/// "0,2" -> {0, 2} by point label; empty text is the empty set.
inline PointSet set_from_labels(const DynSystem& sys, const std::string& text, const std::string& where) {
  PointSet s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(' ');
    auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    s.insert(point_index(sys, item.substr(b, e - b + 1), where));
  }
  return s;
}

// --- scalars and functions -------------------------------------------------

inline RadScalar scalar_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return RadScalar(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_scalar(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected an exact scalar literal");
}

/// "chi:0,2", or an array with one scalar per point.
inline Func func_from_json(const DynSystem& sys, const json& j, const std::string& where) {
  if (j.is_string()) {
    auto text = j.get<std::string>();
    if (text.rfind("chi:", 0) != 0) throw ParseError(where + ": function shorthand must start with 'chi:'");
    return Func::indicator(sys.num_points(), set_from_labels(sys, text.substr(4), where));
  }
  if (!j.is_array() || j.size() != sys.num_points())
    throw ParseError(where + ": expected " + std::to_string(sys.num_points()) + " scalars");
  Func f(sys.num_points());
  for (std::size_t x = 0; x < j.size(); ++x) f[x] = scalar_from_json(j[x], where + "[" + std::to_string(x) + "]");
  return f;
}

inline json func_to_json(const Func& f) {
  json j = json::array();
  for (const auto& v : f.values()) j.push_back(v.str());
  return j;
}

// --- crossed-product elements ----------------------------------------------

/// "unit", "u:<g>", "chi:<points>", or {"terms": [{"g": <g>, "f": <func>}]}.
inline CrossedElement element_from_json(const SystemRef& sys, const json& j, const std::string& where) {
  if (j.is_string()) {
    auto text = j.get<std::string>();
    if (text == "unit") return CrossedElement::unit(sys);
    if (text.rfind("u:", 0) == 0) return CrossedElement::u(sys, element_index(*sys, text.substr(2), where));
    return CrossedElement::diagonal(sys, func_from_json(*sys, j, where));
  }
  const json& terms = field(j, "terms", where);
  if (!terms.is_array()) throw ParseError(where + ".terms: expected an array");
  CrossedElement a = CrossedElement::zero(sys);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string w = where + ".terms[" + std::to_string(k) + "]";
    auto g = element_index(*sys, label_of(field(terms[k], "g", w), w + ".g"), w + ".g");
    a = a + CrossedElement::term(sys, func_from_json(*sys, field(terms[k], "f", w), w + ".f"), g);
  }
  return a;
}

inline json element_to_json(const CrossedElement& a) {
  json terms = json::array();
  for (std::size_t g = 0; g < a.sys().group_order(); ++g)
    if (!a.coeff(g).is_zero()) terms.push_back({{"g", a.sys().group().label(g)}, {"f", func_to_json(a.coeff(g))}});
  return {{"terms", terms}};
}

/// {"n": N, "entries": [[element, ...], ...]}
inline MatrixElement matrix_from_json(const SystemRef& sys, const json& j, const std::string& where) {
  const json& entries = field(j, "entries", where);
  const std::size_t n = entries.size();
  MatrixElement m(sys, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!entries[i].is_array() || entries[i].size() != n) throw ParseError(where + ".entries: expected a square array");
    for (std::size_t k = 0; k < n; ++k)
      m.at(i, k) = element_from_json(sys, entries[i][k], where + ".entries[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

inline json matrix_to_json(const MatrixElement& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(element_to_json(m.at(i, k)));
    rows.push_back(row);
  }
  return {{"n", m.size()}, {"entries", rows}};
}

/// A JSON array of functions, or shorthand entries separated by ';'.
inline DiagTuple tuple_from_spec(const DynSystem& sys, const std::string& spec, const std::string& where) {
  std::vector<Func> entries;
  auto first = spec.find_first_not_of(' ');
  if (first != std::string::npos && (spec[first] == '[' || spec[first] == '{')) {
    json j = parse_json_text(spec, where);
    if (!j.is_array()) throw ParseError(where + ": expected an array of functions");
    for (std::size_t k = 0; k < j.size(); ++k) entries.push_back(func_from_json(sys, j[k], where + "[" + std::to_string(k) + "]"));
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) entries.push_back(func_from_json(sys, json(item), where));
  }
  try {
    return DiagTuple(std::move(entries));
  } catch (const NotPositive& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline json tuple_to_json(const DiagTuple& t) {
  json j = json::array();
  for (const auto& f : t.entries) j.push_back(func_to_json(f));
  return j;
}

// --- witnesses -------------------------------------------------------------

inline json witness_to_json(const DynSystem& sys, const Witness& w) {
  json rows = json::array();
  for (const auto& row : w.rows) {
    json r = json::array();
    for (const auto& p : row) r.push_back({{"U", set_to_json(sys, p.U)}, {"s", sys.group().label(p.s)}, {"k", p.k}});
    rows.push_back(r);
  }
  return {{"rows", rows}};
}

inline Witness witness_from_json(const DynSystem& sys, const json& j, const std::string& where) {
  const json& rows = field(j, "rows", where);
  Witness w;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<WitnessPiece> row;
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      const std::string wk = where + ".rows[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      const json& p = rows[i][k];
      WitnessPiece piece;
      piece.U = set_from_json(sys, field(p, "U", wk), wk + ".U");
      piece.s = element_index(sys, label_of(field(p, "s", wk), wk + ".s"), wk + ".s");
      const json& kk = field(p, "k", wk);
      if (!kk.is_number_unsigned() && !kk.is_number_integer()) throw ParseError(wk + ".k: expected an index");
      piece.k = kk.get<std::size_t>();
      row.push_back(piece);
    }
    w.rows.push_back(std::move(row));
  }
  return w;
}

inline json compiled_to_json(const CompiledWitness& c) {
  json h = json::array();
  for (const auto& row : c.h) {
    json r = json::array();
    for (const auto& f : row) r.push_back(func_to_json(f));
    h.push_back(r);
  }
  json bhat = json::array();
  for (const auto& f : c.bhat) bhat.push_back(func_to_json(f));
  return {{"t", matrix_to_json(c.t)}, {"delta", to_string(c.delta)}, {"epsilon", to_string(c.epsilon)}, {"h", h}, {"bhat", bhat}};
}

// --- castles and maps ------------------------------------------------------

inline json castle_to_json(const DynSystem& sys, const Castle& c) {
  json towers = json::array();
  for (const auto& t : c.towers) {
    json shape = json::array();
    for (auto s : t.S) shape.push_back(sys.group().label(s));
    towers.push_back({{"V", set_to_json(sys, t.V)}, {"S", shape}});
  }
  return {{"towers", towers}};
}

inline std::vector<std::size_t> elements_from_json(const DynSystem& sys, const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of group elements");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(element_index(sys, label_of(j[k], where), where + "[" + std::to_string(k) + "]"));
  return out;
}

inline Castle castle_from_json(const DynSystem& sys, const json& j, const std::string& where) {
  const json& towers = field(j, "towers", where);
  Castle c;
  for (std::size_t t = 0; t < towers.size(); ++t) {
    const std::string wt = where + ".towers[" + std::to_string(t) + "]";
    c.towers.push_back({set_from_json(sys, field(towers[t], "V", wt), wt + ".V"), elements_from_json(sys, field(towers[t], "S", wt), wt + ".S")});
  }
  return c;
}

/// {"n": N, "towers": [{"V": [...], "S": [...], "f": func, "theta": [func x N]}]}
/// where "theta" defaults to all ones.
inline CastleOzmData ozm_data_from_json(const DynSystem& sys, const json& j, const std::string& where) {
  CastleOzmData d;
  const json& n = field(j, "n", where);
  if (!n.is_number_integer()) throw ParseError(where + ".n: expected an integer");
  d.n = n.get<std::size_t>();
  d.castle = castle_from_json(sys, j, where);
  const json& towers = j.at("towers");
  for (std::size_t t = 0; t < towers.size(); ++t) {
    const std::string wt = where + ".towers[" + std::to_string(t) + "]";
    d.weights.push_back(func_from_json(sys, field(towers[t], "f", wt), wt + ".f"));
    std::vector<Func> theta;
    if (towers[t].contains("theta")) {
      const json& th = towers[t].at("theta");
      for (std::size_t i = 0; i < th.size(); ++i) theta.push_back(func_from_json(sys, th[i], wt + ".theta[" + std::to_string(i) + "]"));
    } else {
      theta.assign(d.n, Func::constant(sys.num_points(), RadScalar(1)));
    }
    d.phases.push_back(std::move(theta));
  }
  return d;
}

inline json ozm_data_to_json(const DynSystem& sys, const CastleOzmData& d) {
  json towers = castle_to_json(sys, d.castle)["towers"];
  for (std::size_t t = 0; t < towers.size(); ++t) {
    towers[t]["f"] = func_to_json(d.weights[t]);
    json theta = json::array();
    for (const auto& th : d.phases[t]) theta.push_back(func_to_json(th));
    towers[t]["theta"] = theta;
  }
  return {{"n", d.n}, {"towers", towers}};
}

/// {"n": N, "images": [[element x N] x N]}
inline OrderZeroMap map_from_json(const SystemRef& sys, const json& j, const std::string& where) {
  const json& images = field(j, "images", where);
  const std::size_t n = images.size();
  OrderZeroMap phi(sys, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!images[i].is_array() || images[i].size() != n) throw ParseError(where + ".images: expected a square array");
    for (std::size_t k = 0; k < n; ++k)
      phi(i, k) = element_from_json(sys, images[i][k], where + ".images[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return phi;
}

inline json map_to_json(const OrderZeroMap& phi) {
  json rows = json::array();
  for (std::size_t i = 0; i < phi.n; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < phi.n; ++k) row.push_back(element_to_json(phi(i, k)));
    rows.push_back(row);
  }
  return {{"n", phi.n}, {"images", rows}};
}

// --- reports ---------------------------------------------------------------

/// Shortest decimal form that round-trips through strtod, so reports are
/// byte-stable for equal doubles.
inline std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

/// 64-bit FNV-1a.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json semigroup_to_json(const DynSystem& sys, const TypeSemigroup& W) {
  json classes = json::array();
  for (const auto& c : W.classes) {
    json t = json::array();
    for (auto s : c) t.push_back(set_to_json(sys, s));
    classes.push_back(t);
  }
  json order = json::array();
  for (const auto& row : W.order) {
    std::string r;
    for (bool b : row) r.push_back(b ? '1' : '0');
    order.push_back(r);
  }
  return {{"max_n", W.max_n}, {"classes", classes}, {"order", order}, {"add", W.add}};
}

}  // namespace cartan::io
