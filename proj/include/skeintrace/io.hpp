#pragma once

#include "skeintrace/cyclotomic.hpp"
#include "skeintrace/graph.hpp"
#include "skeintrace/hopf.hpp"
#include "skeintrace/rational.hpp"
#include "skeintrace/rep.hpp"

#include "json.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

namespace skeintrace {

using json = nlohmann::ordered_json;

// Malformed input; `where` is the offending field path or a line:column.
struct ParseError : std::runtime_error {
  std::string where;
  ParseError(std::string w, const std::string& what) : std::runtime_error(w + ": " + what), where(std::move(w)) {}
};

struct FieldSpec {
  bool cyclotomic = false;
  int order = 1;
};

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line:column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "syntax error");
  }
}

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline std::size_t index_at(const json& j, const std::string& path, std::size_t bound) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(path, "expected a non-negative integer index");
  const auto v = j.get<std::size_t>();
  if (v >= bound) throw ParseError(path, "index " + std::to_string(v) + " out of range (dim " + std::to_string(bound) + ")");
  return v;
}

template <class K>
K scalar_at(const json& j, const std::string& path, const FieldSpec& f) {
  std::string s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else if (j.is_number_integer()) {
    s = std::to_string(j.get<long long>());
  } else {
    throw ParseError(path, "expected a scalar string or integer");
  }
  try {
    if constexpr (std::is_same_v<K, Cyclotomic>) {
      return Cyclotomic::parse(s, f.order);
    } else {
      if (s.find('z') != std::string::npos) throw std::invalid_argument("symbol z in a rational field");
      return K(Rational::parse(s));
    }
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

template <class K>
Vec<K> vector_at(const json& j, const std::string& path, std::size_t n, const FieldSpec& f) {
  if (!j.is_array() || j.size() != n) throw ParseError(path, "expected an array of " + std::to_string(n) + " scalars");
  Vec<K> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scalar_at<K>(j[i], path + "[" + std::to_string(i) + "]", f);
  return v;
}

// Rows [i_0, ..., i_{k-1}, scalar]; calls put(indices, value). Rejects
// repeated index tuples.
template <class K, class Put>
void sparse_entries(const json& j, const std::string& path, std::size_t arity, std::size_t bound, const FieldSpec& f,
                    Put put) {
  if (!j.is_array()) throw ParseError(path, "expected an array of entries");
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string p = path + "[" + std::to_string(r) + "]";
    const auto& e = j[r];
    if (!e.is_array() || e.size() != arity + 1) {
      throw ParseError(p, "expected " + std::to_string(arity) + " indices and a scalar");
    }
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < arity; ++a) idx.push_back(index_at(e[a], p + "[" + std::to_string(a) + "]", bound));
    auto [it, fresh] = seen.emplace(idx, r);
    if (!fresh) throw ParseError(p, "duplicate entry (first at " + path + "[" + std::to_string(it->second) + "])");
    put(idx, scalar_at<K>(e[arity], p + "[" + std::to_string(arity) + "]", f));
  }
}

}  // namespace detail

inline FieldSpec read_field(const json& root) {
  const auto& f = detail::field(root, "field", "");
  const auto& kind = detail::field(f, "kind", "field");
  if (!kind.is_string()) throw ParseError("field.kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "rational") return {};
  if (k != "cyclotomic") throw ParseError("field.kind", "unknown field kind '" + k + "'");
  const auto& o = detail::field(f, "order", "field");
  if (!o.is_number_integer() || o.get<long long>() < 1) throw ParseError("field.order", "expected a positive integer");
  return {true, o.get<int>()};
}

template <class K>
HopfAlgebra<K> load_hopf(const json& root) {
  using detail::field;
  const auto fs = read_field(root);
  if constexpr (!std::is_same_v<K, Cyclotomic>) {
    if (fs.cyclotomic && fs.order > 1) throw ParseError("field", "cyclotomic input needs the cyclotomic scalar type");
  }
  const auto& name = field(root, "name", "");
  if (!name.is_string()) throw ParseError("name", "expected a string");
  const auto& dimj = field(root, "dim", "");
  if (!dimj.is_number_integer() || dimj.get<long long>() < 1) throw ParseError("dim", "expected a positive integer");
  const auto n = dimj.get<std::size_t>();
  HopfAlgebra<K> H(name.get<std::string>(), n, fs.order);
  if (root.contains("basis")) {
    const auto& b = root["basis"];
    if (!b.is_array() || b.size() != n) throw ParseError("basis", "expected " + std::to_string(n) + " labels");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      if (!b[i].is_string()) throw ParseError("basis[" + std::to_string(i) + "]", "expected a string");
      labels.push_back(b[i].get<std::string>());
    }
    H.set_labels(std::move(labels));
  }
  H.set_unit(detail::vector_at<K>(field(root, "unit", ""), "unit", n, fs));
  H.set_counit(detail::vector_at<K>(field(root, "counit", ""), "counit", n, fs));
  detail::sparse_entries<K>(field(root, "mult", ""), "mult", 3, n, fs,
                            [&](const auto& i, const K& c) { H.add_mult(i[0], i[1], i[2], c); });
  detail::sparse_entries<K>(field(root, "comult", ""), "comult", 3, n, fs,
                            [&](const auto& i, const K& c) { H.add_comult(i[0], i[1], i[2], c); });
  Matrix<K> S(n, n);
  detail::sparse_entries<K>(field(root, "antipode", ""), "antipode", 2, n, fs,
                            [&](const auto& i, const K& c) { S(i[0], i[1]) = c; });
  H.set_antipode(std::move(S));
  if (root.contains("rmatrix")) {
    Vec<K> R(n * n);
    detail::sparse_entries<K>(root["rmatrix"], "rmatrix", 2, n, fs,
                              [&](const auto& i, const K& c) { R[i[0] * n + i[1]] = c; });
    H.set_rmatrix(std::move(R));
  }
  if (root.contains("ribbon")) H.set_ribbon_hint(detail::vector_at<K>(root["ribbon"], "ribbon", n, fs));
  return H;
}

// Canonical dump: sparse entries in index order, scalars normalized.
template <class K>
json hopf_to_json(const HopfAlgebra<K>& H) {
  const std::size_t n = H.dim();
  json j;
  j["name"] = H.name();
  j["field"] = H.field_order() > 1 ? json{{"kind", "cyclotomic"}, {"order", H.field_order()}} : json{{"kind", "rational"}};
  j["dim"] = n;
  j["basis"] = H.labels();
  auto vec = [](const Vec<K>& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(c.str());
    return a;
  };
  j["unit"] = vec(H.unit());
  j["counit"] = vec(H.counit());
  json m = json::array(), d = json::array(), s = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (const auto& [k, c] : H.mult_terms(a, b)) m.push_back({a, b, k, c.str()});
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    auto terms = H.comult_terms(k);
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [ij, c] : terms) d.push_back({k, ij / n, ij % n, c.str()});
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!H.antipode()(a, b).is_zero()) s.push_back({a, b, H.antipode()(a, b).str()});
    }
  }
  j["mult"] = std::move(m);
  j["comult"] = std::move(d);
  j["antipode"] = std::move(s);
  if (H.rmatrix()) {
    json r = json::array();
    for (std::size_t I = 0; I < n * n; ++I) {
      if (!(*H.rmatrix())[I].is_zero()) r.push_back({I / n, I % n, (*H.rmatrix())[I].str()});
    }
    j["rmatrix"] = std::move(r);
  }
  if (H.ribbon_hint()) j["ribbon"] = vec(*H.ribbon_hint());
  return j;
}

inline RibbonGraph load_surface(const json& root) {
  using detail::field;
  auto names = [](const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of slot names");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_string()) throw ParseError(path + "[" + std::to_string(i) + "]", "expected a slot name");
      out.push_back(j[i].get<std::string>());
    }
    return out;
  };
  RibbonGraph G;
  const auto& vs = field(root, "vertices", "");
  if (!vs.is_array()) throw ParseError("vertices", "expected an array of vertices");
  for (std::size_t v = 0; v < vs.size(); ++v) G.vertices.push_back(names(vs[v], "vertices[" + std::to_string(v) + "]"));
  const auto& ps = field(root, "pairs", "");
  if (!ps.is_array()) throw ParseError("pairs", "expected an array of pairs");
  for (std::size_t p = 0; p < ps.size(); ++p) {
    const auto two = names(ps[p], "pairs[" + std::to_string(p) + "]");
    if (two.size() != 2) throw ParseError("pairs[" + std::to_string(p) + "]", "expected two slot names");
    G.pairs.emplace_back(two[0], two[1]);
  }
  G.marked = names(field(root, "marked", ""), "marked");
  graph_signature(G);  // validates
  return G;
}

inline json surface_to_json(const RibbonGraph& G) {
  json j;
  j["vertices"] = G.vertices;
  json p = json::array();
  for (const auto& [a, b] : G.pairs) p.push_back({a, b});
  j["pairs"] = std::move(p);
  j["marked"] = G.marked;
  return j;
}

// Module file: { parent, dim, action: [[b, i, j, scalar]...] } with
// rho(b_b)(i, j) listed sparsely.
template <class K>
Module<K> load_module(const json& root, const HopfAlgebra<K>& H) {
  using detail::field;
  const auto& parent = field(root, "parent", "");
  if (!parent.is_string() || parent.get<std::string>() != H.name()) {
    throw ParseError("parent", "module parent does not match '" + H.name() + "'");
  }
  const auto& dimj = field(root, "dim", "");
  if (!dimj.is_number_integer() || dimj.get<long long>() < 0) throw ParseError("dim", "expected a non-negative integer");
  const auto d = dimj.get<std::size_t>();
  std::vector<Matrix<K>> act(H.dim(), Matrix<K>(d, d));
  const FieldSpec fs{H.field_order() > 1, H.field_order()};
  const auto& a = field(root, "action", "");
  if (!a.is_array()) throw ParseError("action", "expected an array of entries");
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> seen;
  for (std::size_t r = 0; r < a.size(); ++r) {
    const std::string p = "action[" + std::to_string(r) + "]";
    const auto& e = a[r];
    if (!e.is_array() || e.size() != 4) throw ParseError(p, "expected [basis, row, column, scalar]");
    const auto b = detail::index_at(e[0], p + "[0]", H.dim());
    const auto i = detail::index_at(e[1], p + "[1]", d);
    const auto j = detail::index_at(e[2], p + "[2]", d);
    auto [it, fresh] = seen.emplace(std::make_tuple(b, i, j), r);
    if (!fresh) throw ParseError(p, "duplicate entry (first at action[" + std::to_string(it->second) + "])");
    act[b](i, j) = detail::scalar_at<K>(e[3], p + "[3]", fs);
  }
  return make_module(H, std::move(act));
}

}  // namespace skeintrace
