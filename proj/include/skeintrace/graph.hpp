#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skeintrace {

struct InvalidGraph : std::invalid_argument {
  explicit InvalidGraph(const std::string& what) : std::invalid_argument(what) {}
};

// Fattened-graph model of a surface with marked boundary intervals. Each
// vertex is a disk whose boundary carries the listed slots in cyclic order;
// paired slots are glued by strips, marked slots stay on the boundary.
struct RibbonGraph {
  std::vector<std::vector<std::string>> vertices;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> marked;
};

struct Signature {
  int genus = 0;
  int boundaries = 0;
  int components = 0;
  int marked = 0;

  bool operator==(const Signature&) const = default;
};

// Slot bookkeeping derived from a graph.
struct SlotTable {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  std::vector<std::size_t> vertex;       // owning vertex
  std::vector<std::size_t> position;     // position in the vertex's cycle
  std::vector<long> partner;             // -1 for marked slots
  std::vector<long> pair_of;             // pair index, -1 for marked
  std::vector<int> role;                 // 0 first slot of its pair, 1 second
  std::vector<long> marked_index;        // position in the marked list, -1 otherwise
};

inline SlotTable slot_table(const RibbonGraph& G) {
  SlotTable t;
  if (G.vertices.empty()) throw InvalidGraph("graph has no vertices");
  for (std::size_t v = 0; v < G.vertices.size(); ++v) {
    if (G.vertices[v].empty()) throw InvalidGraph("vertex " + std::to_string(v) + " has no slots");
    for (std::size_t p = 0; p < G.vertices[v].size(); ++p) {
      const auto& s = G.vertices[v][p];
      if (t.index.count(s)) throw InvalidGraph("slot '" + s + "' appears twice");
      t.index[s] = t.names.size();
      t.names.push_back(s);
      t.vertex.push_back(v);
      t.position.push_back(p);
    }
  }
  const std::size_t n = t.names.size();
  t.partner.assign(n, -1);
  t.pair_of.assign(n, -1);
  t.role.assign(n, -1);
  t.marked_index.assign(n, -1);
  auto lookup = [&](const std::string& s) {
    auto it = t.index.find(s);
    if (it == t.index.end()) throw InvalidGraph("unknown slot '" + s + "'");
    return it->second;
  };
  for (std::size_t k = 0; k < G.pairs.size(); ++k) {
    const auto a = lookup(G.pairs[k].first);
    const auto b = lookup(G.pairs[k].second);
    if (a == b) throw InvalidGraph("slot '" + t.names[a] + "' paired with itself");
    for (auto s : {a, b}) {
      if (t.partner[s] >= 0) throw InvalidGraph("slot '" + t.names[s] + "' is in two pairs");
    }
    t.partner[a] = static_cast<long>(b);
    t.partner[b] = static_cast<long>(a);
    t.pair_of[a] = t.pair_of[b] = static_cast<long>(k);
    t.role[a] = 0;
    t.role[b] = 1;
  }
  for (std::size_t k = 0; k < G.marked.size(); ++k) {
    const auto m = lookup(G.marked[k]);
    if (t.partner[m] >= 0) throw InvalidGraph("slot '" + t.names[m] + "' is both paired and marked");
    if (t.marked_index[m] >= 0) throw InvalidGraph("slot '" + t.names[m] + "' marked twice");
    t.marked_index[m] = static_cast<long>(k);
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (t.partner[s] < 0 && t.marked_index[s] < 0) {
      throw InvalidGraph("slot '" + t.names[s] + "' is neither paired nor marked");
    }
  }
  return t;
}

// Connected components of vertices; returns the component id per vertex.
inline std::vector<std::size_t> vertex_components(const RibbonGraph& G, const SlotTable& t) {
  std::vector<std::size_t> parent(G.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : G.pairs) {
    const auto ra = find(t.vertex[t.index.at(a)]), rb = find(t.vertex[t.index.at(b)]);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::size_t> comp(G.vertices.size());
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t v = 0; v < comp.size(); ++v) {
    const auto r = find(v);
    if (!ids.count(r)) ids.emplace(r, ids.size());
    comp[v] = ids[r];
  }
  return comp;
}

// Boundary walks: the gap following slot s leads to the next slot u at the
// same vertex; if u is glued the walk crosses the strip and continues after
// u's partner, otherwise it runs along u. Returns the walks as slot lists.
inline std::vector<std::vector<std::size_t>> boundary_walks(const RibbonGraph& G, const SlotTable& t) {
  const std::size_t n = t.names.size();
  auto next = [&](std::size_t s) {
    const auto& cyc = G.vertices[t.vertex[s]];
    return t.index.at(cyc[(t.position[s] + 1) % cyc.size()]);
  };
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> walks;
  for (std::size_t s0 = 0; s0 < n; ++s0) {
    if (seen[s0]) continue;
    std::vector<std::size_t> w;
    std::size_t s = s0;
    while (!seen[s]) {
      seen[s] = 1;
      w.push_back(s);
      const auto u = next(s);
      s = t.partner[u] >= 0 ? static_cast<std::size_t>(t.partner[u]) : u;
    }
    walks.push_back(std::move(w));
  }
  return walks;
}

inline Signature graph_signature(const RibbonGraph& G) {
  const auto t = slot_table(G);
  const auto comp = vertex_components(G, t);
  const std::size_t ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<int> has_marked(ncomp, 0);
  for (std::size_t s = 0; s < t.names.size(); ++s) {
    if (t.marked_index[s] >= 0) has_marked[comp[t.vertex[s]]] = 1;
  }
  for (std::size_t c = 0; c < ncomp; ++c) {
    if (!has_marked[c]) throw InvalidGraph("a connected component has no marked slot");
  }
  const auto walks = boundary_walks(G, t);
  const long chi = static_cast<long>(G.vertices.size()) - static_cast<long>(G.pairs.size());
  const long r = static_cast<long>(walks.size());
  const long twice_g = 2 * static_cast<long>(ncomp) - chi - r;
  if (twice_g < 0 || twice_g % 2) throw InvalidGraph("inconsistent Euler characteristic");
  Signature sig;
  sig.genus = static_cast<int>(twice_g / 2);
  sig.boundaries = static_cast<int>(r);
  sig.components = static_cast<int>(ncomp);
  sig.marked = static_cast<int>(G.marked.size());
  return sig;
}

inline std::string to_string(const Signature& s) {
  return "(g=" + std::to_string(s.genus) + ", r=" + std::to_string(s.boundaries) +
         ", components=" + std::to_string(s.components) + ", n=" + std::to_string(s.marked) + ")";
}

// Standard models.
namespace surfaces {

inline RibbonGraph disk() { return {{{"m"}}, {}, {"m"}}; }

inline RibbonGraph annulus() { return {{{"a", "b", "m"}}, {{"a", "b"}}, {"m"}}; }

// Two disks: the marked one carries a and b, the other d and c; a-c and b-d.
inline RibbonGraph annulus_two_vertex() {
  return {{{"a", "b", "m"}, {"d", "c"}}, {{"a", "c"}, {"b", "d"}}, {"m"}};
}

inline RibbonGraph torus() {
  return {{{"a", "b", "a'", "b'", "m"}}, {{"a", "a'"}, {"b", "b'"}}, {"m"}};
}

// Splitting the torus vertex along a new edge e-f: the marked vertex keeps
// a, b, e and the other one carries f, a', b'.
inline RibbonGraph torus_two_vertex() {
  return {{{"a", "b", "e", "m"}, {"f", "a'", "b'"}}, {{"a", "a'"}, {"b", "b'"}, {"e", "f"}}, {"m"}};
}

}  // namespace surfaces

}  // namespace skeintrace
