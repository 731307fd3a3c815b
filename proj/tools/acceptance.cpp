// Acceptance run: one line per criterion, exact equality throughout.
//
// The process exits 0 when the set of failing criteria equals the set given
// with --expect-fail (empty by default), 1 otherwise.

#include "skeintrace/report.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace skeintrace;
using K = Rational;

namespace {

const std::vector<std::string> kRibbonBuiltins{"z2", "s3", "double_z2", "double_sweedler"};
const std::vector<std::string> kAllBuiltins{"z2", "s3", "sweedler", "double_z2", "double_sweedler"};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Line {
  int id = 0;
  std::string title;
  bool pass = true;
  std::vector<std::string> notes;
  double seconds = 0;
  std::string limit;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

std::string failing(const Report& r) {
  std::string s;
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    if (!s.empty()) s += "; ";
    s += c.name;
    if (!c.witness.empty()) s += " [" + c.witness + "]";
  }
  return s;
}

// Algebras and per-surface objects are built once and shared by criteria.
struct Fixture {
  std::map<std::string, HopfAlgebra<K>> hopf;
  std::map<std::string, Setup<K>> setups;
  std::map<std::string, std::map<std::string, Moduli<K>>> moduli;  // builtin -> surface -> algebra
  std::map<std::string, double> moduli_seconds;
};

struct Surface {
  std::string name;
  RibbonGraph G;
  std::optional<RibbonGraph> alt;
};

std::vector<Surface> standard_surfaces() {
  return {{"disk", surfaces::disk(), std::nullopt},
          {"annulus", surfaces::annulus(), surfaces::annulus_two_vertex()},
          {"torus", surfaces::torus(), surfaces::torus_two_vertex()}};
}

Line hopf_verification(Fixture& fx) {
  Line L{1, "Hopf verification", true, {}, 0, "5s per algebra"};
  for (const auto& name : kAllBuiltins) {
    Stopwatch t;
    const auto& H = fx.hopf.at(name);
    const auto ax = verify_hopf_axioms(H);
    L.require(ax.all_pass(), name + ": " + failing(ax));
    const auto I = integrals(H);
    if (name == "sweedler") {
      L.require(!I.unimodular && I.left != I.right, "sweedler reported unimodular");
    } else {
      L.require(I.unimodular, name + " reported non-unimodular");
      const auto qt = verify_quasitriangular(H);
      L.require(qt.all_pass(), name + ": " + failing(qt));
      const auto rd = select_structure(H);
      // double_sweedler is declared balanced: it has no ribbon element
      if (name == "double_sweedler") {
        L.require(!derive_balanced_elements(H, *H.rmatrix()).empty(), name + ": no balancing element");
      } else {
        L.require(rd.ribbon, name + ": no ribbon element");
      }
    }
    const double s = t.seconds();
    L.seconds = std::max(L.seconds, s);
    L.require(s < 5.0, name + " took " + fmt_seconds(s));
  }
  return L;
}

Line trace_axioms(Fixture& fx, std::uint64_t seed) {
  Line L{2, "Modified trace axioms", true, {}, 0, "60s per algebra"};
  for (const auto& name : kRibbonBuiltins) {
    Stopwatch t;
    const auto& H = fx.hopf.at(name);
    const auto& s = fx.setups.at(name);
    TraceAxiomCounts c;
    const auto r = verify_trace_axioms(H, *s.rd, *s.mu, seed, &c);
    L.require(r.all_pass(), name + ": " + failing(r));
    L.require(c.cyclic_pairs >= 50, name + ": " + std::to_string(c.cyclic_pairs) + " cyclic pairs");
    L.require(c.gram_pairs >= 5, name + ": " + std::to_string(c.gram_pairs) + " gram pairs");
    L.require(c.left_instances >= 20 && c.right_instances >= 20, name + ": too few partial trace instances");
    const double sec = t.seconds();
    L.seconds = std::max(L.seconds, sec);
    L.require(sec < 60.0, name + " took " + fmt_seconds(sec));
  }
  return L;
}

Line uniqueness(Fixture& fx, std::uint64_t seed) {
  Line L{3, "Trace uniqueness", true, {}, 0, "none"};
  Stopwatch t;
  for (const auto& name : kRibbonBuiltins) {
    const auto d = trace_uniqueness_dimension(fx.hopf.at(name), *fx.setups.at(name).rd, seed);
    L.require(d == 1, name + ": dimension " + std::to_string(d));
  }
  L.seconds = t.seconds();
  return L;
}

Line dimension_law(Fixture& fx) {
  Line L{4, "Dimension law", true, {}, 0, "300s for double_sweedler torus"};
  for (const auto& name : kRibbonBuiltins) {
    const auto& H = fx.hopf.at(name);
    for (const auto& S : standard_surfaces()) {
      Stopwatch t;
      auto M = moduli_algebra(H, S.G);
      const double sec = t.seconds();
      const auto sig = graph_signature(S.G);
      const auto want = expected_dimension(H.dim(), sig);
      L.require(want && *want == M.algebra.dim(),
                name + " " + S.name + ": dim " + std::to_string(M.algebra.dim()));
      L.seconds += sec;
      if (S.name == "torus") L.require(sec < 300.0, name + " torus took " + fmt_seconds(sec));
      fx.moduli[name].emplace(S.name, std::move(M));
    }
  }
  return L;
}

Line symmetric_frobenius(Fixture& fx, std::uint64_t seed) {
  Line L{5, "Symmetric Frobenius", true, {}, 0, "none"};
  Stopwatch t;
  for (const auto& name : kRibbonBuiltins) {
    for (const auto& [surface, M] : fx.moduli.at(name)) {
      const auto r = verify_algebra(M.algebra, *fx.setups.at(name).rd, seed);
      const auto* frob = r.report.find("frobenius");
      const auto* sym = r.report.find("pivotally symmetric");
      L.require(frob && frob->pass && sym && sym->pass && r.report.all_pass(),
                name + " " + surface + ": " + failing(r.report));
    }
  }
  L.seconds = t.seconds();
  return L;
}

Line invariance(Fixture& fx, std::uint64_t seed) {
  Line L{6, "Invariance suite (N)(P)(L)(M)", true, {}, 0, "900s combined"};
  Stopwatch t;
  for (const auto& name : kRibbonBuiltins) {
    const auto& H = fx.hopf.at(name);
    for (const auto& S : standard_surfaces()) {
      SuiteOptions so;
      so.seed = seed;
      const auto r = invariance_suite(H, S.G, S.alt, so);
      const std::string where = name + " " + S.name;
      L.require(r.report.all_pass(), where + ": " + failing(r.report));
      L.require(r.report.find("(N) non-degenerate") != nullptr, where + ": (N) not run");
      L.require(r.closing_instances >= 20, where + ": " + std::to_string(r.closing_instances) + " closing instances");
      if (S.alt) L.require(r.report.find("(L) local") != nullptr, where + ": (L) not run");
      if (S.name == "torus") {
        L.require(r.twists_checked > 0, where + ": no twist checked");
        if (name == "double_sweedler") L.require(r.nonidentity_twists > 0, where + ": every twist is the identity");
      }
    }
  }
  L.seconds = t.seconds();
  L.require(L.seconds < 900.0, "took " + fmt_seconds(L.seconds));
  return L;
}

Line disk(Fixture& fx, std::uint64_t seed) {
  Line L{7, "Disk restriction", true, {}, 0, "none"};
  Stopwatch t;
  for (const auto& name : kRibbonBuiltins) {
    const auto r = disk_restriction(fx.hopf.at(name), fx.setups.at(name).mu->mu, seed);
    L.require(r.all_pass(), name + ": " + failing(r));
  }
  L.seconds = t.seconds();
  return L;
}

// -- trivial braiding: functions on G^k with pointwise product and
// conjugation, built from permutations without the Hopf algebra.

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

Perm inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  return c;
}

std::string cycle_label(const Perm& p) {
  std::string s;
  std::vector<bool> seen(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      s += std::to_string(j + 1);
    }
    s += ")";
  }
  return s.empty() ? "e" : s;
}

struct GroupOracle {
  std::vector<Perm> elements;
  std::map<std::string, std::size_t> index;  // label -> element
  std::vector<std::string> labels;
};

GroupOracle symmetric_group(int k, bool letter_names) {
  GroupOracle G;
  Perm p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  do {
    G.elements.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  for (std::size_t i = 0; i < G.elements.size(); ++i) {
    std::string l = cycle_label(G.elements[i]);
    if (letter_names && l != "e") l = "s";
    G.labels.push_back(l);
    G.index[l] = i;
  }
  return G;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

// Compares A with functions on G^k; basis vectors of A are matched to
// points of G^k by their labels d<g1>|d<g2>|...
bool matches_function_algebra(const AlgebraObject<K>& A, const GroupOracle& G, std::size_t k, std::string& why) {
  const std::size_t n = G.elements.size();
  std::size_t points = 1;
  for (std::size_t i = 0; i < k; ++i) points *= n;
  if (A.dim() != points) {
    why = "dim " + std::to_string(A.dim());
    return false;
  }
  std::vector<std::vector<std::size_t>> coord(A.dim());
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (const auto& part : split(A.labels[i], '|')) {
      auto it = part.size() > 1 && part[0] == 'd' ? G.index.find(part.substr(1)) : G.index.end();
      if (it == G.index.end()) {
        why = "unrecognised label " + A.labels[i];
        return false;
      }
      coord[i].push_back(it->second);
    }
    if (coord[i].size() != k) {
      why = "label " + A.labels[i];
      return false;
    }
  }
  std::map<std::vector<std::size_t>, std::size_t> at;
  for (std::size_t i = 0; i < A.dim(); ++i) at[coord[i]] = i;
  if (at.size() != A.dim()) {
    why = "labels are not distinct";
    return false;
  }
  for (std::size_t i = 0; i < A.dim(); ++i) {
    if (A.unit[i] != K(1) || (*A.lambda)[i] != K(1)) {
      why = "unit or form at " + A.labels[i];
      return false;
    }
    for (std::size_t j = 0; j < A.dim(); ++j) {
      SparseTerms<K> want;
      if (i == j) want.emplace_back(i, K(1));
      if (A.product(i, j) != want) {
        why = A.labels[i] + " * " + A.labels[j];
        return false;
      }
    }
  }
  const auto& hl = A.hopf().labels();
  for (std::size_t l = 0; l < A.carrier.legs.size(); ++l) {
    for (std::size_t h = 0; h < A.hopf().dim(); ++h) {
      const auto& g = G.elements.at(G.index.at(hl[h]));
      const auto gi = inverse(g);
      Matrix<K> want(A.dim(), A.dim());
      for (std::size_t i = 0; i < A.dim(); ++i) {
        std::vector<std::size_t> c;
        for (auto x : coord[i]) {
          const auto y = compose(compose(g, G.elements[x]), gi);
          c.push_back(static_cast<std::size_t>(std::find(G.elements.begin(), G.elements.end(), y) - G.elements.begin()));
        }
        want(at.at(c), i) = K(1);
      }
      if (A.carrier.legs[l][h] != want) {
        why = "action of " + hl[h] + " on leg " + std::to_string(l);
        return false;
      }
    }
  }
  return true;
}

Line trivial_braiding(Fixture& fx) {
  Line L{8, "Trivial-braiding degeneration", true, {}, 0, "none"};
  Stopwatch t;
  const std::map<std::string, GroupOracle> groups{{"z2", symmetric_group(2, true)}, {"s3", symmetric_group(3, false)}};
  for (const auto& [name, G] : groups) {
    const auto F = canonical_coend(fx.hopf.at(name));
    std::string why;
    L.require(matches_function_algebra(F.algebra, G, 1, why), name + " F: " + why);
    why.clear();
    L.require(matches_function_algebra(fx.moduli.at(name).at("torus").algebra, G, 2, why), name + " torus: " + why);
  }
  L.seconds = t.seconds();
  return L;
}

Line correlators(Fixture& fx, std::uint64_t seed) {
  Line L{9, "Correlators", true, {}, 0, "none"};
  Stopwatch t;
  for (const auto& name : kRibbonBuiltins) {
    const auto& H = fx.hopf.at(name);
    const auto& s = fx.setups.at(name);
    const auto F = canonical_coend(H);
    for (const auto* surface : {"disk", "annulus"}) {
      const auto& A = fx.moduli.at(name).at(surface).algebra;
      const auto C = annulus_correlator(A, s.rd->g);
      const auto r = verify_correlator(A, C, F, *s.rd, *s.twist, seed);
      L.require(r.report.all_pass(), name + " " + surface + ": " + failing(r.report));
      if (std::string(surface) == "disk") {
        bool unit = C.cols() == 1 && C.rows() == F.algebra.dim();
        for (std::size_t k = 0; unit && k < C.rows(); ++k) unit = C(k, 0) == F.algebra.unit[k];
        L.require(unit, name + ": disk correlator is not the unit of F");
      }
    }
  }
  L.seconds = t.seconds();
  return L;
}

std::string all_reports(std::uint64_t seed, std::size_t threads) {
  std::string out;
  for (const auto& name : kAllBuiltins) out += full_report(builtin<K>(name), seed, threads).doc.dump(2) + "\n";
  return out;
}

Line determinism(std::uint64_t seed) {
  Line L{10, "Determinism", true, {}, 0, "none"};
  Stopwatch t;
  const auto a = all_reports(seed, 1);
  const auto b = all_reports(seed, std::max(2u, std::thread::hardware_concurrency()));
  L.require(a == b, "reports differ");
  L.notes.push_back(std::to_string(a.size()) + " bytes");
  L.seconds = t.seconds();
  return L;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::uint64_t seed = 1;
  std::vector<int> expect_fail;
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  Fixture fx;
  for (const auto& name : kAllBuiltins) fx.hopf.emplace(name, builtin<K>(name));
  for (const auto& name : kRibbonBuiltins) {
    fx.setups.emplace(name, setup(fx.hopf.at(name)));
    if (!fx.setups.at(name).usable()) {
      std::cerr << name << ": " << fx.setups.at(name).reason << "\n";
      return 1;
    }
  }

  std::vector<Line> lines;
  auto run = [&](auto&& f) {
    lines.push_back(f());
    const auto& L = lines.back();
    std::cout << "criterion " << L.id << " " << (L.pass ? "PASS" : "FAIL") << "  " << L.title
              << "  tolerance=exact  time=" << fmt_seconds(L.seconds) << "  limit=" << L.limit;
    for (const auto& n : L.notes) std::cout << "\n    " << n;
    std::cout << std::endl;
  };
  run([&] { return hopf_verification(fx); });
  run([&] { return trace_axioms(fx, seed); });
  run([&] { return uniqueness(fx, seed); });
  run([&] { return dimension_law(fx); });
  run([&] { return symmetric_frobenius(fx, seed); });
  run([&] { return invariance(fx, seed); });
  run([&] { return disk(fx, seed); });
  run([&] { return trivial_braiding(fx); });
  run([&] { return correlators(fx, seed); });
  run([&] { return determinism(seed); });

  std::set<int> failed, expected(expect_fail.begin(), expect_fail.end());
  for (const auto& L : lines) {
    if (!L.pass) failed.insert(L.id);
  }
  std::cout << failed.size() << " of " << lines.size() << " criteria failed";
  if (!expected.empty()) std::cout << " (expected failures:";
  for (int id : expected) std::cout << " " << id;
  if (!expected.empty()) std::cout << ")";
  std::cout << std::endl;
  return failed == expected ? 0 : 1;
}
