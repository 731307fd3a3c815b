#pragma once

// Result documents shared by the command line tool and the acceptance run.
// Every document is assembled in a fixed order so that runs with the same
// seed are byte-identical.

#include "skeintrace/builtins.hpp"
#include "skeintrace/correlator.hpp"
#include "skeintrace/io.hpp"
#include "skeintrace/suite.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <vector>

namespace skeintrace {

struct Outcome {
  json doc;
  bool hypotheses = true;
  bool checks = true;
};

inline json to_json(const Report& r) {
  json a = json::array();
  for (const auto& c : r.checks) {
    json e{{"check", c.name}, {"pass", c.pass}};
    if (!c.pass && !c.witness.empty()) e["witness"] = c.witness;
    a.push_back(std::move(e));
  }
  return a;
}

template <class K>
json sparse_vec(const Vec<K>& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) a.push_back({i, v[i].str()});
  }
  return a;
}

// The structure every pipeline needs: Hopf axioms, R-matrix, unimodular,
// a balancing element. Missing ribbon property is recorded, not fatal.
template <class K>
struct Setup {
  Report hypotheses;
  std::optional<IntegralData<K>> integrals;
  std::optional<RibbonData<K>> rd;
  std::optional<TwistConvention> twist;
  std::optional<SymmetrizedCointegral<K>> mu;
  std::string reason;
  bool usable() const { return mu.has_value() && twist.has_value(); }
  bool ok() const { return reason.empty(); }
};

template <class K>
Setup<K> setup(const HopfAlgebra<K>& H) {
  Setup<K> s;
  auto& h = s.hypotheses;
  auto fail = [&](const std::string& name, const std::string& why) {
    h.add(name, false, why);
    if (s.reason.empty()) s.reason = why;
  };
  const auto ax = verify_hopf_axioms(H);
  if (!ax.all_pass()) {
    std::string w;
    for (const auto& c : ax.checks) {
      if (!c.pass) {
        w = c.name + (c.witness.empty() ? "" : ": " + c.witness);
        break;
      }
    }
    fail("hopf axioms", "Hopf axiom fails: " + w);
    return s;
  }
  h.add("hopf axioms", true);
  try {
    s.integrals = integrals(H);
  } catch (const HypothesisViolation& e) {
    fail("integrals", e.what());
    return s;
  }
  if (!s.integrals->unimodular) {
    fail("unimodular", "not unimodular");
    return s;
  }
  h.add("unimodular", true);
  if (!H.rmatrix()) {
    fail("R-matrix", "no R-matrix");
    return s;
  }
  const auto qt = verify_quasitriangular(H);
  if (!qt.all_pass()) {
    fail("quasitriangular", "R-matrix fails the quasitriangularity identities");
    return s;
  }
  h.add("quasitriangular", true);
  const auto balanced = derive_balanced_elements(H, *H.rmatrix());
  if (balanced.empty()) {
    fail("ribbon element", "no ribbon or balancing element among the candidates");
    return s;
  }
  s.rd = select_structure(H);
  if (s.rd->ribbon) {
    h.add("ribbon element", true);
  } else {
    fail("ribbon element", "no ribbon element (balanced only: S(nu) != nu)");
  }
  s.twist = select_twist_convention(H, *s.rd);
  if (!s.twist) {
    fail("twist convention", "neither nu nor nu^-1 satisfies the balancing identity");
    return s;
  }
  h.add("twist convention", true);
  s.mu = symmetrized_cointegral(H, *s.integrals, *s.rd);
  return s;
}

template <class K>
json setup_json(const HopfAlgebra<K>& H, const Setup<K>& s) {
  json j;
  j["algebra"] = H.name();
  j["dim"] = H.dim();
  j["hypotheses"] = to_json(s.hypotheses);
  if (!s.ok()) j["reason"] = s.reason;
  if (s.rd) j["structure"] = s.rd->ribbon ? "ribbon" : "balanced";
  if (s.twist) j["twist"] = to_string(*s.twist);
  if (s.mu) j["trace"] = s.mu->tag;
  return j;
}

inline void require_usable(bool usable, const std::string& reason) {
  if (!usable) throw HypothesisViolation(reason);
}

template <class K>
Outcome verify_report(const HopfAlgebra<K>& H, std::uint64_t seed) {
  Outcome o;
  const auto s = setup(H);
  o.doc = setup_json(H, s);
  o.hypotheses = s.ok();
  o.doc["axioms"] = to_json(verify_hopf_axioms(H));
  if (s.integrals) {
    o.doc["integrals"] = {{"left", sparse_vec(s.integrals->left)},
                          {"right", sparse_vec(s.integrals->right)},
                          {"unimodular", s.integrals->unimodular}};
  }
  if (!s.usable()) return o;
  TraceAxiomCounts counts;
  const auto tr = verify_trace_axioms(H, *s.rd, *s.mu, seed, &counts);
  o.doc["trace axioms"] = to_json(tr);
  o.doc["instances"] = {{"cyclic pairs", counts.cyclic_pairs},
                        {"gram pairs", counts.gram_pairs},
                        {"left partial", counts.left_instances},
                        {"right partial", counts.right_instances}};
  const auto u = trace_uniqueness_dimension(H, *s.rd, seed);
  o.doc["trace space dimension"] = u;
  o.checks = tr.all_pass() && u == 1;
  return o;
}

template <class K>
json algebra_dump(const AlgebraObject<K>& A) {
  json j;
  j["labels"] = A.labels;
  j["unit"] = sparse_vec(A.unit);
  if (A.lambda) j["form"] = sparse_vec(*A.lambda);
  json m = json::array();
  for (std::size_t a = 0; a < A.dim(); ++a) {
    for (std::size_t b = 0; b < A.dim(); ++b) {
      for (const auto& [k, c] : A.product(a, b)) m.push_back({a, b, k, c.str()});
    }
  }
  j["mult"] = std::move(m);
  json act = json::array();
  for (std::size_t l = 0; l < A.carrier.legs.size(); ++l) {
    for (std::size_t h = 0; h < A.hopf().dim(); ++h) {
      const auto& M = A.carrier.legs[l][h];
      for (std::size_t c = 0; c < M.cols(); ++c) {
        for (std::size_t r = 0; r < M.rows(); ++r) {
          if (!M(r, c).is_zero()) act.push_back({l, h, r, c, M(r, c).str()});
        }
      }
    }
  }
  j["action"] = std::move(act);
  return j;
}

template <class K>
json moduli_summary(const HopfAlgebra<K>& H, const Moduli<K>& M, const Setup<K>& s, std::uint64_t seed, bool& pass) {
  json j;
  const auto& sig = M.model->signature();
  j["signature"] = to_string(sig);
  j["dim"] = M.algebra.dim();
  const auto expected = expected_dimension(H.dim(), sig);
  if (expected) j["expected dim"] = *expected;
  j["conventions"] = to_string(M.model->conventions());
  const auto rep = verify_algebra(M.algebra, *s.rd, seed);
  j["checks"] = to_json(rep.report);
  j["pivotal"] = rep.pivotal;
  j["gram rank"] = rep.gram_rank;
  pass = rep.report.all_pass() && (!expected || *expected == M.algebra.dim());
  return j;
}

template <class K>
json suite_json(const TraceReport& r) {
  json j;
  j["signature"] = to_string(r.signature);
  j["checks"] = to_json(r.report);
  j["gram"] = r.gram;
  j["closing instances"] = r.closing_instances;
  j["trace comparisons"] = r.trace_comparisons;
  j["twists checked"] = r.twists_checked;
  j["non-identity twists"] = r.nonidentity_twists;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

template <class K>
json correlator_json(const HopfAlgebra<K>& H, const RibbonGraph& Omega, const Setup<K>& s, const Moduli<K>& F,
                     std::uint64_t seed, bool dump, bool& pass) {
  const auto sig = graph_signature(Omega);
  if (sig.components != 1 || sig.marked != 1) {
    throw InvalidGraph("correlators need a connected surface with one marked interval");
  }
  json j;
  j["signature"] = to_string(sig);
  const auto A = moduli_algebra(H, Omega);
  const auto C = annulus_correlator(A.algebra, s.rd->g);
  auto rep = verify_correlator(A.algebra, C, F, *s.rd, *s.twist, seed);
  if (sig.genus == 0 && sig.boundaries == 1) {
    bool unit = true;
    for (std::size_t k = 0; k < C.rows(); ++k) unit = unit && C(k, 0) == F.algebra.unit[k];
    rep.report.add("disk value is the unit of F", unit, "differs from the counit");
  }
  j["rows"] = C.rows();
  j["cols"] = C.cols();
  j["checks"] = to_json(rep.report);
  j["twists checked"] = rep.twists_checked;
  if (dump) {
    json e = json::array();
    for (std::size_t r = 0; r < C.rows(); ++r) {
      for (std::size_t c = 0; c < C.cols(); ++c) {
        if (!C(r, c).is_zero()) e.push_back({r, c, C(r, c).str()});
      }
    }
    j["matrix"] = std::move(e);
  }
  pass = rep.report.all_pass();
  return j;
}

// Everything for one algebra on the standard surfaces, surfaces in
// parallel, assembled in a fixed order.
template <class K>
Outcome full_report(const HopfAlgebra<K>& H, std::uint64_t seed, std::size_t threads = 1) {
  Outcome o = verify_report(H, seed);
  const auto s = setup(H);
  if (!s.usable()) return o;
  H.antipode_inverse();  // fill the lazy cache before sharing H across threads
  struct Case {
    std::string name;
    RibbonGraph G;
    std::optional<RibbonGraph> alt;
    bool correlator;
  };
  const std::vector<Case> cases{{"disk", surfaces::disk(), std::nullopt, true},
                                {"annulus", surfaces::annulus(), surfaces::annulus_two_vertex(), true},
                                {"torus", surfaces::torus(), surfaces::torus_two_vertex(), false}};
  const auto F = canonical_coend(H);
  struct Result {
    json doc;
    bool pass = true;
  };
  auto run = [&](const Case& c) {
    Result r;
    bool p = true;
    r.doc["moduli"] = moduli_summary(H, moduli_algebra(H, c.G), s, seed, p);
    r.pass = p;
    SuiteOptions so;
    so.seed = seed;
    const auto t = invariance_suite(H, c.G, c.alt, so);
    r.doc["suite"] = suite_json<K>(t);
    r.pass = r.pass && t.report.all_pass();
    if (c.correlator) {
      r.doc["correlator"] = correlator_json(H, c.G, s, F, seed, false, p);
      r.pass = r.pass && p;
    }
    return r;
  };
  const std::size_t cap = std::max<std::size_t>(1, threads);
  std::vector<Result> results(cases.size());
  for (std::size_t b = 0; b < cases.size(); b += cap) {
    std::vector<std::future<Result>> fut;
    for (std::size_t i = b; i < std::min(cases.size(), b + cap); ++i) {
      fut.push_back(std::async(cap > 1 ? std::launch::async : std::launch::deferred, run, std::cref(cases[i])));
    }
    for (std::size_t i = 0; i < fut.size(); ++i) results[b + i] = fut[i].get();
  }
  json surf;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    surf[cases[i].name] = std::move(results[i].doc);
    o.checks = o.checks && results[i].pass;
  }
  o.doc["surfaces"] = std::move(surf);
  return o;
}

}  // namespace skeintrace
