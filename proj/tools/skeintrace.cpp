// skeintrace: load, verify, compute, report.
//
// Exit codes: 0 all checks pass, 1 an exact check failed, 2 the input does
// not satisfy the hypotheses (not unimodular, no R-matrix, no ribbon
// element, ...), 3 unreadable or malformed input, 4 internal error.

#include "skeintrace/report.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace skeintrace;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kHypothesis = 2, kBadInput = 3, kInternal = 4 };

struct Options {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "human";
};

int exit_code(const Outcome& o) { return !o.hypotheses ? kHypothesis : o.checks ? kOk : kCheckFailed; }

std::size_t thread_cap() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* s = std::getenv("SKEINTRACE_THREADS")) {
    try {
      n = std::max<long>(1, std::stol(s));
    } catch (const std::exception&) {
      throw ParseError("SKEINTRACE_THREADS", "expected a positive integer");
    }
  }
  return n;
}

// -- human rendering of the result documents

bool is_check_list(const json& j) {
  return j.is_array() && !j.empty() && j[0].is_object() && j[0].contains("check");
}

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  return j.dump();
}

void render(const json& j, std::ostream& os, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& [key, v] : j.items()) {
    if (is_check_list(v)) {
      os << pad << key << ":\n";
      for (const auto& c : v) {
        os << pad << "  " << (c["pass"].get<bool>() ? "pass " : "FAIL ") << c["check"].get<std::string>();
        if (c.contains("witness")) os << "  [" << c["witness"].get<std::string>() << "]";
        os << "\n";
      }
    } else if (v.is_object()) {
      os << pad << key << ":\n";
      render(v, os, depth + 1);
    } else if (v.is_array()) {
      const bool flat = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        os << pad << key << ":";
        for (const auto& e : v) os << " " << scalar_text(e);
        os << "\n";
        continue;
      }
      os << pad << key << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          render(e, os, depth + 1);
          continue;
        }
        os << pad << " ";
        for (const auto& x : e) os << " " << scalar_text(x);
        os << "\n";
      }
    } else {
      os << pad << key << ": " << scalar_text(v) << "\n";
    }
  }
}

void emit(const json& doc, const Options& opt) {
  std::ostringstream ss;
  if (opt.format == "machine") {
    ss << doc.dump(2) << "\n";
  } else {
    render(doc, ss, 0);
  }
  if (opt.out.empty()) {
    std::cout << ss.str();
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw ParseError(opt.out, "cannot write output");
  f << ss.str();
}

// -- inputs

RibbonGraph resolve_surface(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_surface(parse_json(read_text_file(arg), arg));
  if (arg == "disk") return surfaces::disk();
  if (arg == "annulus") return surfaces::annulus();
  if (arg == "annulus_2v") return surfaces::annulus_two_vertex();
  if (arg == "torus") return surfaces::torus();
  if (arg == "torus_2v") return surfaces::torus_two_vertex();
  throw ParseError(arg, "no such file or standard surface (disk, annulus, annulus_2v, torus, torus_2v)");
}

// Calls f with the algebra over the scalar type its file declares.
template <class F>
int with_hopf(const std::string& arg, F&& f) {
  if (!std::filesystem::exists(arg)) {
    const auto& names = builtin_names();
    const bool known = std::find(names.begin(), names.end(), arg) != names.end() || arg == "z2" || arg == "s3";
    if (!known) throw ParseError(arg, "no such file or builtin algebra");
    return f(builtin<Rational>(arg));
  }
  const auto j = parse_json(read_text_file(arg), arg);
  if (read_field(j).cyclotomic) return f(load_hopf<Cyclotomic>(j));
  return f(load_hopf<Rational>(j));
}

// -- commands

template <class K>
Outcome cmd_moduli(const HopfAlgebra<K>& H, const RibbonGraph& G, const Options& opt) {
  Outcome o;
  const auto s = setup(H);
  require_usable(s.usable(), s.reason);
  o.doc = setup_json(H, s);
  const auto M = moduli_algebra(H, G);
  bool pass = true;
  o.doc["surface"] = moduli_summary(H, M, s, opt.seed, pass);
  o.doc["algebra object"] = algebra_dump(M.algebra);
  o.checks = pass;
  return o;
}

template <class K>
Outcome cmd_trace_suite(const HopfAlgebra<K>& H, const RibbonGraph& G, const std::optional<RibbonGraph>& alt,
                        const Options& opt) {
  Outcome o;
  if (alt && !(graph_signature(G) == graph_signature(*alt))) {
    throw InvalidGraph("signature mismatch: " + to_string(graph_signature(G)) + " vs " +
                       to_string(graph_signature(*alt)));
  }
  const auto s = setup(H);
  require_usable(s.usable(), s.reason);
  o.doc = setup_json(H, s);
  SuiteOptions so;
  so.seed = opt.seed;
  const auto r = invariance_suite(H, G, alt, so);
  o.doc["suite"] = suite_json<K>(r);
  o.checks = r.report.all_pass();
  return o;
}

template <class K>
Outcome cmd_correlator(const HopfAlgebra<K>& H, const RibbonGraph& Omega, const Options& opt) {
  Outcome o;
  const auto s = setup(H);
  require_usable(s.usable(), s.reason);
  o.doc = setup_json(H, s);
  const auto F = canonical_coend(H);
  bool pass = true;
  o.doc["correlator"] = correlator_json(H, Omega, s, F, opt.seed, true, pass);
  o.checks = pass;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact modified traces, moduli algebras and surface traces for ribbon Hopf algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--out", opt.out, "write the result to a file");
  app.add_option("--format", opt.format, "human or machine (JSON)")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();

  std::string hopf, surface, alt;
  auto* verify = app.add_subcommand("verify", "verify the Hopf, ribbon and trace axioms");
  verify->add_option("hopf", hopf, "Hopf file or builtin name")->required();
  auto* moduli = app.add_subcommand("moduli", "build and dump the moduli algebra of a surface");
  moduli->add_option("hopf", hopf, "Hopf file or builtin name")->required();
  moduli->add_option("surface", surface, "surface file or standard surface")->required();
  auto* suite = app.add_subcommand("trace-suite", "non-degeneracy, twist invariance, locality, closing operators");
  suite->add_option("hopf", hopf, "Hopf file or builtin name")->required();
  suite->add_option("surface", surface, "surface file or standard surface")->required();
  suite->add_option("alt", alt, "second model of the same surface, one vertex split");
  auto* corr = app.add_subcommand("correlator", "open correlator into the coend algebra");
  corr->add_option("hopf", hopf, "Hopf file or builtin name")->required();
  corr->add_option("surface", surface, "connected surface with one marked interval")->required();
  auto* report = app.add_subcommand("report", "verification and suites on the standard surfaces");
  report->add_option("hopf", hopf, "Hopf file or builtin name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    // all inputs are read and checked before any computation
    std::optional<RibbonGraph> G, G2;
    if (!surface.empty()) G = resolve_surface(surface);
    if (!alt.empty()) G2 = resolve_surface(alt);
    return with_hopf(hopf, [&](const auto& H) {
      Outcome o;
      if (verify->parsed()) o = verify_report(H, opt.seed);
      if (moduli->parsed()) o = cmd_moduli(H, *G, opt);
      if (suite->parsed()) o = cmd_trace_suite(H, *G, G2, opt);
      if (corr->parsed()) o = cmd_correlator(H, *G, opt);
      if (report->parsed()) o = full_report(H, opt.seed, thread_cap());
      emit(o.doc, opt);
      return exit_code(o);
    });
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kHypothesis;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidGraph& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
