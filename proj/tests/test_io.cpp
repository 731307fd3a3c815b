#include "skeintrace/builtins.hpp"
#include "skeintrace/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace skeintrace;
using skeintrace::test_support::data_file;
using Q = Rational;

namespace {

json load_file(const std::string& name) { return parse_json(read_text_file(data_file(name)), name); }

std::string where_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.where;
  }
  return "<no error>";
}

json z2_json() { return hopf_to_json(builtin<Q>("z2")); }

const std::vector<std::string> kFiles{"z2", "s3", "sweedler", "double_z2", "double_sweedler"};

}  // namespace

TEST(HopfFiles, DataFilesMatchTheBuiltins) {
  for (const auto& name : kFiles) {
    const auto H = load_hopf<Q>(load_file(name + ".json"));
    EXPECT_EQ(hopf_to_json(H), hopf_to_json(builtin<Q>(name))) << name;
    EXPECT_TRUE(verify_hopf_axioms(H).all_pass()) << name;
  }
}

TEST(HopfFiles, DumpLoadRoundTrip) {
  for (const auto& name : builtin_names()) {
    const auto j = hopf_to_json(builtin<Q>(name));
    const auto again = parse_json(j.dump(2));
    EXPECT_EQ(hopf_to_json(load_hopf<Q>(again)), j) << name;
  }
  const auto C = load_hopf<Cyclotomic>(load_file("braided_z3.json"));
  EXPECT_EQ(hopf_to_json(load_hopf<Cyclotomic>(hopf_to_json(C))), hopf_to_json(C));
  EXPECT_EQ(hopf_to_json(C)["field"]["order"], 3);
}

TEST(HopfFiles, DuplicateEntriesAreRejected) {
  EXPECT_EQ(where_of([] { load_hopf<Q>(load_file("bad_duplicate.json")); }), "mult[1]");
}

TEST(HopfFiles, MalformedJsonReportsLineAndColumn) {
  EXPECT_EQ(where_of([] { parse_json("{\n  \"dim\": 2,\n  oops\n}", "f.json"); }), "f.json:3:3");
  EXPECT_EQ(where_of([] { parse_json("[1, 2", "g"); }).rfind("g:1:", 0), 0u);
  EXPECT_EQ(where_of([] { read_text_file("/nonexistent/file.json"); }), "/nonexistent/file.json");
}

TEST(HopfFiles, FieldErrorsPointAtThePath) {
  auto j = z2_json();
  j["mult"][2][3] = "1/2*z";
  EXPECT_EQ(where_of([&] { load_hopf<Q>(j); }), "mult[2][3]");

  j = z2_json();
  j["mult"][0][1] = 5;
  EXPECT_EQ(where_of([&] { load_hopf<Q>(j); }), "mult[0][1]");

  j = z2_json();
  j.erase("counit");
  EXPECT_EQ(where_of([&] { load_hopf<Q>(j); }), "counit");

  j = z2_json();
  j["unit"] = json::array({"1"});
  EXPECT_EQ(where_of([&] { load_hopf<Q>(j); }), "unit");

  j = z2_json();
  j["field"] = {{"kind", "p-adic"}};
  EXPECT_EQ(where_of([&] { load_hopf<Q>(j); }), "field.kind");

  j = z2_json();
  j["field"] = {{"kind", "cyclotomic"}, {"order", 3}};
  EXPECT_EQ(where_of([&] { load_hopf<Q>(j); }), "field");
  EXPECT_NO_THROW(load_hopf<Cyclotomic>(j));

  j = z2_json();
  j["antipode"][0][2] = "1/0";
  EXPECT_EQ(where_of([&] { load_hopf<Q>(j); }), "antipode[0][2]");
}

TEST(HopfFiles, IntegerScalarsAreAccepted) {
  auto j = z2_json();
  for (auto& row : j["mult"]) row[3] = 1;
  EXPECT_EQ(hopf_to_json(load_hopf<Q>(j)), z2_json());
}

TEST(SurfaceFiles, StandardSurfaces) {
  const std::vector<std::pair<std::string, RibbonGraph>> cases{
      {"disk", surfaces::disk()},
      {"annulus", surfaces::annulus()},
      {"annulus_2v", surfaces::annulus_two_vertex()},
      {"torus", surfaces::torus()},
      {"torus_2v", surfaces::torus_two_vertex()}};
  for (const auto& [name, G] : cases) {
    const auto L = load_surface(load_file(name + ".json"));
    EXPECT_EQ(L.vertices, G.vertices) << name;
    EXPECT_EQ(L.pairs, G.pairs) << name;
    EXPECT_EQ(L.marked, G.marked) << name;
    EXPECT_EQ(surface_to_json(L), load_file(name + ".json")) << name;
  }
}

TEST(SurfaceFiles, Validation) {
  auto j = surface_to_json(surfaces::annulus());
  j["pairs"][0] = json::array({"a"});
  EXPECT_EQ(where_of([&] { load_surface(j); }), "pairs[0]");
  j = surface_to_json(surfaces::annulus());
  j["vertices"][0][1] = 3;
  EXPECT_EQ(where_of([&] { load_surface(j); }), "vertices[0][1]");
  j = surface_to_json(surfaces::annulus());
  j["pairs"] = json::array();
  EXPECT_THROW(load_surface(j), InvalidGraph);  // a and b left dangling
  j = surface_to_json(surfaces::annulus());
  j.erase("marked");
  EXPECT_EQ(where_of([&] { load_surface(j); }), "marked");
}

TEST(ModuleFiles, ParentAndEntries) {
  const auto S3 = builtin<Q>("s3");
  const auto j = load_file("s3_permutation.json");
  EXPECT_EQ(load_module(j, S3).dim, 3u);
  EXPECT_EQ(where_of([&] { load_module(j, builtin<Q>("z2")); }), "parent");
  auto k = j;
  k["action"].push_back(k["action"][0]);
  EXPECT_EQ(where_of([&] { load_module(k, S3); }), "action[18]");
  k = j;
  k["action"][0][1] = 3;
  EXPECT_EQ(where_of([&] { load_module(k, S3); }), "action[0][1]");
  k = j;
  k["action"][4][3] = "2";  // no longer a representation
  EXPECT_THROW(load_module(k, S3), std::invalid_argument);
}
