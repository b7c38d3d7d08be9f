#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "oracle.hpp"
#include "rcpoly/constraints.hpp"
#include "rcpoly/error.hpp"
#include "rcpoly/games.hpp"
#include "rcpoly/polytope.hpp"
#include "rcpoly/symmetry.hpp"

using namespace rcpoly;
namespace fs = std::filesystem;

namespace {

std::vector<std::vector<Rational>> as_list(VertexSet vs) {
  vs.sort();
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < vs.size(); ++i) out.push_back(vs.vertex(i));
  return out;
}

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("rcpoly_test_" + name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Polytope, NoSignalingSquareMatchesOracle) {
  auto sys = ns_rows(Scenario::uniform(2, 2, 2));
  auto got = as_list(enumerate_vertices(sys).vertices);
  EXPECT_EQ(got.size(), 24u);
  EXPECT_EQ(got, oracle::basic_feasible_solutions(sys));
  auto census = enumerate_vertices(sys).vertices.census();
  EXPECT_EQ(census.cl, 16u);
  EXPECT_EQ(census.ns, 8u);
}

TEST(Polytope, UnboundedSetIsRejected) {
  Scenario s({1, 1}, {2, 2});
  ConstraintSystem sys(s);
  ConstraintRow r;
  r.terms = {{0, Rational(1)}, {1, Rational(-1)}};
  sys.add_row(r);
  EXPECT_THROW(enumerate_vertices(sys), ConfigurationError);
}

TEST(Polytope, CheckpointResumeIsIdentical) {
  auto sys = ns_rows(Scenario::uniform(2, 2, 3));
  auto full = as_list(enumerate_vertices(sys).vertices);
  auto dir = temp_dir("resume");
  EnumerationOptions opts;
  opts.checkpoint_dir = dir;
  opts.max_insertions = 7;
  std::size_t reached = 0;
  opts.progress = [&](std::size_t done, std::size_t, std::size_t) { reached = done; };
  auto partial = enumerate_vertices(sys, opts);
  EXPECT_FALSE(partial.complete);
  opts.max_insertions = 0;
  opts.progress = nullptr;
  auto resumed = enumerate_vertices(sys, opts);
  EXPECT_TRUE(resumed.complete);
  EXPECT_EQ(resumed.resumed_insertions, reached);
  EXPECT_EQ(as_list(resumed.vertices), full);
  fs::remove_all(dir);
}

TEST(Polytope, ThreadCountDoesNotChangeResult) {
  auto sys = ns_rows(Scenario::uniform(2, 3, 2));
  EnumerationOptions opts;
  opts.threads = 3;
  EXPECT_EQ(as_list(enumerate_vertices(sys, opts).vertices), as_list(enumerate_vertices(sys).vertices));
}

TEST(Polytope, ExtRoundTrip) {
  auto s = Scenario::uniform(2, 2, 2);
  auto vs = enumerate_vertices(ns_rows(s)).vertices;
  vs.sort();
  auto text = to_ext(vs);
  EXPECT_NE(text.find("V-representation"), std::string::npos);
  auto back = from_ext(text, s);
  EXPECT_EQ(as_list(back), as_list(vs));
  EXPECT_EQ(back.census().ns, 8u);
}

TEST(Polytope, ClassRepresentativesAreTaggedVertices) {
  auto rc = rc_rows(Scenario::uniform(3, 2, 2), structure_preset("fig1"));
  for (int k = 1; k <= 6; ++k) {
    auto box = extremal_class_box(k);
    EXPECT_TRUE(is_extremal(box.entries, rc)) << k;
    EXPECT_EQ(classify_vertex(box.entries, rc), k == 1 ? VertexTag::CL : VertexTag::NS) << k;
  }
  EXPECT_THROW(extremal_class_box(7), BoundsError);
}

TEST(Polytope, InteriorPointsAreNotExtremal) {
  auto s = Scenario::uniform(3, 2, 2);
  auto rc = rc_rows(s, structure_preset("fig1"));
  EXPECT_FALSE(is_extremal(uniform_box(s).entries, rc));
  EXPECT_TRUE(is_extremal(gwa_box().entries, rc));
  EXPECT_EQ(classify_vertex(gwa_box().entries, rc), VertexTag::RC);
  EXPECT_THROW(classify_vertex(gwa_box().entries, ns_rows(s)), ConfigurationError);
}

TEST(Polytope, OrbitEnumerationMatchesDoubleDescription) {
  for (auto s : {Scenario::uniform(2, 2, 2), Scenario::uniform(2, 2, 3), Scenario::uniform(2, 3, 2)}) {
    auto sys = ns_rows(s);
    auto orbits = enumerate_vertices_by_orbits(sys, make_group(s, SignalingStructure(2)));
    EXPECT_EQ(as_list(orbits.vertices), as_list(enumerate_vertices(sys).vertices)) << s.describe();
    std::size_t total = 0;
    for (const auto& c : orbits.classes.classes) total += c.orbit_size;
    EXPECT_EQ(total, orbits.vertices.size());
  }
}

// Random polytopes inside a product of simplices: double description agrees with
// the brute-force basis oracle.
TEST(PolytopeProperty, MatchesBasisOracleOnRandomSystems) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> coef(-2, 2), rhs(-1, 1);
  Scenario s({1, 1}, {3, 3});
  int nonempty = 0;
  for (int trial = 0; trial < 60; ++trial) {
    ConstraintSystem sys(s);
    for (std::uint32_t block = 0; block < 9; block += 3) {
      ConstraintRow norm;
      for (std::uint32_t j = block; j < std::min<std::uint32_t>(block + 5, 9); ++j) norm.terms.emplace_back(j, Rational(1));
      norm.rhs = 1;
      sys.add_row(norm);
    }
    ConstraintRow r;
    for (std::uint32_t j = 0; j < 9; ++j) {
      int v = coef(rng);
      if (v) r.terms.emplace_back(j, Rational(v));
    }
    r.rhs = rhs(rng);
    if (!r.terms.empty()) sys.add_row(r);
    std::vector<std::vector<Rational>> expected;
    try {
      expected = oracle::basic_feasible_solutions(sys);
    } catch (const std::invalid_argument&) {
    }
    if (expected.empty()) continue;
    ++nonempty;
    ASSERT_EQ(as_list(enumerate_vertices(sys).vertices), expected) << trial;
  }
  EXPECT_GT(nonempty, 10);
}
