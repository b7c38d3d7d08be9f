#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rcpoly/constraints.hpp"
#include "rcpoly/games.hpp"
#include "rcpoly/lp.hpp"
#include "rcpoly/polytope.hpp"
#include "rcpoly/symmetry.hpp"

using namespace rcpoly;

namespace {

const Scenario s322 = Scenario::uniform(3, 2, 2);

}  // namespace

TEST(Symmetry, GroupOrders) {
  EXPECT_EQ(make_group(s322, structure_preset("fig1")).order(), 1024u);
  EXPECT_EQ(make_group(s322, structure_preset("fig1"), false).order(), 128u);
  EXPECT_EQ(make_group(s322, SignalingStructure(3)).order(), 3072u);
  EXPECT_EQ(make_group(Scenario::uniform(2, 2, 2), SignalingStructure(2)).order(), 128u);
  // Parties of different cardinalities are never exchanged.
  EXPECT_EQ(make_group(Scenario({2, 3}, {2, 2}), SignalingStructure(2)).order(), 2u * 4 * 6 * 8);
}

TEST(Symmetry, ElementsArePermutations) {
  auto g = make_group(s322, structure_preset("fig1"));
  for (std::size_t e = 0; e < g.order(); e += 37) {
    std::set<std::uint32_t> seen(g.image(e).begin(), g.image(e).end());
    EXPECT_EQ(seen.size(), s322.vector_length());
    for (std::size_t j = 0; j < s322.vector_length(); ++j) EXPECT_EQ(g.source(e)[g.image(e)[j]], j);
  }
}

TEST(Symmetry, ApplyAgreesWithPrecomputedPermutation) {
  auto g = make_group(s322, structure_preset("fig1"));
  auto box = gwa_box().entries;
  for (std::size_t e = 0; e < g.order(); e += 101) {
    EXPECT_EQ(apply(g.elements()[e], s322, box), apply(g, e, box));
  }
}

TEST(Symmetry, NoSignalingSquareHasTwoClasses) {
  auto s = Scenario::uniform(2, 2, 2);
  auto vs = enumerate_vertices(ns_rows(s)).vertices;
  auto classes = classify(vs, make_group(s, SignalingStructure(2)));
  ASSERT_EQ(classes.classes.size(), 2u);
  EXPECT_EQ(classes.classes[0].tag, VertexTag::CL);
  EXPECT_EQ(classes.classes[0].orbit_size, 16u);
  EXPECT_EQ(classes.classes[1].tag, VertexTag::NS);
  EXPECT_EQ(classes.classes[1].orbit_size, 8u);
  EXPECT_NE(class_report_table(classes).find("1/2x8"), std::string::npos);
  EXPECT_NE(class_report_json(classes).find("orbit_size"), std::string::npos);
}

TEST(Symmetry, DeterministicBoxesFormOneClass) {
  VertexSet vs(s322);
  for (int strat = 0; strat < 64; ++strat) {
    auto box = make_box_from_predicate(s322, Rational(1), [strat](std::span<const int> x, std::span<const int> a) {
      for (int p = 0; p < 3; ++p) {
        if (a[p] != ((strat >> (2 * p + x[p])) & 1)) return false;
      }
      return true;
    });
    vs.add(box.entries, VertexTag::CL);
  }
  auto classes = classify(vs, make_group(s322, structure_preset("fig1")));
  ASSERT_EQ(classes.classes.size(), 1u);
  EXPECT_EQ(classes.classes[0].orbit_size, 64u);
}

// Canonical forms are constant on orbits and group images stay feasible.
TEST(SymmetryProperty, CanonicalFormIsOrbitInvariant) {
  auto fig1 = structure_preset("fig1");
  auto g = make_group(s322, fig1);
  auto rc = rc_rows(s322, fig1);
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rational> c(64);
    for (auto& v : c) v = coef(rng);
    auto sol = maximize({c, rc});
    ASSERT_EQ(sol.status, LpStatus::optimal);
    auto canon = canonical_form(std::span<const Rational>(sol.primal), g);
    for (int k = 0; k < 5; ++k) {
      auto img = apply(g, pick(rng), sol.primal);
      ASSERT_TRUE(rc.satisfied_by(img));
      ASSERT_EQ(canonical_form(std::span<const Rational>(img), g), canon);
    }
  }
}
