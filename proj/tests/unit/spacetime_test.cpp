#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "rcpoly/error.hpp"
#include "rcpoly/spacetime.hpp"

using namespace rcpoly;

namespace {

Event ev(Rational t, Rational x) { return Event{t, x}; }

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Containment of the cone intersection checked pointwise on a half-integer grid
// that covers the intersection's apex for integer inputs.
bool ptr_by_sampling(const Event& s, const std::vector<Event>& targets) {
  for (int ti = -40; ti <= 40; ++ti) {
    for (int xi = -40; xi <= 40; ++xi) {
      Event q = ev(frac(ti, 2), frac(xi, 2));
      bool in_all = true;
      for (const auto& e : targets) in_all = in_all && causally_precedes(e, q);
      if (in_all && !causally_precedes(s, q)) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Spacetime, CausalPrecedenceExamples) {
  EXPECT_TRUE(causally_precedes(ev(0, 0), ev(1, 0)));
  EXPECT_FALSE(causally_precedes(ev(0, 0), ev(0, 2)));
  EXPECT_TRUE(causally_precedes(ev(0, 0), ev(1, 1)));
  EXPECT_FALSE(causally_precedes(ev(1, 0), ev(0, 0)));
  EXPECT_THROW(causally_precedes(ev(0, 0), Event{0, 0, 0}), GeometryError);
}

TEST(Spacetime, PtrExamples) {
  std::vector<Event> ac = {ev(0, 0), ev(0, 2)};
  EXPECT_TRUE(ptr_allowed(ev(0, 1), ac));
  std::vector<Event> bc = {ev(0, 1), ev(0, 2)};
  EXPECT_FALSE(ptr_allowed(ev(0, 0), bc));
  EXPECT_FALSE(ptr_allowed(ev(2, 1), ac));
  Event apex = cone_intersection_apex(ac);
  EXPECT_EQ(apex.coords[0], 1);
  EXPECT_EQ(apex.coords[1], 1);
}

TEST(Spacetime, HigherDimensionsAreRejected) {
  std::vector<Event> t = {Event{0, 0, 0}, Event{0, 2, 0}};
  EXPECT_THROW(ptr_allowed(Event{0, 1, 0}, t), GeometryError);
}

TEST(Spacetime, DeriveStructureFig1) {
  std::vector<Event> e = {ev(0, 0), ev(0, 1), ev(0, 2)};
  EXPECT_EQ(derive_structure(e), structure_preset("fig1"));
  std::vector<Event> scaled = {ev(0, 0), ev(0, 10), ev(0, 20)};
  EXPECT_EQ(derive_structure(scaled), structure_preset("fig1"));
}

TEST(Spacetime, DeriveStructureRejectsTimelikePairs) {
  std::vector<Event> e = {ev(0, 0), ev(2, 1), ev(0, 5)};
  try {
    derive_structure(e);
    FAIL();
  } catch (const ConfigurationError& err) {
    EXPECT_NE(std::string(err.what()).find("A and B"), std::string::npos) << err.what();
  }
}

TEST(Spacetime, StructureRejectsInvalidRelations) {
  SignalingStructure s(3);
  EXPECT_THROW(s.allow(0, party_bit(0) | party_bit(1)), ConfigurationError);
  EXPECT_THROW(s.allow(0, party_bit(1)), ConfigurationError);
  EXPECT_THROW(s.allow(3, party_bit(0) | party_bit(1)), ConfigurationError);
}

TEST(Spacetime, MarginalWellDefinedness) {
  auto fig1 = structure_preset("fig1");
  const PartySet A = party_bit(0), B = party_bit(1), C = party_bit(2);
  EXPECT_TRUE(fig1.marginal_well_defined(A | B));
  EXPECT_TRUE(fig1.marginal_well_defined(B | C));
  EXPECT_FALSE(fig1.marginal_well_defined(A | C));
  EXPECT_TRUE(fig1.marginal_well_defined(A));
}

TEST(Spacetime, EnumerateStructures) {
  auto two = enumerate_structures(2, 3);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_TRUE(two[0].empty());

  auto three = enumerate_structures(3, 2);
  EXPECT_NE(std::find(three.begin(), three.end(), SignalingStructure(3)), three.end());
  EXPECT_NE(std::find(three.begin(), three.end(), structure_preset("fig1")), three.end());
  EXPECT_EQ(enumerate_structures(3, 4), three);
}

TEST(Spacetime, PresetsAreConsistent) {
  for (const auto& name : structure_preset_names()) {
    auto s = structure_preset(name);
    for (const auto& r : s.relations()) {
      EXPECT_EQ(r.targets & party_bit(r.from), 0u) << name;
      EXPECT_GE(std::popcount(r.targets), 2) << name;
    }
  }
  EXPECT_TRUE(structure_preset("ns", 4).empty());
  EXPECT_THROW(structure_preset("nope"), ConfigurationError);
}

// Causal precedence is a partial order on random events.
TEST(SpacetimeProperty, CausalOrderIsReflexiveAndTransitive) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-6, 6);
  for (int trial = 0; trial < 2000; ++trial) {
    Event p = ev(c(rng), c(rng)), q = ev(c(rng), c(rng)), r = ev(c(rng), c(rng));
    ASSERT_TRUE(causally_precedes(p, p));
    if (causally_precedes(p, q) && causally_precedes(q, r)) {
      ASSERT_TRUE(causally_precedes(p, r));
    }
  }
}

// Uniform rescaling and translation do not change point-to-region signaling.
TEST(SpacetimeProperty, PtrInvariantUnderScalingAndTranslation) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-5, 5), k(1, 7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Event> t = {ev(c(rng), c(rng)), ev(c(rng), c(rng)), ev(c(rng), c(rng))};
    Event s = ev(c(rng), c(rng));
    const int num = k(rng), den = k(rng);
    Rational scale = frac(num, den);
    Rational dt = c(rng), dx = frac(c(rng), 3);
    auto move = [&](const Event& e) { return ev(e.coords[0] * scale + dt, e.coords[1] * scale + dx); };
    std::vector<Event> t2;
    for (const auto& e : t) t2.push_back(move(e));
    ASSERT_EQ(ptr_allowed(s, t), ptr_allowed(move(s), t2));
  }
}

// The apex test agrees with pointwise containment on random integer configurations.
TEST(SpacetimeProperty, PtrMatchesSamplingOracle) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Event> t = {ev(c(rng), c(rng)), ev(c(rng), c(rng))};
    if (trial % 2) t.push_back(ev(c(rng), c(rng)));
    Event s = ev(c(rng), c(rng));
    ASSERT_EQ(ptr_allowed(s, t), ptr_by_sampling(s, t)) << trial;
  }
}
