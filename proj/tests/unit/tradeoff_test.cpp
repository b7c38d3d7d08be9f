#include <gtest/gtest.h>

#include "rcpoly/error.hpp"
#include "rcpoly/tradeoff.hpp"

using namespace rcpoly;

TEST(Tradeoff, ChshTripleValues) {
  EXPECT_EQ(chsh_triple_value(SignalingStructure(3)), 6);
  EXPECT_EQ(chsh_triple_value(structure_preset("fig1")), 10);
}

TEST(Tradeoff, CycleNoncontextualBound) { EXPECT_EQ(cyc6_noncontextual_value(), 4); }

TEST(Tradeoff, ContextualScenarioShape) {
  auto s = contextual_scenario();
  EXPECT_EQ(s.parties(), 3);
  EXPECT_EQ(s.inputs()[1], 9);
  EXPECT_EQ(s.outputs()[1], 4);
  EXPECT_EQ(bob_context(2, 1), 7);
  EXPECT_EQ(cycle_edges().size(), 6u);
  EXPECT_EQ(chord_edges().size(), 3u);
}

TEST(Tradeoff, StrictSumRejectsIllDefinedTerms) {
  auto s = Scenario::uniform(3, 2, 2);
  EXPECT_THROW(tradeoff_sum(s, {chsh_pair(0, 2)}, structure_preset("fig1")), CompilationError);
  auto r = tradeoff_sum(s, {chsh_pair(0, 1), chsh_pair(1, 2)}, structure_preset("fig1"));
  EXPECT_EQ(r.optimum, 8);
  Rational sum = 0;
  for (const auto& t : r.terms) sum += t.value;
  EXPECT_EQ(sum, r.optimum);
  EXPECT_EQ(r.certificate_hash.size(), 16u);
}

TEST(Tradeoff, CertificateHashIsDeterministic) {
  std::vector<Rational> v = {Rational(1), Rational(-2)};
  EXPECT_EQ(certificate_hash(v), certificate_hash(v));
  EXPECT_NE(certificate_hash(v), certificate_hash({Rational(1), Rational(2)}));
}

TEST(Tradeoff, SvetlichnyPairOverFig2) {
  auto r = sve_fig2();
  EXPECT_EQ(r.optimum, 8);
  EXPECT_EQ(r.terms.size(), 2u);
}

TEST(Tradeoff, SvetlichnyPairOverTable1) {
  auto r = sve_pair();
  EXPECT_EQ(r.optimum, 12);
  Rational sum = 0;
  for (const auto& t : r.terms) sum += t.value;
  EXPECT_EQ(sum, 12);
}

TEST(Tradeoff, Table1Pins) {
  auto pins = table1(structure_preset("table1"));
  ASSERT_EQ(pins.size(), 4u);
  for (const auto& p : pins) ASSERT_EQ(p.status, LpStatus::optimal) << p.pinned;
  EXPECT_EQ(pins[0].value, 4);
  EXPECT_EQ(pins[1].value, 0);
  EXPECT_EQ(pins[2].value, 8);
  EXPECT_EQ(pins[3].value, 8);
}

// The preset is a line arrangement B, A, C, D: only the inner parties signal,
// each to the sets it separates.
TEST(Tradeoff, Table1PresetShape) {
  auto s = structure_preset("table1");
  const PartySet A = party_bit(0), B = party_bit(1), C = party_bit(2), D = party_bit(3);
  EXPECT_TRUE(s.allows(0, B | C));
  EXPECT_TRUE(s.allows(0, B | C | D));
  EXPECT_FALSE(s.allows(0, C | D));
  EXPECT_TRUE(s.allows(2, A | D));
  EXPECT_FALSE(s.allows(2, A | B));
  EXPECT_EQ(s.relations().size(), 6u);
}

TEST(Tradeoff, ContextualOptimum) {
  auto r = contextual_tradeoff();
  EXPECT_EQ(r.optimum, 12);
  ASSERT_EQ(r.terms.size(), 3u);
  for (const auto& t : r.terms) EXPECT_EQ(t.value, 4) << t.name;
  EXPECT_GE(contextual_cyc6_value(), cyc6_noncontextual_value());
}
