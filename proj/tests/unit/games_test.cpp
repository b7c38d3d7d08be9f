#include <gtest/gtest.h>

#include "rcpoly/constraints.hpp"
#include "rcpoly/error.hpp"
#include "rcpoly/games.hpp"
#include "rcpoly/lp.hpp"

using namespace rcpoly;

namespace {

const Scenario s322 = Scenario::uniform(3, 2, 2);

// Maximum over deterministic boxes, each built entry by entry from a strategy
// counter (party p answers digit (p, x_p) of the counter in base k_p).
Rational deterministic_oracle(const GameFunctional& g) {
  const Scenario& s = g.scenario;
  const int n = s.parties();
  std::vector<int> digits;
  for (int p = 0; p < n; ++p) {
    for (int x = 0; x < s.inputs()[p]; ++x) digits.push_back(s.outputs()[p]);
  }
  std::vector<int> strategy(digits.size(), 0);
  std::optional<Rational> best;
  while (true) {
    auto box = make_box_from_predicate(s, Rational(1), [&](std::span<const int> x, std::span<const int> a) {
      std::size_t off = 0;
      for (int p = 0; p < n; ++p) {
        if (a[p] != strategy[off + x[p]]) return false;
        off += s.inputs()[p];
      }
      return true;
    });
    Rational v = g.value(box.entries);
    if (!best || v > *best) best = v;
    std::size_t d = 0;
    while (d < digits.size() && ++strategy[d] == digits[d]) strategy[d++] = 0;
    if (d == digits.size()) break;
  }
  return *best;
}

}  // namespace

TEST(Games, ClassicalValueMatchesDeterministicOracle) {
  for (const auto& name : game_names()) {
    auto g = game_by_name(name);
    EXPECT_EQ(classical_value(g), deterministic_oracle(g)) << name;
    EXPECT_EQ(classical_value(g, 3), classical_value(g)) << name;
  }
  EXPECT_EQ(classical_value(gyni()), Rational(1, 4));
  EXPECT_EQ(classical_value(gwa()), Rational(3, 4));
  EXPECT_THROW(game_by_name("unknown"), ConfigurationError);
}

TEST(Games, ChshValues) {
  auto chsh = game_by_name("chsh");
  EXPECT_EQ(classical_value(chsh), 2);
  EXPECT_EQ(maximize({chsh.coefficients, ns_rows(chsh.scenario)}).value, 4);
  EXPECT_EQ(chsh.value(pr_box().entries), 4);
}

TEST(Games, StrictCompilationRejectsIllDefinedMarginals) {
  auto fig1 = structure_preset("fig1");
  EXPECT_THROW(compile(chsh_pair(0, 2), s322, fig1), CompilationError);
  EXPECT_NO_THROW(compile(chsh_pair(0, 1), s322, fig1));
  EXPECT_NO_THROW(compile(chsh_pair(0, 2), s322, fig1, MarginalPolicy::pinned));
  EXPECT_NO_THROW(compile(chsh_pair(0, 2), s322, SignalingStructure(3)));
}

TEST(Games, PinnedCompilationMatchesUnstructuredCompile) {
  auto a = compile(svetlichny(0, 1, 2), s322, structure_preset("fig1"), MarginalPolicy::pinned);
  auto b = compile(svetlichny(0, 1, 2), s322);
  EXPECT_EQ(a.coefficients, b.coefficients);
}

// Where the marginal is well-defined, averaging changes the functional only by
// a combination of the constraint rows, so it agrees on every feasible box.
TEST(Games, AveragedCompilationAgreesWhereWellDefined) {
  auto fig1 = structure_preset("fig1");
  auto rc = rc_rows(s322, fig1);
  for (auto e : {chsh_pair(0, 1), chsh_pair(1, 2)}) {
    auto strict = compile(e, s322, fig1);
    auto avg = compile(e, s322, fig1, MarginalPolicy::averaged);
    ConstraintRow diff;
    for (std::uint32_t j = 0; j < s322.vector_length(); ++j) {
      Rational d = avg.coefficients[j] - strict.coefficients[j];
      if (sgn(d) != 0) diff.terms.emplace_back(j, d);
    }
    ConstraintSystem both = rc;
    both.add_row(std::move(diff));
    EXPECT_EQ(rank(both), rank(rc));
  }
  auto ill = compile(chsh_pair(0, 2), s322, fig1, MarginalPolicy::averaged);
  Rational total = 0;
  for (const auto& c : ill.coefficients) total += c;
  auto pinned = compile(chsh_pair(0, 2), s322, fig1, MarginalPolicy::pinned);
  Rational pinned_total = 0;
  for (const auto& c : pinned.coefficients) pinned_total += c;
  EXPECT_EQ(total, pinned_total);
  EXPECT_NE(ill.coefficients, pinned.coefficients);
}

TEST(Games, NamedBoxesAreValid) {
  auto rc = rc_rows(s322, structure_preset("fig1"));
  for (const auto& box : {gyni_box(), gwa_box()}) {
    EXPECT_TRUE(validate_box(box).empty());
    EXPECT_TRUE(rc.satisfied_by(box.entries));
    EXPECT_FALSE(ns_rows(s322).satisfied_by(box.entries));
  }
  EXPECT_EQ(gyni().value(gyni_box().entries), Rational(1, 2));
  EXPECT_EQ(gwa().value(gwa_box().entries), 1);
  EXPECT_TRUE(ns_rows(Scenario::uniform(2, 2, 2)).satisfied_by(pr_box().entries));
}

TEST(Games, UniqueGameBox) {
  auto perms = chsh_permutations();
  auto box = unique_game_box(perms, 2);
  EXPECT_TRUE(validate_box(box).empty());
  EXPECT_TRUE(rc_rows(s322, structure_preset("fig1")).satisfied_by(box.entries));
  auto game = unique_game(perms, 2);
  EXPECT_EQ(classical_value(game), Rational(3, 4));
  EXPECT_EQ(maximize({game.coefficients, ns_rows(game.scenario)}).value, 1);
  auto bad = perms;
  bad[0][0] = {0, 0};
  EXPECT_THROW(unique_game_box(bad, 2), ConfigurationError);
}

TEST(Games, LocalDecompositionReconstructsBox) {
  Scenario s({2, 1}, {2, 2});
  // Q(a,b|x): b uniform, a = b for x = 0 and a = 1 - b for x = 1, mixed 3:1 with uniform noise.
  BoxVector q{s, std::vector<Rational>(s.vector_length())};
  for (int x = 0; x < 2; ++x) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        bool hit = x == 0 ? a == b : a != b;
        q.entries[s.flatten(std::vector{x, 0}, std::vector{a, b})] = hit ? Rational(7, 16) : Rational(1, 16);
      }
    }
  }
  auto terms = local_decomposition(q);
  Rational total = 0;
  std::vector<Rational> rebuilt(q.entries.size());
  for (const auto& t : terms) {
    total += t.weight;
    for (int x = 0; x < 2; ++x) rebuilt[s.flatten(std::vector{x, 0}, std::vector{t.strategy[x], t.b})] += t.weight;
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(rebuilt, q.entries);
}

TEST(Games, SymmetricExtensionOfPrBox) {
  auto ext = symmetric_extension(pr_box());
  EXPECT_TRUE(validate_box(ext).empty());
  EXPECT_TRUE(rc_rows(s322, structure_preset("fig1")).satisfied_by(ext.entries));
  // Both outer pairs reproduce the PR box.
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          Rational ab = 0, cb = 0;
          for (int c = 0; c < 2; ++c) {
            ab += ext.at(std::vector{x, y, 0}, std::vector{a, b, c});
            cb += ext.at(std::vector{0, y, x}, std::vector{c, b, a});
          }
          EXPECT_EQ(ab, pr_box().at(std::vector{x, y}, std::vector{a, b}));
          EXPECT_EQ(cb, pr_box().at(std::vector{x, y}, std::vector{a, b}));
        }
      }
    }
  }
  auto signaling = pr_box();
  signaling.entries[0] += Rational(1, 4);
  signaling.entries[1] -= Rational(1, 4);
  EXPECT_THROW(symmetric_extension(signaling), ConfigurationError);
}
