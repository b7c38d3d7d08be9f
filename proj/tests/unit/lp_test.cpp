#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "rcpoly/constraints.hpp"
#include "rcpoly/games.hpp"
#include "rcpoly/lp.hpp"

using namespace rcpoly;

namespace {

std::vector<Rational> random_objective(std::mt19937& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Rational> c(n);
  for (auto& v : c) v = d(rng);
  return c;
}

Rational best_vertex(const std::vector<std::vector<Rational>>& vertices, const std::vector<Rational>& c) {
  Rational best = evaluate(c, vertices.at(0));
  for (const auto& v : vertices) best = std::max(best, Rational(evaluate(c, v)));
  return best;
}

}  // namespace

TEST(Lp, GameExamples) {
  auto s = Scenario::uniform(3, 2, 2);
  auto rc = maximize({gyni().coefficients, rc_rows(s, structure_preset("fig1"))});
  ASSERT_EQ(rc.status, LpStatus::optimal);
  EXPECT_EQ(rc.value, Rational(1, 2));
  auto ns = maximize({gyni().coefficients, ns_rows(s)});
  EXPECT_EQ(ns.value, Rational(1, 3));
  EXPECT_TRUE(verify_certificate({gyni().coefficients, ns_rows(s)}, ns));
}

TEST(Lp, ZeroObjective) {
  auto sys = ns_rows(Scenario::uniform(2, 2, 2));
  auto sol = maximize({std::vector<Rational>(16), sys});
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_EQ(sol.value, 0);
  EXPECT_TRUE(sys.satisfied_by(sol.primal));
}

TEST(Lp, InfeasibleAndUnbounded) {
  Scenario s = Scenario::uniform(1, 1, 3);
  ConstraintSystem sys(s);
  ConstraintRow r;
  r.terms = {{0, Rational(1)}, {1, Rational(1)}};
  r.rhs = -1;
  sys.add_row(r);
  EXPECT_EQ(maximize({{1, 0, 0}, sys}).status, LpStatus::infeasible);

  ConstraintSystem open(s);
  ConstraintRow e;
  e.terms = {{0, Rational(1)}, {1, Rational(-1)}};
  open.add_row(e);
  EXPECT_EQ(maximize({{1, 0, 0}, open}).status, LpStatus::unbounded);
}

TEST(Lp, RedundantRowsAreHandled) {
  auto sys = ns_rows(Scenario::uniform(3, 2, 2));
  sys.append(rc_rows(Scenario::uniform(3, 2, 2), structure_preset("fig1")));
  auto sol = maximize({gwa().coefficients, sys});
  EXPECT_EQ(sol.value, Rational(3, 4));
  EXPECT_EQ(sol.dual.size(), sys.size());
  EXPECT_TRUE(verify_certificate({gwa().coefficients, sys}, sol));
}

TEST(Lp, PinnedSelfConsistency) {
  auto sys = rc_rows(Scenario::uniform(3, 2, 2), structure_preset("fig1"));
  auto g = gyni();
  auto free = maximize({g.coefficients, sys});
  auto pinned = maximize_with_equality({g.coefficients, sys}, g.coefficients, free.value);
  ASSERT_EQ(pinned.status, LpStatus::optimal);
  EXPECT_EQ(pinned.value, free.value);
  auto over = maximize_with_equality({g.coefficients, sys}, g.coefficients, free.value + 1);
  EXPECT_EQ(over.status, LpStatus::infeasible);
}

TEST(Lp, TamperedCertificateIsRejected) {
  auto sys = ns_rows(Scenario::uniform(2, 2, 2));
  LpProblem p{game_by_name("chsh").coefficients, sys};
  auto sol = maximize(p);
  ASSERT_TRUE(verify_certificate(p, sol));
  auto bad = sol;
  bad.value += 1;
  EXPECT_FALSE(verify_certificate(p, bad));
  bad = sol;
  bad.dual[0] -= 1;
  EXPECT_FALSE(verify_certificate(p, bad));
}

// The simplex optimum equals the best basic feasible solution found by brute force.
TEST(LpProperty, MatchesBasisOracleOnNoSignaling) {
  auto sys = ns_rows(Scenario::uniform(2, 2, 2));
  auto vertices = oracle::basic_feasible_solutions(sys);
  std::mt19937 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = random_objective(rng, 16, -9, 9);
    LpProblem p{c, sys};
    auto sol = maximize(p);
    ASSERT_EQ(sol.status, LpStatus::optimal);
    ASSERT_EQ(sol.value, best_vertex(vertices, c)) << trial;
    ASSERT_TRUE(verify_certificate(p, sol));
  }
}

// Random extra equalities on a product of simplices: feasibility and value agree
// with the oracle.
TEST(LpProperty, MatchesBasisOracleOnRandomSystems) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coef(-2, 2), rhs(-1, 2);
  Scenario s({1, 1}, {3, 3});
  int feasible = 0;
  for (int trial = 0; trial < 80; ++trial) {
    ConstraintSystem sys(s);
    ConstraintRow norm;
    for (std::uint32_t j = 0; j < 9; ++j) norm.terms.emplace_back(j, Rational(1));
    norm.rhs = 1;
    sys.add_row(norm);
    for (int k = 0; k < 2; ++k) {
      ConstraintRow r;
      for (std::uint32_t j = 0; j < 9; ++j) {
        int v = coef(rng);
        if (v) r.terms.emplace_back(j, Rational(v));
      }
      r.rhs = rhs(rng);
      if (!r.terms.empty()) sys.add_row(r);
    }
    std::vector<std::vector<Rational>> vertices;
    try {
      vertices = oracle::basic_feasible_solutions(sys);
    } catch (const std::invalid_argument&) {
      // inconsistent equalities
    }
    auto c = random_objective(rng, 9, -5, 5);
    LpProblem p{c, sys};
    auto sol = maximize(p);
    if (vertices.empty()) {
      ASSERT_EQ(sol.status, LpStatus::infeasible) << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(sol.status, LpStatus::optimal) << trial;
    ASSERT_EQ(sol.value, best_vertex(vertices, c)) << trial;
    ASSERT_TRUE(verify_certificate(p, sol));
  }
  EXPECT_GT(feasible, 10);
}

TEST(LpProperty, DeterministicAcrossRuns) {
  auto sys = rc_rows(Scenario::uniform(3, 2, 2), structure_preset("fig1"));
  auto a = maximize({ghz().coefficients, sys});
  auto b = maximize({ghz().coefficients, sys});
  EXPECT_EQ(a.primal, b.primal);
  EXPECT_EQ(a.dual, b.dual);
  EXPECT_EQ(a.pivots, b.pivots);
}
