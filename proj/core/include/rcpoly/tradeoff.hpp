#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rcpoly/constraints.hpp"
#include "rcpoly/games.hpp"
#include "rcpoly/lp.hpp"
#include "rcpoly/rational.hpp"
#include "rcpoly/scenario.hpp"
#include "rcpoly/spacetime.hpp"

namespace rcpoly {

struct TermValue {
  std::string name;
  Rational value;
};

/// Result of maximizing a sum of functionals over one constraint system.
struct TradeoffReport {
  std::string name;
  Scenario scenario;
  SignalingStructure structure;
  std::vector<std::string> expressions;
  Rational optimum;
  std::vector<Rational> witness;  // optimal box
  std::vector<TermValue> terms;   // each summand evaluated at the witness
  std::vector<Rational> dual;
  std::string certificate_hash;   // FNV-1a over the dual multipliers
  std::vector<std::string> notes;
};

/// Maximizes sum of the compiled expressions over rc_rows(scenario, structure).
/// Throws CompilationError (strict policy) when a term's marginal is not well-defined.
TradeoffReport tradeoff_sum(const Scenario& scenario,
                            const std::vector<CorrelatorExpression>& expressions,
                            const SignalingStructure& structure,
                            MarginalPolicy policy = MarginalPolicy::strict);

/// Same with already-compiled functionals.
TradeoffReport tradeoff_sum(const std::vector<GameFunctional>& functionals,
                            const SignalingStructure& structure);

/// Sve(ABC) + Sve(ABD) over the "table1" four-party structure, with the
/// unmeasured party averaged over its inputs.
TradeoffReport sve_pair();

/// Sve(ABC) + Sve(ABD) over the "fig2" four-party structure.
TradeoffReport sve_fig2();

/// CHSH_AB + CHSH_BC + CHSH_CA on (3,2,2); pairs whose marginal is not
/// well-defined are evaluated with the third party at input 0.
Rational chsh_triple_value(const SignalingStructure& structure);

struct TripleBound {
  Rational value;
  SignalingStructure structure;
  std::vector<std::pair<SignalingStructure, Rational>> per_structure;
};

/// Maximum of chsh_triple_value over every structure realizable on the grid.
TripleBound chsh_triple_bound(int grid_radius = 3, unsigned threads = 1);

struct PinnedValue {
  std::string pinned;     // expression held fixed
  Rational pin;           // its required value
  std::string maximized;  // expression maximized
  LpStatus status = LpStatus::infeasible;
  Rational value;
};

/// Svetlichny pins on (4,2,2): ABC = 8 -> max ABD, ABD = 8 -> max ABC,
/// ABC = 0 -> max ABD, ABD = 0 -> max ABC.
std::vector<PinnedValue> table1(const SignalingStructure& structure,
                                MarginalPolicy policy = MarginalPolicy::averaged);

struct Table1Candidate {
  SignalingStructure structure;
  Rational sum;
  Rational abd_given_abc8;
  Rational abc_given_abd8;
};

/// Scans enumerate_structures(4, grid_radius) for structures where the Svetlichny
/// pair sum is 12, pinning ABC = 8 allows ABD at most 4 and pinning ABD = 8
/// allows ABC at most 0. Under `strict`, structures whose pair marginals are
/// ill-defined are skipped. On radius 3 the averaged policy yields four
/// candidates, all line arrangements with two inner signaling parties; the
/// "table1" preset is one of them.
std::vector<Table1Candidate> find_table1_structures(int grid_radius, unsigned threads = 1,
                                                    MarginalPolicy policy = MarginalPolicy::averaged);

/// Box space for the nonlocality/contextuality trade-off: A and C have three
/// binary inputs, Bob's nine inputs are the contexts (B_i, B'_j), i, j in 0..2,
/// with composite output o = 2 b + b'.
Scenario contextual_scenario();
int bob_context(int i, int j);  // 3 i + j

/// Contexts containing one of the cycle edges B_i B'_i and B_{i+1} B'_i.
std::vector<std::pair<int, int>> cycle_edges();
/// The three extra co-measurable pairs (B_i, B'_{i+1}) not on the cycle.
std::vector<std::pair<int, int>> chord_edges();

/// Normalization, the B -> {A, C} relativistic pattern over Bob's contexts, and
/// no-disturbance of the (a, o, c | x, z) statistics of every Bob observable o
/// across the contexts that share it.
ConstraintSystem contextual_system();

/// Ch3(B,A) + Cyc6(B) + Ch3(B,C) compiled on the contextual scenario.
std::vector<GameFunctional> contextual_functionals();

TradeoffReport contextual_tradeoff();

/// Cyc6 alone over contextual_system().
Rational contextual_cyc6_value();

/// Maximum of the 6-cycle expression over +-1 assignments to the six observables.
Rational cyc6_noncontextual_value();

/// FNV-1a hash of the canonical strings of `values`, as 16 hex digits.
std::string certificate_hash(const std::vector<Rational>& values);

}  // namespace rcpoly
