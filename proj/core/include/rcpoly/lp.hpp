#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rcpoly/constraints.hpp"
#include "rcpoly/rational.hpp"

namespace rcpoly {

/// maximize objective . x  subject to  system rows,  x >= 0.
struct LpProblem {
  std::vector<Rational> objective;
  ConstraintSystem system;
};

enum class LpStatus { optimal, infeasible, unbounded };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational value;                // optimal value (when optimal)
  std::vector<Rational> primal;  // basic feasible solution, box-vector shaped
  std::vector<Rational> dual;    // one multiplier per system row
  std::size_t pivots = 0;
};

/// Exact two-phase primal simplex with Bland's rule (lowest-index entering
/// column, lowest-index leaving basic variable on ratio ties). Deterministic for
/// a given row and column order. The returned certificate is verified before
/// returning; a failed verification throws std::logic_error.
LpSolution maximize(const LpProblem& problem);

/// Same as maximize with one extra row pinning `functional . x = value`. The
/// pin row is appended to the system (sign-normalized like every other row),
/// so its multiplier is the last entry of `dual` unless the row duplicated an
/// existing one. An unsatisfiable pin yields status infeasible.
LpSolution maximize_with_equality(const LpProblem& problem, std::span<const Rational> functional,
                                  const Rational& value);

/// Checks primal feasibility, A^T y >= c, and b.y == c.x == value exactly.
bool verify_certificate(const LpProblem& problem, const LpSolution& solution);

}  // namespace rcpoly
