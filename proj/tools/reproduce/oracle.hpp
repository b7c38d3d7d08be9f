#pragma once

#include <vector>

#include "rcpoly/constraints.hpp"
#include "rcpoly/rational.hpp"

namespace rcpoly::oracle {

/// Vertices of {x >= 0 : rows} by brute force: every choice of rank-many
/// columns is tried as a basis, the square system is solved by plain rational
/// Gaussian elimination, and nonnegative solutions are kept. Shares no code
/// with the double description implementation. Result is sorted and unique.
///
/// Only usable for small systems (the number of bases is C(n, rank)).
std::vector<std::vector<Rational>> basic_feasible_solutions(const ConstraintSystem& system);

/// Row rank by dense rational elimination.
std::size_t dense_rank(const ConstraintSystem& system);

}  // namespace rcpoly::oracle
