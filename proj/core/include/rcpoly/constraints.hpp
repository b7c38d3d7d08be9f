#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcpoly/rational.hpp"
#include "rcpoly/scenario.hpp"
#include "rcpoly/spacetime.hpp"

namespace rcpoly {

enum class RowKind { normalization, marginal, pin };

/// One equality sum_j coeff_j * P_j = rhs, stored sparsely with ascending indices.
struct ConstraintRow {
  std::vector<std::pair<std::uint32_t, Rational>> terms;
  Rational rhs;
  RowKind kind = RowKind::marginal;
};

/// Equality rows over the box-vector space; nonnegativity of every entry is implicit.
///
/// Rows are stored sign-normalized (first coefficient positive) and duplicate-free.
class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  explicit ConstraintSystem(Scenario scenario) : scenario_(std::move(scenario)) {}

  const Scenario& scenario() const { return scenario_; }
  const std::vector<ConstraintRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  std::size_t variables() const { return scenario_.vector_length(); }

  /// Normalizes the sign and drops the row if an identical one is present.
  /// Returns false for dropped (duplicate or empty) rows.
  bool add_row(ConstraintRow row);

  /// Appends all rows of another system over the same scenario.
  void append(const ConstraintSystem& other);

  bool satisfied_by(std::span<const Rational> x) const;

  /// Indices of rows violated by x.
  std::vector<std::size_t> violated_rows(std::span<const Rational> x) const;

  std::size_t count(RowKind kind) const;

 private:
  Scenario scenario_;
  std::vector<ConstraintRow> rows_;
  std::vector<std::string> keys_;  // sorted canonical row keys, for dedup
};

/// One row per joint input: sum_a P(a|x) = 1.
ConstraintSystem normalization_rows(const Scenario& scenario);

/// Rows making the marginal on `subset` independent of the complementary inputs:
/// every complementary input is tied to the all-zeros anchor.
ConstraintSystem marginal_rows(const Scenario& scenario, PartySet subset);

/// Normalization plus marginal rows for every proper subset that no outside
/// party may signal to. Single-party marginals are always included.
ConstraintSystem rc_rows(const Scenario& scenario, const SignalingStructure& structure);

/// Normalization plus marginal rows for every proper nonempty subset.
ConstraintSystem ns_rows(const Scenario& scenario);

/// Exact rank of the coefficient matrix.
std::size_t rank(const ConstraintSystem& system);

/// Affine dimension vector_length - rank (for a feasible system).
std::size_t dimension(const ConstraintSystem& system);

/// [m(n-1)+1]^3 + m^2 (m-1)(n-1)^2 - 1 for the three-party (3,m,n) RC polytope.
std::int64_t closed_form_dimension(int inputs, int outputs);

/// cdd H-representation: equalities listed on a "linearity" line, nonnegativity
/// rows appended, all entries rational.
std::string to_ine(const ConstraintSystem& system);

}  // namespace rcpoly
