#include "rcpoly/lp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "rcpoly/error.hpp"
#include "rcpoly/linalg.hpp"

namespace rcpoly {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

namespace {

using SparseRow = std::vector<std::pair<std::uint32_t, Rational>>;

const Rational* find_entry(const SparseRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

// row -= f * pivot
void subtract_scaled(SparseRow& row, const Rational& f, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(std::move(row[i++]));
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -(f * pivot[j].second));
      ++j;
    } else {
      Rational v = row[i].second - f * pivot[j].second;
      if (sgn(v) != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  row = std::move(out);
}

// Two-phase tableau over structural columns 0..n-1 and artificial columns n..n+m-1.
// The artificial block of the tableau is B^-1 of the sign-adjusted system, so the
// reduced costs of artificial columns yield the dual solution.
class Tableau {
 public:
  Tableau(std::vector<SparseRow> rows, std::vector<Rational> rhs, std::size_t n)
      : n_(n), m_(rows.size()), rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      rows_[i].emplace_back(static_cast<std::uint32_t>(n_ + i), Rational(1));
      basis_[i] = n_ + i;
    }
    cost_.assign(n_ + m_, Rational(0));
    reduced_ = cost_;
  }

  // Sets objective coefficients (structural only; artificials get `artificial_cost`)
  // and recomputes reduced costs for the current basis.
  void set_objective(const std::vector<Rational>& c, const Rational& artificial_cost) {
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = c[j];
    for (std::size_t j = n_; j < n_ + m_; ++j) cost_[j] = artificial_cost;
    reduced_ = cost_;
    value_ = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (const auto& [j, v] : rows_[i]) reduced_[j] -= cb * v;
      value_ += cb * rhs_[i];
    }
  }

  // Bland's rule. Returns false if unbounded.
  bool optimize(std::size_t entering_limit) {
    while (true) {
      std::size_t e = SIZE_MAX;
      for (std::size_t j = 0; j < entering_limit; ++j) {
        if (sgn(reduced_[j]) > 0) {
          e = j;
          break;
        }
      }
      if (e == SIZE_MAX) return true;
      std::size_t r = SIZE_MAX;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational* a = find_entry(rows_[i], static_cast<std::uint32_t>(e));
        if (!a || sgn(*a) <= 0) continue;
        Rational ratio = rhs_[i] / *a;
        if (r == SIZE_MAX || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r == SIZE_MAX) return false;
      pivot(r, e);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    ++pivots_;
    const Rational inv = 1 / *find_entry(rows_[r], static_cast<std::uint32_t>(e));
    for (auto& [j, v] : rows_[r]) v *= inv;
    rhs_[r] *= inv;
    const SparseRow& pr = rows_[r];
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Rational* a = find_entry(rows_[i], static_cast<std::uint32_t>(e));
      if (!a) continue;
      Rational f = *a;
      subtract_scaled(rows_[i], f, pr);
      rhs_[i] -= f * rhs_[r];
    }
    if (sgn(reduced_[e]) != 0) {
      Rational f = reduced_[e];
      for (const auto& [j, v] : pr) reduced_[j] -= f * v;
      value_ += f * rhs_[r];
    }
    basis_[r] = e;
  }

  // Initial basis: a row with zero right-hand side can take any structural
  // column with a nonzero entry (the pivot leaves every right-hand side
  // unchanged), which spares phase 1 the degenerate pivots on those rows.
  void crash_zero_rows() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_ || sgn(rhs_[i]) != 0) continue;
      for (const auto& [j, v] : rows_[i]) {
        if (j < n_) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // After phase 1, pivots basic artificials out wherever a structural column allows.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (const auto& [j, v] : rows_[i]) {
        if (j < n_) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // Pivots the columns of `target` into the basis in increasing column order.
  // Returns false if they are not independent.
  bool crash_to(const std::vector<std::size_t>& target) {
    std::vector<bool> wanted(n_ + m_, false);
    for (auto j : target) wanted[j] = true;
    std::vector<bool> basic(n_ + m_, false);
    for (auto j : basis_) basic[j] = true;
    for (auto j : target) {
      if (basic[j]) continue;
      std::size_t r = SIZE_MAX;
      for (std::size_t i = 0; i < m_ && r == SIZE_MAX; ++i) {
        if (!wanted[basis_[i]] && find_entry(rows_[i], static_cast<std::uint32_t>(j))) r = i;
      }
      if (r == SIZE_MAX) return false;
      basic[basis_[r]] = false;
      basic[j] = true;
      pivot(r, j);
    }
    return true;
  }

  // Nonnegative right-hand sides and every basic artificial at zero.
  bool primal_feasible() const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (sgn(rhs_[i]) < 0 || (basis_[i] >= n_ && sgn(rhs_[i]) != 0)) return false;
    }
    return true;
  }

  const Rational& value() const { return value_; }
  std::size_t pivots() const { return pivots_; }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

  // Dual of the sign-adjusted rows: y_i = c_B B^-1 e_i = cost(art i) - reduced(art i).
  std::vector<Rational> dual() const {
    std::vector<Rational> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = cost_[n_ + i] - reduced_[n_ + i];
    return y;
  }

 private:
  std::size_t n_, m_;
  std::vector<SparseRow> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_, reduced_;
  Rational value_;
  std::size_t pivots_ = 0;
};

// Dense double-precision run of the same two-phase Bland simplex. Only its
// final basis is used: the exact tableau is pivoted onto it, re-checked, and
// finished exactly, so rounding can cost time but never correctness.
class FloatGuide {
 public:
  FloatGuide(const std::vector<SparseRow>& rows, const std::vector<Rational>& rhs, std::size_t n)
      : n_(n), m_(rows.size()), w_(n + m_), a_(m_ * w_, 0.0), b_(m_), basis_(m_), reduced_(w_, 0.0) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& [j, v] : rows[i]) a_[i * w_ + j] = v.get_d();
      a_[i * w_ + n_ + i] = 1.0;
      b_[i] = rhs[i].get_d();
      basis_[i] = n_ + i;
    }
  }

  std::optional<std::vector<std::size_t>> solve(const std::vector<Rational>& objective) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (b_[i] != 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(at(i, j)) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
    }
    std::vector<double> cost(w_, 0.0);
    for (std::size_t j = n_; j < w_; ++j) cost[j] = -1.0;
    set_objective(cost);
    if (!optimize() || value() < -1e-7) return std::nullopt;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(at(i, j)) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
    }
    std::fill(cost.begin(), cost.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = objective[j].get_d();
    set_objective(cost);
    if (!optimize()) return std::nullopt;
    auto out = basis_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr double kPivotTol = 1e-7;
  static constexpr double kCostTol = 1e-9;
  static constexpr double kZero = 1e-12;
  static constexpr std::size_t kMaxPivots = 1000000;

  double& at(std::size_t i, std::size_t j) { return a_[i * w_ + j]; }

  void set_objective(const std::vector<double>& cost) {
    reduced_ = cost;
    value_ = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < w_; ++j) reduced_[j] -= cb * at(i, j);
      value_ += cb * b_[i];
    }
  }

  double value() const { return value_; }

  bool optimize() {
    for (std::size_t steps = 0; steps < kMaxPivots; ++steps) {
      // Largest reduced cost enters; ties keep the lowest index.
      std::size_t e = SIZE_MAX;
      double top = kCostTol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (reduced_[j] > top) {
          e = j;
          top = reduced_[j];
        }
      }
      if (e == SIZE_MAX) return true;
      std::size_t r = SIZE_MAX;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double v = at(i, e);
        if (v <= kPivotTol) continue;
        const double ratio = std::max(b_[i], 0.0) / v;
        // Near-ties go to the larger pivot element, for stability.
        if (r == SIZE_MAX || ratio < best - kZero || (ratio <= best + kZero && v > at(r, e))) {
          r = i;
          best = ratio;
        }
      }
      if (r == SIZE_MAX) return false;
      pivot(r, e);
    }
    return false;
  }

  void pivot(std::size_t r, std::size_t e) {
    const double inv = 1.0 / at(r, e);
    nz_.clear();
    for (std::size_t j = 0; j < w_; ++j) {
      double& v = at(r, j);
      if (v == 0.0) continue;
      v *= inv;
      if (std::abs(v) < kZero) v = 0.0;
      else nz_.push_back(j);
    }
    at(r, e) = 1.0;
    b_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      double* row = &a_[i * w_];
      const double* prow = &a_[r * w_];
      for (auto j : nz_) {
        row[j] -= f * prow[j];
        if (std::abs(row[j]) < kZero) row[j] = 0.0;
      }
      row[e] = 0.0;
      b_[i] -= f * b_[r];
      if (std::abs(b_[i]) < kZero) b_[i] = 0.0;
    }
    const double f = reduced_[e];
    if (f != 0.0) {
      for (auto j : nz_) reduced_[j] -= f * at(r, j);
      reduced_[e] = 0.0;
      value_ += f * b_[r];
    }
    basis_[r] = e;
  }

  std::size_t n_, m_, w_;
  std::vector<double> a_, b_;
  std::vector<std::size_t> basis_;
  std::vector<double> reduced_;
  std::vector<std::size_t> nz_;
  double value_ = 0.0;
};

}  // namespace

LpSolution maximize(const LpProblem& problem) {
  const ConstraintSystem& sys = problem.system;
  const std::size_t n = sys.variables();
  if (problem.objective.size() != n) {
    throw BoundsError("objective has " + std::to_string(problem.objective.size()) + " coefficients for " +
                      std::to_string(n) + " variables");
  }

  // Keep a linearly independent subset of rows; the rest are checked afterwards.
  linalg::IntegerEchelon ech;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (ech.insert(linalg::to_integer_row(sys.rows()[i].terms))) kept.push_back(i);
  }

  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  std::vector<int> sign;
  for (std::size_t i : kept) {
    const auto& row = sys.rows()[i];
    int s = sgn(row.rhs) < 0 ? -1 : 1;
    SparseRow r = row.terms;
    if (s < 0) {
      for (auto& [j, v] : r) v = -v;
    }
    rows.push_back(std::move(r));
    rhs.push_back(s < 0 ? Rational(-row.rhs) : row.rhs);
    sign.push_back(s);
  }

  LpSolution sol;
  std::optional<Tableau> guided;
  if (auto basis = FloatGuide(rows, rhs, n).solve(problem.objective)) {
    Tableau g(rows, rhs, n);
    if (g.crash_to(*basis) && g.primal_feasible()) {
      g.drive_out_artificials();
      g.set_objective(problem.objective, Rational(0));
      guided.emplace(std::move(g));
    }
  }
  Tableau t = guided ? std::move(*guided) : Tableau(std::move(rows), std::move(rhs), n);
  if (!guided) {
    t.crash_zero_rows();
    t.set_objective(std::vector<Rational>(n, Rational(0)), Rational(-1));
    t.optimize(n);
    sol.pivots = t.pivots();
    if (sgn(t.value()) < 0) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    t.drive_out_artificials();
    t.set_objective(problem.objective, Rational(0));
  }
  if (!t.optimize(n)) {
    sol.status = LpStatus::unbounded;
    sol.pivots = t.pivots();
    return sol;
  }
  sol.pivots = t.pivots();
  sol.primal = t.primal();
  if (!sys.satisfied_by(sol.primal)) {
    // A dropped dependent row is inconsistent with the kept ones.
    sol.status = LpStatus::infeasible;
    sol.primal.clear();
    return sol;
  }
  sol.status = LpStatus::optimal;
  sol.value = t.value();
  sol.dual.assign(sys.size(), Rational(0));
  auto y = t.dual();
  for (std::size_t k = 0; k < kept.size(); ++k) sol.dual[kept[k]] = sign[k] < 0 ? Rational(-y[k]) : y[k];
  if (!verify_certificate(problem, sol)) throw std::logic_error("simplex produced an invalid optimality certificate");
  return sol;
}

LpSolution maximize_with_equality(const LpProblem& problem, std::span<const Rational> functional,
                                  const Rational& value) {
  LpProblem pinned = problem;
  ConstraintRow row;
  row.kind = RowKind::pin;
  row.rhs = value;
  for (std::size_t j = 0; j < functional.size(); ++j) {
    if (sgn(functional[j]) != 0) row.terms.emplace_back(static_cast<std::uint32_t>(j), functional[j]);
  }
  if (row.terms.empty()) {
    if (value != 0) return LpSolution{};
  } else {
    pinned.system.add_row(std::move(row));
  }
  return maximize(pinned);
}

bool verify_certificate(const LpProblem& problem, const LpSolution& solution) {
  if (solution.status != LpStatus::optimal) return false;
  const ConstraintSystem& sys = problem.system;
  const std::size_t n = sys.variables();
  if (solution.primal.size() != n || solution.dual.size() != sys.size()) return false;
  for (const auto& v : solution.primal) {
    if (sgn(v) < 0) return false;
  }
  if (!sys.satisfied_by(solution.primal)) return false;
  Rational primal_value = evaluate(problem.objective, solution.primal);
  // A^T y >= c and b.y.
  std::vector<Rational> aty(n);
  Rational dual_value = 0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const Rational& y = solution.dual[i];
    if (sgn(y) == 0) continue;
    for (const auto& [j, v] : sys.rows()[i].terms) aty[j] += y * v;
    dual_value += y * sys.rows()[i].rhs;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (aty[j] < problem.objective[j]) return false;
  }
  return primal_value == solution.value && dual_value == solution.value;
}

}  // namespace rcpoly
