#include "oracle.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace rcpoly::oracle {

namespace {

using Dense = std::vector<std::vector<Rational>>;

// Rows of [A | b] in row echelon form, zero rows dropped.
Dense echelon(const ConstraintSystem& system) {
  const std::size_t n = system.variables();
  Dense m;
  for (const auto& row : system.rows()) {
    std::vector<Rational> r(n + 1);
    for (const auto& [j, c] : row.terms) r[j] = c;
    r[n] = row.rhs;
    m.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m.size(); ++col) {
    std::size_t p = rank;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      Rational f = m[i][col] / m[rank][col];
      for (std::size_t j = col; j <= n; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  for (std::size_t i = rank; i < m.size(); ++i) {
    if (m[i][n] != 0) throw std::invalid_argument("inconsistent equality system");
  }
  m.resize(rank);
  return m;
}

// Solves the square system restricted to `cols`; false when singular.
bool solve(const Dense& rows, const std::vector<std::size_t>& cols, std::vector<Rational>& out) {
  const std::size_t r = rows.size();
  const std::size_t n = rows.empty() ? 0 : rows[0].size() - 1;
  Dense a(r, std::vector<Rational>(r + 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) a[i][k] = rows[i][cols[k]];
    a[i][r] = rows[i][n];
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t p = c;
    while (p < r && a[p][c] == 0) ++p;
    if (p == r) return false;
    std::swap(a[p], a[c]);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= r; ++j) a[i][j] -= f * a[c][j];
    }
  }
  out.assign(r, Rational(0));
  for (std::size_t i = 0; i < r; ++i) out[i] = a[i][r] / a[i][i];
  return true;
}

}  // namespace

std::size_t dense_rank(const ConstraintSystem& system) { return echelon(system).size(); }

std::vector<std::vector<Rational>> basic_feasible_solutions(const ConstraintSystem& system) {
  const Dense rows = echelon(system);
  const std::size_t n = system.variables();
  const std::size_t r = rows.size();
  std::set<std::vector<Rational>> found;

  std::vector<std::size_t> cols(r);
  for (std::size_t i = 0; i < r; ++i) cols[i] = i;
  std::vector<Rational> xb;
  while (true) {
    if (solve(rows, cols, xb)) {
      bool nonneg = true;
      for (const auto& v : xb) nonneg = nonneg && v >= 0;
      if (nonneg) {
        std::vector<Rational> x(n);
        for (std::size_t k = 0; k < r; ++k) x[cols[k]] = xb[k];
        found.insert(std::move(x));
      }
    }
    // next r-subset of {0..n-1} in lexicographic order
    std::size_t i = r;
    while (i > 0 && cols[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t k = i; k < r; ++k) cols[k] = cols[k - 1] + 1;
  }
  return {found.begin(), found.end()};
}

}  // namespace rcpoly::oracle
