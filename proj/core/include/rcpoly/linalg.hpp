#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rcpoly/rational.hpp"

namespace rcpoly::linalg {

/// Sparse integer row: (column, value) pairs sorted by column, no zero values.
using SparseIntRow = std::vector<std::pair<std::uint32_t, BigInt>>;

/// Online fraction-free row echelon form over the integers.
///
/// Each inserted row is reduced against stored pivot rows by integer
/// combinations (p*row - c*pivot) followed by content removal, so entries stay
/// integral and small. Row order is the insertion order; pivots are the first
/// nonzero column of each reduced row.
class IntegerEchelon {
 public:
  /// Returns true iff the row is independent of the rows inserted so far.
  bool insert(SparseIntRow row);

  std::size_t rank() const { return pivots_.size(); }
  const std::map<std::uint32_t, SparseIntRow>& pivot_rows() const { return pivots_; }

 private:
  std::map<std::uint32_t, SparseIntRow> pivots_;
};

/// Scales a rational row to a primitive integer row (common denominator cleared,
/// content removed).
SparseIntRow to_integer_row(std::span<const std::pair<std::uint32_t, Rational>> row);

/// Divides by the gcd of all values and makes the first value positive.
void make_primitive(SparseIntRow& row);

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// In-place reduced row echelon form; returns pivot columns. Zero rows are moved
/// to the bottom.
std::vector<std::size_t> rref(Matrix& m);

/// Basis of {v : m v = 0}, one vector per free column, with 1 at that column.
std::vector<std::vector<Rational>> nullspace(const Matrix& m);

/// Exact rank of a small dense integer matrix by Bareiss elimination. Uses
/// int64 with overflow checks and falls back to GMP when a minor overflows.
std::size_t bareiss_rank(std::vector<std::int64_t> entries, std::size_t rows, std::size_t cols);

}  // namespace rcpoly::linalg
