#include "rcpoly/linalg.hpp"

#include <algorithm>
#include <optional>

namespace rcpoly::linalg {

void make_primitive(SparseIntRow& row) {
  if (row.empty()) return;
  BigInt g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.front().second) < 0) g = -g;
  if (g != 1) {
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

SparseIntRow to_integer_row(std::span<const std::pair<std::uint32_t, Rational>> row) {
  BigInt l = 1;
  for (const auto& [c, v] : row) {
    if (sgn(v) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  SparseIntRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    if (sgn(v) == 0) continue;
    BigInt scaled = v.get_num() * (l / v.get_den());
    out.emplace_back(c, std::move(scaled));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  make_primitive(out);
  return out;
}

namespace {

// a*x - b*y over sparse rows.
SparseIntRow combine(const BigInt& a, const SparseIntRow& x, const BigInt& b, const SparseIntRow& y) {
  SparseIntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  BigInt v;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -(b * y[j].second));
      ++j;
    } else {
      v = a * x[i].second - b * y[j].second;
      if (sgn(v) != 0) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

bool IntegerEchelon::insert(SparseIntRow row) {
  make_primitive(row);
  while (!row.empty()) {
    auto it = pivots_.find(row.front().first);
    if (it == pivots_.end()) {
      pivots_.emplace(row.front().first, std::move(row));
      return true;
    }
    const SparseIntRow& pivot = it->second;
    BigInt g = gcd(pivot.front().second, row.front().second);
    BigInt p = pivot.front().second / g;
    BigInt c = row.front().second / g;
    row = combine(p, row, c, pivot);
    make_primitive(row);
  }
  return false;
}

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Rational>> nullspace(const Matrix& m) {
  Matrix work = m;
  auto pivots = rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

std::size_t bareiss_rank_big(const std::vector<std::int64_t>& entries, std::size_t rows, std::size_t cols) {
  std::vector<BigInt> a(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) a[i] = static_cast<long>(entries[i]);
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p * cols + c]) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt v = a[r * cols + c] * a[i * cols + j] - a[i * cols + c] * a[r * cols + j];
        mpz_divexact(a[i * cols + j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = a[r * cols + c];
    ++r;
  }
  return r;
}

}  // namespace

std::size_t bareiss_rank(std::vector<std::int64_t> a, std::size_t rows, std::size_t cols) {
  const std::vector<std::int64_t> original = a;
  // Entries are kept below 2^62 so the 128-bit products below cannot overflow.
  constexpr __int128 hi = __int128{1} << 62;
  constexpr __int128 lo = -hi;
  std::int64_t prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    }
    const __int128 piv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const __int128 lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        __int128 v = (piv * a[i * cols + j] - lead * a[r * cols + j]) / prev;
        if (v < lo || v > hi) return bareiss_rank_big(original, rows, cols);
        a[i * cols + j] = static_cast<std::int64_t>(v);
      }
      a[i * cols + c] = 0;
    }
    prev = a[r * cols + c];
    ++r;
  }
  return r;
}

}  // namespace rcpoly::linalg
