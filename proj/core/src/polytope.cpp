#include "rcpoly/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "rcpoly/error.hpp"
#include "rcpoly/linalg.hpp"

namespace rcpoly {

std::string to_string(VertexTag tag) {
  switch (tag) {
    case VertexTag::CL: return "CL";
    case VertexTag::NS: return "NS";
    case VertexTag::RC: return "RC";
  }
  return "?";
}

// ---------------------------------------------------------------- VertexSet

void VertexSet::add(std::span<const std::int32_t> numerators, std::int64_t denominator, VertexTag tag) {
  if (numerators.size() != length()) throw BoundsError("vertex length does not match the scenario");
  if (denominator <= 0) throw BoundsError("vertex denominator must be positive");
  numerators_.insert(numerators_.end(), numerators.begin(), numerators.end());
  denominators_.push_back(denominator);
  tags_.push_back(tag);
}

void VertexSet::add(std::span<const Rational> vertex, VertexTag tag) {
  BigInt l = 1;
  for (const auto& v : vertex) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<std::int32_t> nums;
  nums.reserve(vertex.size());
  for (const auto& v : vertex) {
    BigInt n = v.get_num() * (l / v.get_den());
    if (!n.fits_sint_p()) throw OverflowError("vertex entry does not fit in 32 bits");
    nums.push_back(static_cast<std::int32_t>(n.get_si()));
  }
  if (!l.fits_slong_p()) throw OverflowError("vertex denominator does not fit in 64 bits");
  add(nums, l.get_si(), tag);
}

std::vector<Rational> VertexSet::vertex(std::size_t i) const {
  std::vector<Rational> out;
  out.reserve(length());
  for (std::int32_t n : numerators(i)) {
    Rational r(static_cast<long>(n), static_cast<unsigned long>(denominators_[i]));
    r.canonicalize();
    out.push_back(std::move(r));
  }
  return out;
}

VertexSet::Census VertexSet::census() const {
  Census c;
  for (VertexTag t : tags_) {
    if (t == VertexTag::CL) ++c.cl;
    else if (t == VertexTag::NS) ++c.ns;
    else ++c.rc;
  }
  return c;
}

void VertexSet::sort() {
  const std::size_t len = length();
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::int64_t da = denominators_[a], db = denominators_[b];
    for (std::size_t j = 0; j < len; ++j) {
      std::int64_t l = std::int64_t{numerators_[a * len + j]} * db;
      std::int64_t r = std::int64_t{numerators_[b * len + j]} * da;
      if (l != r) return l < r;
    }
    return false;
  });
  std::vector<std::int32_t> nums(numerators_.size());
  std::vector<std::int64_t> dens(size());
  std::vector<VertexTag> tags(size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::copy_n(numerators_.begin() + static_cast<std::ptrdiff_t>(order[i] * len), len,
                nums.begin() + static_cast<std::ptrdiff_t>(i * len));
    dens[i] = denominators_[order[i]];
    tags[i] = tags_[order[i]];
  }
  numerators_ = std::move(nums);
  denominators_ = std::move(dens);
  tags_ = std::move(tags);
}

// ------------------------------------------------------------ classification

namespace {

// Integer form of a system for checking scaled vectors y = den * x.
struct IntegerRows {
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> rows;
  std::vector<std::int64_t> rhs;

  explicit IntegerRows(const ConstraintSystem& sys) {
    for (const auto& r : sys.rows()) {
      std::vector<std::pair<std::uint32_t, std::int64_t>> row;
      for (const auto& [c, v] : r.terms) {
        if (v.get_den() != 1 || !v.get_num().fits_slong_p()) {
          throw OverflowError("integer row check needs small integer coefficients");
        }
        row.emplace_back(c, v.get_num().get_si());
      }
      if (r.rhs.get_den() != 1) throw OverflowError("integer row check needs integer right-hand sides");
      rows.push_back(std::move(row));
      rhs.push_back(r.rhs.get_num().get_si());
    }
  }

  bool satisfied(std::span<const std::int32_t> y, std::int64_t den) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::int64_t s = 0;
      for (const auto& [c, v] : rows[i]) s += v * y[c];
      if (s != rhs[i] * den) return false;
    }
    return true;
  }
};

bool is_deterministic(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0 || r == 1; });
}

}  // namespace

VertexTag tag_of(std::span<const Rational> v, const Scenario& scenario) {
  if (is_deterministic(v)) return VertexTag::CL;
  return ns_rows(scenario).satisfied_by(v) ? VertexTag::NS : VertexTag::RC;
}

VertexTag classify_vertex(std::span<const Rational> v, const ConstraintSystem& system) {
  auto bad = system.violated_rows(v);
  if (!bad.empty()) {
    throw ConfigurationError("vector violates " + std::to_string(bad.size()) + " rows of the system (first: row " +
                             std::to_string(bad.front()) + ")");
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (sgn(v[j]) < 0) throw ConfigurationError("entry " + std::to_string(j) + " is negative");
  }
  return tag_of(v, system.scenario());
}

bool is_extremal(std::span<const Rational> v, const ConstraintSystem& system) {
  if (!system.satisfied_by(v)) return false;
  if (std::any_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) < 0; })) return false;
  linalg::IntegerEchelon ech;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (sgn(v[j]) == 0) ech.insert({{static_cast<std::uint32_t>(j), BigInt(1)}});
  }
  for (const auto& row : system.rows()) {
    if (ech.rank() == v.size()) break;
    ech.insert(linalg::to_integer_row(row.terms));
  }
  return ech.rank() == v.size();
}

// ------------------------------------------------------- double description

namespace {

using Word = std::uint64_t;

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t system_fingerprint(const ConstraintSystem& system) {
  std::string s = system.scenario().describe();
  for (const auto& r : system.rows()) {
    for (const auto& [c, v] : r.terms) s += std::to_string(c) + ":" + v.get_str() + ",";
    s += "=" + r.rhs.get_str() + ";";
  }
  return fnv1a(s);
}

constexpr char kCheckpointMagic[8] = {'R', 'C', 'P', 'D', 'D', 'C', 'K', 'P'};
constexpr std::uint32_t kCheckpointVersion = 1;

// Ray state of the double description loop.
struct Cone {
  std::size_t coords = 0;       // N + 1 homogeneous coordinates
  std::size_t words = 0;        // bitmask words per zero set
  std::vector<std::int32_t> rays;
  std::vector<Word> zeros;      // zero sets over all constraint coordinates

  std::size_t size() const { return coords ? rays.size() / coords : 0; }
  std::span<const std::int32_t> ray(std::size_t i) const { return {rays.data() + i * coords, coords}; }
  std::span<const Word> zero(std::size_t i) const { return {zeros.data() + i * words, words}; }
};

void write_checkpoint(const std::filesystem::path& dir, std::uint64_t fingerprint,
                      const std::vector<Word>& processed, std::size_t inserted, const Cone& cone) {
  std::filesystem::create_directories(dir);
  const auto final_path = dir / "dd.ckpt";
  const auto tmp_path = dir / "dd.ckpt.tmp";
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write checkpoint " + tmp_path.string());
    auto put = [&](const void* p, std::size_t n) { out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); };
    std::uint64_t header[5] = {fingerprint, inserted, cone.coords, cone.words, cone.size()};
    put(kCheckpointMagic, sizeof kCheckpointMagic);
    put(&kCheckpointVersion, sizeof kCheckpointVersion);
    put(header, sizeof header);
    put(processed.data(), processed.size() * sizeof(Word));
    put(cone.rays.data(), cone.rays.size() * sizeof(std::int32_t));
    put(cone.zeros.data(), cone.zeros.size() * sizeof(Word));
    if (!out) throw FormatError("short write to checkpoint " + tmp_path.string());
  }
  std::filesystem::rename(tmp_path, final_path);
}

// Returns the number of insertions restored, or 0 when no usable checkpoint exists.
std::size_t read_checkpoint(const std::filesystem::path& dir, std::uint64_t fingerprint,
                            std::vector<Word>& processed, Cone& cone) {
  const auto path = dir / "dd.ckpt";
  std::ifstream in(path, std::ios::binary);
  if (!in) return 0;
  auto get = [&](void* p, std::size_t n) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!in) throw FormatError("truncated checkpoint " + path.string());
  };
  char magic[8];
  std::uint32_t version = 0;
  std::uint64_t header[5];
  get(magic, sizeof magic);
  get(&version, sizeof version);
  if (std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0) throw FormatError("not a checkpoint: " + path.string());
  if (version != kCheckpointVersion) {
    throw FormatError("checkpoint version " + std::to_string(version) + " is not supported");
  }
  get(header, sizeof header);
  if (header[0] != fingerprint || header[2] != cone.coords || header[3] != cone.words) return 0;
  std::vector<Word> proc(processed.size());
  get(proc.data(), proc.size() * sizeof(Word));
  Cone loaded;
  loaded.coords = cone.coords;
  loaded.words = cone.words;
  loaded.rays.resize(header[4] * cone.coords);
  loaded.zeros.resize(header[4] * cone.words);
  get(loaded.rays.data(), loaded.rays.size() * sizeof(std::int32_t));
  get(loaded.zeros.data(), loaded.zeros.size() * sizeof(Word));
  processed = std::move(proc);
  cone = std::move(loaded);
  return header[1];
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

class DoubleDescription {
 public:
  DoubleDescription(const ConstraintSystem& system, const EnumerationOptions& options)
      : system_(system), options_(options) {
    n_ = system.variables();
    setup();
  }

  EnumerationResult run();

 private:
  void setup();
  void zero_set(std::span<const std::int32_t> ray, Word* out) const;
  bool adjacent(const Word* z) const;
  void insert(std::size_t c);

  const ConstraintSystem& system_;
  const EnumerationOptions& options_;
  std::size_t n_ = 0;                   // box-vector length
  std::vector<std::size_t> constraint_coord_;  // homogeneous coordinate of each constraint
  std::size_t dim_ = 0;                 // dimension of the homogenized cone
  std::vector<std::int64_t> functionals_;  // constraints x dim_, coefficients in the null-space basis
  std::vector<std::size_t> unit_column_;   // basis index when a functional is a unit vector
  Cone cone_;
  std::vector<Word> processed_;
  mutable std::unordered_map<std::string, bool> adjacency_cache_;
  std::size_t max_rays_ = 0;
};

void DoubleDescription::setup() {
  // Homogenize: A x - b lambda = 0 over coordinates (x_0..x_{N-1}, lambda).
  const std::size_t cols = n_ + 1;
  linalg::Matrix h(system_.size(), cols);
  bool lambda_implied = false;
  for (std::size_t i = 0; i < system_.size(); ++i) {
    const auto& row = system_.rows()[i];
    bool all_pos = true, all_neg = true;
    for (const auto& [c, v] : row.terms) {
      h(i, c) = v;
      all_pos = all_pos && sgn(v) >= 0;
      all_neg = all_neg && sgn(v) <= 0;
    }
    h(i, n_) = -row.rhs;
    // sum of nonnegative multiples of x equal to rhs * lambda forces lambda >= 0.
    if ((all_pos && sgn(row.rhs) > 0) || (all_neg && sgn(row.rhs) < 0)) lambda_implied = true;
  }
  for (std::size_t j = 0; j < n_; ++j) constraint_coord_.push_back(j);
  if (!lambda_implied) constraint_coord_.push_back(n_);

  auto basis = linalg::nullspace(h);
  dim_ = basis.size();
  if (dim_ == 0) return;

  // B: dim_ x cols with basis vectors as rows; its RREF puts the identity on
  // `dim_` pivot coordinates, which seed the initial simplicial cone.
  linalg::Matrix b(dim_, cols);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = basis[i][j];
  }
  auto pivots = linalg::rref(b);
  const std::size_t m = constraint_coord_.size();
  if (pivots.size() != dim_) {
    throw ConfigurationError("feasible cone is not pointed; the system does not describe a polytope");
  }

  cone_.coords = cols;
  cone_.words = (m + 63) / 64;
  processed_.assign(cone_.words, 0);

  // Functional of constraint c in the basis given by the RREF rows: column c of b.
  functionals_.assign(m * dim_, 0);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<std::pair<std::uint32_t, Rational>> col;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (sgn(b(i, constraint_coord_[c])) != 0) col.emplace_back(static_cast<std::uint32_t>(i), b(i, constraint_coord_[c]));
    }
    auto ints = linalg::to_integer_row(col);
    for (const auto& [i, v] : ints) {
      if (!v.fits_slong_p()) throw OverflowError("constraint functional does not fit in 64 bits");
      functionals_[c * dim_ + i] = v.get_si();
    }
    unit_column_.push_back(ints.size() == 1 && ints.front().second == 1 ? ints.front().first : SIZE_MAX);
  }

  // Initial rays: rows of the RREF, scaled to primitive integers.
  std::vector<std::size_t> coord_to_constraint(cols, SIZE_MAX);
  for (std::size_t c = 0; c < m; ++c) coord_to_constraint[constraint_coord_[c]] = c;
  for (std::size_t i = 0; i < dim_; ++i) {
    std::vector<std::pair<std::uint32_t, Rational>> row;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(b(i, j)) != 0) row.emplace_back(static_cast<std::uint32_t>(j), b(i, j));
    }
    auto ints = linalg::to_integer_row(row);
    // to_integer_row makes the first entry positive; the pivot entry must be.
    bool flip = false;
    for (const auto& [j, v] : ints) {
      if (j == pivots[i]) flip = sgn(v) < 0;
    }
    std::vector<std::int32_t> ray(cols, 0);
    for (const auto& [j, v] : ints) {
      if (!v.fits_sint_p()) throw OverflowError("initial ray does not fit in 32 bits");
      ray[j] = static_cast<std::int32_t>(flip ? -v.get_si() : v.get_si());
    }
    cone_.rays.insert(cone_.rays.end(), ray.begin(), ray.end());
    cone_.zeros.resize(cone_.zeros.size() + cone_.words);
    zero_set(ray, cone_.zeros.data() + cone_.zeros.size() - cone_.words);
    std::size_t c = coord_to_constraint[pivots[i]];
    if (c == SIZE_MAX) {
      throw ConfigurationError("feasible cone is not pointed; the system does not describe a polytope");
    }
    processed_[c / 64] |= Word{1} << (c % 64);
  }
}

void DoubleDescription::zero_set(std::span<const std::int32_t> ray, Word* out) const {
  std::fill(out, out + cone_.words, 0);
  for (std::size_t c = 0; c < constraint_coord_.size(); ++c) {
    if (ray[constraint_coord_[c]] == 0) out[c / 64] |= Word{1} << (c % 64);
  }
}

// Rank of a small dense integer matrix, stopping as soon as it reaches `target`.
// Falls back to the overflow-safe routine when an int64 minor grows too large.
std::size_t rank_at_least(std::vector<std::int64_t>& a, std::size_t rows, std::size_t cols, std::size_t target) {
  constexpr __int128 limit = __int128{1} << 62;
  const std::vector<std::int64_t> original = a;
  std::int64_t prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows && r < target; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    }
    const __int128 piv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const __int128 lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        __int128 v = (piv * a[i * cols + j] - lead * a[r * cols + j]) / prev;
        if (v >= limit || v <= -limit) return linalg::bareiss_rank(original, rows, cols);
        a[i * cols + j] = static_cast<std::int64_t>(v);
      }
      a[i * cols + c] = 0;
    }
    prev = a[r * cols + c];
    ++r;
  }
  return r;
}

// Two rays are adjacent iff their common tight constraints have rank dim - 2.
// Both rays lie in the face cut out by those constraints, so the rank never
// exceeds dim - 2 and it suffices to find that many independent rows. Unit
// functionals (the seed constraints) are eliminated without arithmetic.
bool DoubleDescription::adjacent(const Word* z) const {
  std::string key(reinterpret_cast<const char*>(z), cone_.words * sizeof(Word));
  if (auto it = adjacency_cache_.find(key); it != adjacency_cache_.end()) return it->second;

  thread_local std::vector<char> covered;
  thread_local std::vector<std::size_t> residual, free_cols;
  thread_local std::vector<std::int64_t> mat;
  covered.assign(dim_, 0);
  residual.clear();
  std::size_t units = 0;
  for (std::size_t w = 0; w < cone_.words; ++w) {
    for (Word bits = z[w]; bits; bits &= bits - 1) {
      std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      if (unit_column_[c] != SIZE_MAX) {
        if (!covered[unit_column_[c]]) {
          covered[unit_column_[c]] = 1;
          ++units;
        }
      } else {
        residual.push_back(c);
      }
    }
  }
  bool adj;
  const std::size_t target = dim_ - 2 - std::min(units, dim_ - 2);
  if (target == 0) {
    adj = true;
  } else if (residual.size() < target) {
    adj = false;
  } else {
    free_cols.clear();
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!covered[j]) free_cols.push_back(j);
    }
    mat.clear();
    for (std::size_t c : residual) {
      for (std::size_t j : free_cols) mat.push_back(functionals_[c * dim_ + j]);
    }
    adj = rank_at_least(mat, residual.size(), free_cols.size(), target) >= target;
  }
  adjacency_cache_.emplace(std::move(key), adj);
  return adj;
}

void DoubleDescription::insert(std::size_t c) {
  const std::size_t coord = constraint_coord_[c];
  const std::size_t count = cone_.size();
  const std::size_t words = cone_.words;
  std::vector<std::size_t> pos, neg, zero;
  for (std::size_t i = 0; i < count; ++i) {
    std::int32_t v = cone_.rays[i * cone_.coords + coord];
    (v > 0 ? pos : v < 0 ? neg : zero).push_back(i);
  }

  Cone next;
  next.coords = cone_.coords;
  next.words = words;
  auto keep = [&](std::size_t i) {
    auto r = cone_.ray(i);
    next.rays.insert(next.rays.end(), r.begin(), r.end());
    auto z = cone_.zero(i);
    next.zeros.insert(next.zeros.end(), z.begin(), z.end());
  };
  for (std::size_t i : pos) keep(i);
  for (std::size_t i : zero) keep(i);
  if (neg.empty()) {
    cone_ = std::move(next);
    return;
  }

  const std::size_t need = dim_ >= 2 ? dim_ - 2 : 0;
  std::vector<Word> common(words);
  std::vector<std::int64_t> combo(cone_.coords);
  std::vector<std::int32_t> ray(cone_.coords);
  for (std::size_t p : pos) {
    const Word* zp = cone_.zeros.data() + p * words;
    const std::int64_t a = cone_.rays[p * cone_.coords + coord];
    for (std::size_t q : neg) {
      const Word* zq = cone_.zeros.data() + q * words;
      std::size_t pc = 0;
      for (std::size_t w = 0; w < words; ++w) {
        common[w] = zp[w] & zq[w] & processed_[w];
        pc += static_cast<std::size_t>(std::popcount(common[w]));
      }
      if (pc < need || !adjacent(common.data())) continue;
      const std::int64_t b = -std::int64_t{cone_.rays[q * cone_.coords + coord]};
      std::int64_t g = 0;
      for (std::size_t j = 0; j < cone_.coords; ++j) {
        combo[j] = a * cone_.rays[q * cone_.coords + j] + b * cone_.rays[p * cone_.coords + j];
        g = gcd64(g, combo[j]);
      }
      for (std::size_t j = 0; j < cone_.coords; ++j) {
        std::int64_t v = combo[j] / g;
        if (v > INT32_MAX || v < INT32_MIN) throw OverflowError("ray coordinate exceeds 32 bits during enumeration");
        ray[j] = static_cast<std::int32_t>(v);
      }
      next.rays.insert(next.rays.end(), ray.begin(), ray.end());
      next.zeros.resize(next.zeros.size() + words);
      zero_set(ray, next.zeros.data() + next.zeros.size() - words);
    }
  }
  cone_ = std::move(next);
  // Keys are masked by the processed set, so entries stay valid across
  // insertions; the cap only bounds memory.
  if (adjacency_cache_.size() > (std::size_t{1} << 22)) adjacency_cache_.clear();
}

EnumerationResult DoubleDescription::run() {
  EnumerationResult result;
  result.vertices = VertexSet(system_.scenario());
  if (dim_ == 0) return result;  // only the origin: empty polytope

  const std::size_t m = constraint_coord_.size();
  const std::uint64_t fp = system_fingerprint(system_);
  std::size_t inserted = 0;
  for (Word w : processed_) inserted += static_cast<std::size_t>(std::popcount(w));
  if (!options_.checkpoint_dir.empty()) {
    std::size_t restored = read_checkpoint(options_.checkpoint_dir, fp, processed_, cone_);
    if (restored) {
      inserted = restored;
      result.resumed_insertions = restored;
    }
  }
  max_rays_ = cone_.size();

  std::size_t steps = 0;
  while (inserted < m) {
    if (options_.max_insertions && steps == options_.max_insertions) {
      result.complete = false;
      break;
    }
    // Next constraint: fewest rays strictly violating it, lowest index on ties.
    std::size_t best = SIZE_MAX, best_neg = SIZE_MAX;
    for (std::size_t c = 0; c < m; ++c) {
      if (processed_[c / 64] >> (c % 64) & 1) continue;
      const std::size_t coord = constraint_coord_[c];
      std::size_t negs = 0;
      for (std::size_t i = 0; i < cone_.size(); ++i) negs += cone_.rays[i * cone_.coords + coord] < 0;
      if (negs < best_neg) {
        best_neg = negs;
        best = c;
      }
    }
    insert(best);
    processed_[best / 64] |= Word{1} << (best % 64);
    ++inserted;
    ++steps;
    max_rays_ = std::max(max_rays_, cone_.size());
    if (!options_.checkpoint_dir.empty()) write_checkpoint(options_.checkpoint_dir, fp, processed_, inserted, cone_);
    if (options_.progress) options_.progress(inserted, m, cone_.size());
  }
  result.max_intermediate_rays = max_rays_;

  if (result.complete) {
    IntegerRows ns(ns_rows(system_.scenario()));
    std::vector<std::int32_t> nums(n_);
    for (std::size_t i = 0; i < cone_.size(); ++i) {
      auto r = cone_.ray(i);
      const std::int64_t lambda = r[n_];
      if (lambda <= 0) throw ConfigurationError("feasible set is unbounded");
      std::copy_n(r.begin(), n_, nums.begin());
      bool det = std::all_of(nums.begin(), nums.end(), [&](std::int32_t v) { return v == 0 || v == lambda; });
      VertexTag tag = det ? VertexTag::CL : ns.satisfied(nums, lambda) ? VertexTag::NS : VertexTag::RC;
      result.vertices.add(nums, lambda, tag);
    }
    result.vertices.sort();
  }
  return result;
}

}  // namespace

EnumerationResult enumerate_vertices(const ConstraintSystem& system, const EnumerationOptions& options) {
  DoubleDescription dd(system, options);
  return dd.run();
}

// -------------------------------------------------------------- cdd formats

std::string to_ext(const VertexSet& vertices) {
  std::ostringstream os;
  os << "* " << vertices.scenario().describe() << ": " << vertices.size() << " vertices\nV-representation\nbegin\n"
     << vertices.size() << ' ' << vertices.length() + 1 << " rational\n";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    os << '1';
    for (const auto& v : vertices.vertex(i)) os << ' ' << v.get_str();
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

VertexSet from_ext(std::string_view text, const Scenario& scenario) {
  std::istringstream in{std::string(text)};
  std::string line;
  bool in_body = false, sized = false;
  std::size_t expected = 0, cols = 0;
  VertexSet out(scenario);
  const ConstraintSystem ns = ns_rows(scenario);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    if (!in_body) {
      if (line == "begin") in_body = true;
      continue;
    }
    if (line == "end") break;
    std::istringstream ls(line);
    if (!sized) {
      std::string kind;
      ls >> expected >> cols >> kind;
      if (!ls || cols != scenario.vector_length() + 1) {
        throw FormatError("ext size line '" + line + "' does not match scenario " + scenario.describe());
      }
      sized = true;
      continue;
    }
    std::string tok;
    std::vector<Rational> v;
    ls >> tok;
    if (parse_rational(tok) != 1) throw FormatError("ext file lists a ray, only vertices are supported");
    while (ls >> tok) v.push_back(parse_rational(tok));
    if (v.size() != scenario.vector_length()) throw FormatError("ext row has the wrong number of entries");
    out.add(v, is_deterministic(v) ? VertexTag::CL : ns.satisfied_by(v) ? VertexTag::NS : VertexTag::RC);
  }
  if (!sized) throw FormatError("no V-representation block found");
  if (out.size() != expected) {
    throw FormatError("ext header announces " + std::to_string(expected) + " rows, found " + std::to_string(out.size()));
  }
  return out;
}

}  // namespace rcpoly
