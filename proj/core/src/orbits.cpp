#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "rcpoly/error.hpp"
#include "rcpoly/linalg.hpp"
#include "rcpoly/lp.hpp"
#include "rcpoly/symmetry.hpp"

namespace rcpoly {

namespace {

// Common-denominator integer form; the key used to identify vertices.
struct IntVertex {
  std::vector<std::int32_t> nums;
  std::int64_t den = 1;
};

IntVertex to_int(std::span<const Rational> v) {
  BigInt l = 1;
  for (const auto& e : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
  if (!l.fits_slong_p()) throw OverflowError("vertex denominator does not fit in 64 bits");
  IntVertex out;
  out.den = l.get_si();
  out.nums.reserve(v.size());
  for (const auto& e : v) {
    BigInt n = e.get_num() * (l / e.get_den());
    if (!n.fits_sint_p()) throw OverflowError("vertex entry does not fit in 32 bits");
    out.nums.push_back(static_cast<std::int32_t>(n.get_si()));
  }
  return out;
}

std::vector<Rational> to_rational(const IntVertex& v) {
  std::vector<Rational> out;
  out.reserve(v.nums.size());
  for (auto n : v.nums) {
    Rational r(static_cast<long>(n), static_cast<unsigned long>(v.den));
    r.canonicalize();
    out.push_back(std::move(r));
  }
  return out;
}

using Key = std::pair<std::vector<std::int32_t>, std::int64_t>;

// Null space of the homogeneous equality system, as basis vectors of length n.
std::vector<std::vector<Rational>> direction_space(const ConstraintSystem& system) {
  const std::size_t n = system.scenario().vector_length();
  linalg::Matrix a(system.size(), n);
  for (std::size_t r = 0; r < system.size(); ++r) {
    for (const auto& [j, c] : system.rows()[r].terms) a(r, j) = c;
  }
  return linalg::nullspace(a);
}

// Other ends of all edges at vertex v. Directions d with A d = 0 are
// parametrized by their tight coordinates y = d_Z, which determine d because v
// is a vertex; the cone {y >= 0} within that image, cut by sum(y) = 1, is a
// polytope whose vertices are the edge directions.
std::vector<std::vector<Rational>> neighbours(const std::vector<Rational>& v,
                                              const std::vector<std::vector<Rational>>& basis,
                                              std::size_t& cone_rays) {
  const std::size_t n = v.size(), k = basis.size();
  std::vector<std::size_t> zero;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(v[i]) == 0) zero.push_back(i);
  }
  const std::size_t z = zero.size();
  if (k == 0) return {};

  // Rows of N_Z^T; its null space gives the equations of the image.
  linalg::Matrix nzt(k, z);
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t i = 0; i < z; ++i) nzt(b, i) = basis[b][zero[i]];
  }
  linalg::Matrix echelon = nzt;
  auto pivots = linalg::rref(echelon);
  if (pivots.size() != k) throw ConfigurationError("point is not a vertex of the feasible set");
  auto equations = linalg::nullspace(nzt);

  // Recovering the basis coefficients c from y: N_R c = y_R on k independent
  // tight rows R (the pivot columns of N_Z^T).
  linalg::Matrix aug(k, 2 * k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t b = 0; b < k; ++b) aug(r, b) = basis[b][zero[pivots[r]]];
    aug(r, k + r) = 1;
  }
  linalg::rref(aug);

  Scenario cone_scenario({1}, {static_cast<int>(z)});
  ConstraintSystem cone(cone_scenario);
  ConstraintRow norm;
  for (std::size_t i = 0; i < z; ++i) norm.terms.emplace_back(static_cast<std::uint32_t>(i), Rational(1));
  norm.rhs = 1;
  cone.add_row(std::move(norm));
  for (const auto& e : equations) {
    ConstraintRow row;
    for (std::size_t i = 0; i < z; ++i) {
      if (sgn(e[i]) != 0) row.terms.emplace_back(static_cast<std::uint32_t>(i), e[i]);
    }
    cone.add_row(std::move(row));
  }
  auto rays = enumerate_vertices(cone).vertices;
  cone_rays += rays.size();

  std::vector<std::vector<Rational>> out;
  out.reserve(rays.size());
  for (std::size_t r = 0; r < rays.size(); ++r) {
    auto y = rays.vertex(r);
    std::vector<Rational> c(k);
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t q = 0; q < k; ++q) {
        if (sgn(y[pivots[q]]) != 0) c[b] += aug(b, k + q) * y[pivots[q]];
      }
    }
    std::vector<Rational> d(n);
    for (std::size_t b = 0; b < k; ++b) {
      if (sgn(c[b]) == 0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (sgn(basis[b][i]) != 0) d[i] += c[b] * basis[b][i];
      }
    }
    bool bounded = false;
    Rational step;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(d[i]) >= 0) continue;
      Rational t = v[i] / -d[i];
      if (!bounded || t < step) step = t;
      bounded = true;
    }
    if (!bounded) throw ConfigurationError("feasible set is unbounded");
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = v[i] + step * d[i];
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

OrbitEnumerationResult enumerate_vertices_by_orbits(const ConstraintSystem& system, const SymmetryGroup& group,
                                                    const OrbitEnumerationOptions& options) {
  const Scenario& scenario = system.scenario();
  if (!(scenario == group.scenario())) throw ConfigurationError("system and group use different scenarios");
  const std::size_t n = scenario.vector_length();

  auto start = maximize({std::vector<Rational>(n), system});
  if (start.status != LpStatus::optimal) throw ConfigurationError("feasible set is empty");
  auto basis = direction_space(system);

  std::map<Key, std::size_t> known;
  std::vector<IntVertex> reps;
  std::deque<std::size_t> queue;
  auto discover = [&](std::span<const Rational> v) {
    auto iv = to_int(v);
    auto canon = canonical_form(std::span<const std::int32_t>(iv.nums), group);
    Key key{std::move(canon), iv.den};
    auto [it, fresh] = known.try_emplace(key, reps.size());
    if (fresh) {
      reps.push_back(IntVertex{key.first, key.second});
      queue.push_back(it->second);
    }
  };
  discover(start.primal);

  OrbitEnumerationResult out;
  std::size_t processed = 0;
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    auto v = to_rational(reps[idx]);
    for (const auto& w : neighbours(v, basis, out.cone_rays)) discover(w);
    ++processed;
    if (options.progress) options.progress(processed, reps.size(), 0);
  }

  out.vertices = VertexSet(scenario);
  for (const auto& rep : reps) {
    auto v = to_rational(rep);
    const VertexTag tag = classify_vertex(v, system);
    std::set<std::vector<std::int32_t>> orbit;
    std::vector<std::int32_t> image(n);
    for (std::size_t g = 0; g < group.order(); ++g) {
      auto src = group.source(g);
      for (std::size_t j = 0; j < n; ++j) image[j] = rep.nums[src[j]];
      orbit.insert(image);
    }
    for (const auto& member : orbit) out.vertices.add(member, rep.den, tag);
    out.classes.classes.push_back(EquivalenceClass{std::move(v), orbit.size(), tag});
  }
  out.vertices.sort();
  std::sort(out.classes.classes.begin(), out.classes.classes.end(),
            [](const EquivalenceClass& a, const EquivalenceClass& b) {
              if (a.tag != b.tag) return a.tag < b.tag;
              if (a.orbit_size != b.orbit_size) return a.orbit_size < b.orbit_size;
              return a.canonical < b.canonical;
            });
  if (options.progress) options.progress(processed, reps.size(), out.vertices.size());
  return out;
}

}  // namespace rcpoly
