#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcpoly/constraints.hpp"
#include "rcpoly/rational.hpp"
#include "rcpoly/scenario.hpp"

namespace rcpoly {

enum class VertexTag { CL, NS, RC };

std::string to_string(VertexTag tag);

/// Vertices stored as primitive integer vectors plus a positive denominator;
/// entry j of vertex i is numerators[i*len + j] / denominators[i].
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(Scenario scenario) : scenario_(std::move(scenario)) {}

  const Scenario& scenario() const { return scenario_; }
  std::size_t size() const { return denominators_.size(); }
  std::size_t length() const { return scenario_.vector_length(); }

  void add(std::span<const std::int32_t> numerators, std::int64_t denominator, VertexTag tag);
  /// Accepts any rational vector that scales to int32 numerators.
  void add(std::span<const Rational> vertex, VertexTag tag);

  std::span<const std::int32_t> numerators(std::size_t i) const {
    return {numerators_.data() + i * length(), length()};
  }
  std::int64_t denominator(std::size_t i) const { return denominators_[i]; }
  VertexTag tag(std::size_t i) const { return tags_[i]; }
  std::vector<Rational> vertex(std::size_t i) const;

  struct Census {
    std::size_t cl = 0, ns = 0, rc = 0;
    std::size_t total() const { return cl + ns + rc; }
  };
  Census census() const;

  /// Lexicographic order on the rational entries; makes output independent of
  /// the order in which vertices were discovered.
  void sort();

 private:
  Scenario scenario_;
  std::vector<std::int32_t> numerators_;
  std::vector<std::int64_t> denominators_;
  std::vector<VertexTag> tags_;
};

struct EnumerationOptions {
  /// Directory for per-insertion checkpoints; resumes from it when a matching
  /// checkpoint exists. Empty disables checkpointing.
  std::filesystem::path checkpoint_dir;
  unsigned threads = 1;
  /// Called after each constraint insertion with (inserted, total, current rays).
  std::function<void(std::size_t, std::size_t, std::size_t)> progress;
  /// Stop after this many insertions (0 = run to completion). The checkpoint
  /// written at that point can be resumed later.
  std::size_t max_insertions = 0;
};

struct EnumerationResult {
  VertexSet vertices;
  bool complete = true;              // false when stopped early by max_insertions
  std::size_t resumed_insertions = 0;  // insertions restored from a checkpoint
  std::size_t max_intermediate_rays = 0;
};

/// Vertex enumeration of {x >= 0 : rows} by the double description method.
///
/// The equality system is homogenized and its null space parametrized by an
/// integer basis; the nonnegativity facets are then inserted one at a time,
/// choosing next the facet that currently cuts off the fewest rays. Adjacency is
/// decided algebraically: two rays are adjacent iff their common active facets
/// have rank dim - 2. Rays are primitive integer vectors throughout.
/// Throws ConfigurationError when the feasible set is unbounded.
EnumerationResult enumerate_vertices(const ConstraintSystem& system,
                                     const EnumerationOptions& options = {});

/// CL when every entry is 0 or 1, NS when the no-signaling rows hold, RC otherwise.
/// Throws ConfigurationError if v violates `system`.
VertexTag classify_vertex(std::span<const Rational> v, const ConstraintSystem& system);

/// Tag without the feasibility check.
VertexTag tag_of(std::span<const Rational> v, const Scenario& scenario);

/// True iff the constraints active at v (tight nonnegativities and all
/// equalities) have rank vector_length.
bool is_extremal(std::span<const Rational> v, const ConstraintSystem& system);

/// cdd V-representation ("1 v_1 ... v_n" per vertex, rational entries).
std::string to_ext(const VertexSet& vertices);
/// Parses to_ext output; vertices are tagged with tag_of.
VertexSet from_ext(std::string_view text, const Scenario& scenario);

}  // namespace rcpoly
