#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rcpoly/polytope.hpp"
#include "rcpoly/rational.hpp"
#include "rcpoly/scenario.hpp"
#include "rcpoly/spacetime.hpp"

namespace rcpoly {

/// A relabeling of a structure-equipped scenario: party permutation, per-party
/// input permutation and per-party, per-input output permutation. Party i,
/// input x, output a is sent to party party_map[i], input input_maps[i][x],
/// output output_maps[i][x][a].
struct Relabeling {
  std::vector<int> party_map;
  std::vector<std::vector<int>> input_maps;
  std::vector<std::vector<std::vector<int>>> output_maps;
};

/// Relabelings with the induced permutation of flat indices precomputed.
class SymmetryGroup {
 public:
  SymmetryGroup() = default;
  SymmetryGroup(Scenario scenario, std::vector<Relabeling> elements);

  const Scenario& scenario() const { return scenario_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Relabeling>& elements() const { return elements_; }

  /// image[j] = index that entry j is moved to by element g.
  std::span<const std::uint32_t> image(std::size_t g) const {
    return {images_.data() + g * scenario_.vector_length(), scenario_.vector_length()};
  }
  /// source[j] = index whose entry lands on j under element g.
  std::span<const std::uint32_t> source(std::size_t g) const {
    return {sources_.data() + g * scenario_.vector_length(), scenario_.vector_length()};
  }

 private:
  Scenario scenario_;
  std::vector<Relabeling> elements_;
  std::vector<std::uint32_t> images_;
  std::vector<std::uint32_t> sources_;
};

/// Every relabeling whose party permutation maps the signaling relation onto
/// itself (and only permutes parties of equal cardinalities). With
/// `input_dependent_outputs` false, each party uses one output permutation for
/// all of its inputs. Throws ConfigurationError above 10^7 elements.
SymmetryGroup make_group(const Scenario& scenario, const SignalingStructure& structure,
                         bool input_dependent_outputs = true);

std::vector<Relabeling> group_elements(const Scenario& scenario, const SignalingStructure& structure);

/// P'(g(x,a)) = P(x,a).
std::vector<Rational> apply(const Relabeling& relabeling, const Scenario& scenario,
                            std::span<const Rational> box);
std::vector<Rational> apply(const SymmetryGroup& group, std::size_t element,
                            std::span<const Rational> box);

/// Lexicographically smallest image over the group (entries compared as rationals).
std::vector<Rational> canonical_form(std::span<const Rational> box, const SymmetryGroup& group);

/// Integer variant used for vertex sets (all images share the denominator).
std::vector<std::int32_t> canonical_form(std::span<const std::int32_t> box, const SymmetryGroup& group);

struct EquivalenceClass {
  std::vector<Rational> canonical;
  std::size_t orbit_size = 0;  // number of input vertices in the class
  VertexTag tag = VertexTag::RC;
};

struct EquivalenceClasses {
  std::vector<EquivalenceClass> classes;  // sorted by (tag, orbit size, canonical)
  VertexSet::Census class_census() const;
};

/// Partition by canonical form. Throws ConfigurationError if a class mixes tags.
EquivalenceClasses classify(const VertexSet& vertices, const SymmetryGroup& group,
                            unsigned threads = 1);

struct OrbitEnumerationOptions {
  /// Called after each class's vertex cone is enumerated with
  /// (classes processed, classes found, vertices found).
  std::function<void(std::size_t, std::size_t, std::size_t)> progress;
};

struct OrbitEnumerationResult {
  VertexSet vertices;           // every vertex, sorted
  EquivalenceClasses classes;   // one entry per orbit
  std::size_t cone_rays = 0;    // extreme rays over all vertex cones
};

/// Vertex enumeration of {x >= 0 : rows} up to `group`, by adjacency
/// decomposition. Starting from one vertex, the cone of feasible directions at
/// each class representative is enumerated with enumerate_vertices; every edge
/// is followed to its other end, which is reduced to canonical form and queued
/// if its class is new. The vertex graph is connected, so every class is reached.
/// Orbits are then expanded into the full vertex set. `group` must preserve the
/// feasible set. Throws ConfigurationError when the set is empty or unbounded.
OrbitEnumerationResult enumerate_vertices_by_orbits(const ConstraintSystem& system, const SymmetryGroup& group,
                                                    const OrbitEnumerationOptions& options = {});

/// JSON list of {canonical, orbit_size, tag}.
std::string class_report_json(const EquivalenceClasses& classes);

/// Plain-text table: class number, tag, orbit size, and the distinct nonzero
/// probabilities with the number of entries carrying each.
std::string class_report_table(const EquivalenceClasses& classes);

}  // namespace rcpoly
