#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcpoly/rational.hpp"

namespace rcpoly {

/// A measurement event in Minkowski spacetime: coordinates (t, x_1, ..., x_d),
/// metric signature (+,-,...,-).
struct Event {
  std::vector<Rational> coords;

  Event() = default;
  Event(std::initializer_list<Rational> c) : coords(c) {}
  explicit Event(std::vector<Rational> c) : coords(std::move(c)) {}

  int spatial_dimension() const { return static_cast<int>(coords.size()) - 1; }
};

/// q lies in the closed causal future J+(p).
bool causally_precedes(const Event& p, const Event& q);

/// Strictly spacelike: (dt)^2 - |dx|^2 < 0.
bool spacelike_separated(const Event& p, const Event& q);

/// Party subsets are bitmasks: bit i set means party i is a member.
using PartySet = std::uint32_t;

inline constexpr PartySet party_bit(int party) { return PartySet{1} << party; }

/// "p may point-to-region signal to the set `targets`".
struct PtrRelation {
  int from = 0;
  PartySet targets = 0;
  auto operator<=>(const PtrRelation&) const = default;
};

/// The set of permitted point-to-region signaling relations among n parties.
/// Relations never have the signaler inside the target set, and targets always
/// have at least two members (single-party marginals are always well-defined).
class SignalingStructure {
 public:
  SignalingStructure() = default;
  explicit SignalingStructure(int parties);

  int parties() const { return parties_; }
  const std::set<PtrRelation>& relations() const { return relations_; }
  bool empty() const { return relations_.empty(); }

  /// Throws ConfigurationError for an invalid pair.
  void allow(int from, PartySet targets);
  bool allows(int from, PartySet targets) const;

  /// The marginal on `subset` is input-independent iff no party outside it
  /// may signal to it.
  bool marginal_well_defined(PartySet subset) const;

  /// Relation-wise inclusion.
  bool is_subset_of(const SignalingStructure& other) const;

  /// e.g. "{B->{A,C}}"; "{}" when empty.
  std::string describe() const;

  auto operator<=>(const SignalingStructure&) const = default;

 private:
  int parties_ = 0;
  std::set<PtrRelation> relations_;
};

std::string party_name(int party);
std::string describe_party_set(PartySet set);

/// Point-to-region signaling test: the intersection of the targets' future
/// cones lies inside the signaler's future cone. Only (1+1)-D is supported;
/// there the intersection is itself the future cone of a single apex event.
/// Throws GeometryError for other dimensions.
bool ptr_allowed(const Event& signaler, std::span<const Event> targets);

/// Apex of the intersection of the future cones of `targets` in (1+1)-D.
Event cone_intersection_apex(std::span<const Event> targets);

/// Every (p, S) with p not in S, |S| >= 2 and ptr_allowed. Events must be pairwise
/// spacelike; otherwise ConfigurationError names the offending pair.
SignalingStructure derive_structure(std::span<const Event> events);

/// Distinct structures realized by pairwise spacelike placements on the integer
/// (1+1)-D grid. Configurations are taken up to translation: party A sits at the
/// origin and every other party at (t, x) with |t|, |x| <= grid_radius.
/// Result is sorted and always contains the empty structure.
std::vector<SignalingStructure> enumerate_structures(int parties, int grid_radius);

/// Named structures: "ns" (empty; any party count), "fig1", "max3", "fig2", "table1".
/// `parties` is only consulted for "ns".
SignalingStructure structure_preset(std::string_view name, int parties = 3);
std::vector<std::string> structure_preset_names();

}  // namespace rcpoly
