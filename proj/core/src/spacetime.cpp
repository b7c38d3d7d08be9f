#include "rcpoly/spacetime.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "rcpoly/error.hpp"

namespace rcpoly {

namespace {

void check_same_dimension(const Event& p, const Event& q) {
  if (p.coords.size() < 2 || q.coords.size() < 2) {
    throw GeometryError("events need a time and at least one space coordinate");
  }
  if (p.coords.size() != q.coords.size()) {
    throw GeometryError("events of dimensions " + std::to_string(p.coords.size()) + " and " +
                        std::to_string(q.coords.size()) + " cannot be compared");
  }
}

// (dt)^2 - |dx|^2 for q - p.
Rational interval(const Event& p, const Event& q) {
  check_same_dimension(p, q);
  Rational dt = q.coords[0] - p.coords[0];
  Rational s = dt * dt;
  for (std::size_t i = 1; i < p.coords.size(); ++i) {
    Rational dx = q.coords[i] - p.coords[i];
    s -= dx * dx;
  }
  return s;
}

void check_one_plus_one(const Event& e) {
  if (e.coords.size() != 2) {
    throw GeometryError("cone containment is only decided in 1+1 dimensions; supply a "
                        "SignalingStructure for " +
                        std::to_string(e.spatial_dimension()) + "+1 dimensional configurations");
  }
}

}  // namespace

bool causally_precedes(const Event& p, const Event& q) {
  Rational s = interval(p, q);
  return q.coords[0] >= p.coords[0] && sgn(s) >= 0;
}

bool spacelike_separated(const Event& p, const Event& q) { return sgn(interval(p, q)) < 0; }

std::string party_name(int party) {
  if (party >= 0 && party < 26) return std::string(1, static_cast<char>('A' + party));
  return "P" + std::to_string(party);
}

std::string describe_party_set(PartySet set) {
  std::string s = "{";
  bool first = true;
  for (int p = 0; p < 32; ++p) {
    if (set & party_bit(p)) {
      if (!first) s += ",";
      s += party_name(p);
      first = false;
    }
  }
  return s + "}";
}

SignalingStructure::SignalingStructure(int parties) : parties_(parties) {
  if (parties < 1 || parties > 16) {
    throw ConfigurationError("signaling structures support 1 to 16 parties, got " + std::to_string(parties));
  }
}

void SignalingStructure::allow(int from, PartySet targets) {
  const PartySet all = (PartySet{1} << parties_) - 1;
  if (from < 0 || from >= parties_) {
    throw ConfigurationError("signaling party " + std::to_string(from) + " out of range");
  }
  if ((targets & ~all) != 0) throw ConfigurationError("target set names unknown parties");
  if (targets & party_bit(from)) {
    throw ConfigurationError(party_name(from) + " cannot signal to a region containing itself");
  }
  if (std::popcount(targets) < 2) {
    throw ConfigurationError("target regions need at least two parties, got " + describe_party_set(targets));
  }
  relations_.insert({from, targets});
}

bool SignalingStructure::allows(int from, PartySet targets) const {
  return relations_.count({from, targets}) != 0;
}

bool SignalingStructure::marginal_well_defined(PartySet subset) const {
  for (const auto& r : relations_) {
    if (r.targets == subset && !(subset & party_bit(r.from))) return false;
  }
  return true;
}

bool SignalingStructure::is_subset_of(const SignalingStructure& other) const {
  return parties_ == other.parties_ &&
         std::includes(other.relations_.begin(), other.relations_.end(), relations_.begin(), relations_.end());
}

std::string SignalingStructure::describe() const {
  std::string s = "{";
  bool first = true;
  for (const auto& r : relations_) {
    if (!first) s += ", ";
    s += party_name(r.from) + "->" + describe_party_set(r.targets);
    first = false;
  }
  return s + "}";
}

Event cone_intersection_apex(std::span<const Event> targets) {
  if (targets.empty()) throw ConfigurationError("cone intersection needs at least one event");
  // J+(q) = {t - x >= t_q - x_q, t + x >= t_q + x_q}; the intersection over q is
  // the future cone of the point where both envelopes meet.
  Rational u, l;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    check_one_plus_one(targets[i]);
    Rational up = targets[i].coords[0] + targets[i].coords[1];
    Rational lo = targets[i].coords[0] - targets[i].coords[1];
    if (i == 0 || up > u) u = up;
    if (i == 0 || lo > l) l = lo;
  }
  return Event{Rational((u + l) / 2), Rational((u - l) / 2)};
}

bool ptr_allowed(const Event& signaler, std::span<const Event> targets) {
  check_one_plus_one(signaler);
  if (targets.size() < 2) throw ConfigurationError("a region needs at least two target events");
  return causally_precedes(signaler, cone_intersection_apex(targets));
}

namespace {

template <class Allowed>
SignalingStructure structure_from_predicate(int n, Allowed allowed) {
  SignalingStructure s(n);
  const PartySet all = (PartySet{1} << n) - 1;
  for (int p = 0; p < n; ++p) {
    for (PartySet set = 1; set <= all; ++set) {
      if ((set & party_bit(p)) || std::popcount(set) < 2) continue;
      if (allowed(p, set)) s.allow(p, set);
    }
  }
  return s;
}

}  // namespace

SignalingStructure derive_structure(std::span<const Event> events) {
  const int n = static_cast<int>(events.size());
  for (const auto& e : events) check_one_plus_one(e);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!spacelike_separated(events[i], events[j])) {
        throw ConfigurationError("events of " + party_name(i) + " and " + party_name(j) +
                                 " are not spacelike separated");
      }
    }
  }
  return structure_from_predicate(n, [&](int p, PartySet set) {
    std::vector<Event> targets;
    for (int q = 0; q < n; ++q) {
      if (set & party_bit(q)) targets.push_back(events[q]);
    }
    return ptr_allowed(events[p], targets);
  });
}

std::vector<SignalingStructure> enumerate_structures(int parties, int grid_radius) {
  if (parties < 1 || parties > 4) {
    throw ConfigurationError("structure enumeration supports 1 to 4 parties, got " + std::to_string(parties));
  }
  if (grid_radius < 0 || grid_radius > 8) {
    throw ConfigurationError("grid radius must lie in [0,8], got " + std::to_string(grid_radius));
  }
  // Relation (p, S) maps to bit p*16 + S. The empty structure is always
  // reported: with three or more parties on a line the middle one can always
  // signal, so the grid alone never produces it.
  std::set<std::uint64_t> seen{0};
  std::vector<int> t(parties, 0), x(parties, 0);
  const int side = 2 * grid_radius + 1;
  std::size_t placements = 1;
  for (int i = 1; i < parties; ++i) placements *= static_cast<std::size_t>(side * side);

  const PartySet all = (PartySet{1} << parties) - 1;
  for (std::size_t code = 0; code < placements; ++code) {
    std::size_t c = code;
    for (int i = 1; i < parties; ++i) {
      t[i] = static_cast<int>(c % side) - grid_radius;
      c /= side;
      x[i] = static_cast<int>(c % side) - grid_radius;
      c /= side;
    }
    bool spacelike = true;
    for (int i = 0; i < parties && spacelike; ++i) {
      for (int j = i + 1; j < parties && spacelike; ++j) {
        spacelike = std::abs(t[i] - t[j]) < std::abs(x[i] - x[j]);
      }
    }
    if (!spacelike) continue;

    std::uint64_t key = 0;
    for (PartySet set = 1; set <= all; ++set) {
      if (std::popcount(set) < 2) continue;
      int u = 0, l = 0;
      bool first = true;
      for (int q = 0; q < parties; ++q) {
        if (!(set & party_bit(q))) continue;
        if (first || t[q] + x[q] > u) u = t[q] + x[q];
        if (first || t[q] - x[q] > l) l = t[q] - x[q];
        first = false;
      }
      // Apex in doubled coordinates: (u + l, u - l).
      for (int p = 0; p < parties; ++p) {
        if (set & party_bit(p)) continue;
        int dt = (u + l) - 2 * t[p];
        int dx = (u - l) - 2 * x[p];
        if (dt >= std::abs(dx)) key |= std::uint64_t{1} << (p * 16 + static_cast<int>(set));
      }
    }
    seen.insert(key);
  }

  std::vector<SignalingStructure> out;
  for (std::uint64_t key : seen) {
    out.push_back(structure_from_predicate(
        parties, [&](int p, PartySet set) { return (key >> (p * 16 + static_cast<int>(set))) & 1; }));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SignalingStructure structure_preset(std::string_view name, int parties) {
  constexpr PartySet A = party_bit(0), B = party_bit(1), C = party_bit(2), D = party_bit(3);
  if (name == "ns") return SignalingStructure(parties);
  if (name == "fig1") {
    SignalingStructure s(3);
    s.allow(1, A | C);
    return s;
  }
  if (name == "max3") {
    SignalingStructure s(3);
    s.allow(0, B | C);
    s.allow(1, A | C);
    s.allow(2, A | B);
    return s;
  }
  if (name == "fig2") {
    // C and D never signal, so the {C,D} correlations are protected; A and B
    // may reach any region that contains the other one.
    SignalingStructure s(4);
    for (PartySet rest : {C, D, C | D}) {
      s.allow(0, B | rest);
      s.allow(1, A | rest);
    }
    return s;
  }
  if (name == "table1") {
    // Four parties on a line in the order B, A, C, D; A and C are the inner parties.
    static const SignalingStructure table1 = [] {
      std::vector<Event> events{{0, 1}, {0, 0}, {0, 2}, {0, 3}};
      return derive_structure(events);
    }();
    return table1;
  }
  throw ConfigurationError("unknown structure preset '" + std::string(name) + "'");
}

std::vector<std::string> structure_preset_names() { return {"ns", "fig1", "max3", "fig2", "table1"}; }

}  // namespace rcpoly
