#include "rcpoly/constraints.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "rcpoly/error.hpp"
#include "rcpoly/linalg.hpp"

namespace rcpoly {

namespace {

std::string row_key(const ConstraintRow& row) {
  std::string key;
  for (const auto& [c, v] : row.terms) {
    key += std::to_string(c);
    key += ':';
    key += v.get_str();
    key += ';';
  }
  key += '=';
  key += row.rhs.get_str();
  return key;
}

}  // namespace

bool ConstraintSystem::add_row(ConstraintRow row) {
  std::sort(row.terms.begin(), row.terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // Merge repeated columns and drop zeros.
  std::vector<std::pair<std::uint32_t, Rational>> merged;
  for (auto& t : row.terms) {
    if (t.first >= variables()) {
      throw BoundsError("row references variable " + std::to_string(t.first) + " of " +
                        std::to_string(variables()));
    }
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const auto& t) { return sgn(t.second) == 0; });
  row.terms = std::move(merged);
  if (row.terms.empty()) return false;
  if (sgn(row.terms.front().second) < 0) {
    for (auto& t : row.terms) t.second = -t.second;
    row.rhs = -row.rhs;
  }
  std::string key = row_key(row);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it != keys_.end() && *it == key) return false;
  keys_.insert(it, std::move(key));
  rows_.push_back(std::move(row));
  return true;
}

void ConstraintSystem::append(const ConstraintSystem& other) {
  if (!(other.scenario() == scenario_)) throw ConfigurationError("cannot merge systems over different scenarios");
  for (const auto& r : other.rows()) add_row(r);
}

std::vector<std::size_t> ConstraintSystem::violated_rows(std::span<const Rational> x) const {
  if (x.size() != variables()) {
    throw BoundsError("vector of length " + std::to_string(x.size()) + " for a system over " +
                      std::to_string(variables()) + " variables");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Rational s = 0;
    for (const auto& [c, v] : rows_[i].terms) {
      if (sgn(x[c]) != 0) s += v * x[c];
    }
    if (s != rows_[i].rhs) out.push_back(i);
  }
  return out;
}

bool ConstraintSystem::satisfied_by(std::span<const Rational> x) const { return violated_rows(x).empty(); }

std::size_t ConstraintSystem::count(RowKind kind) const {
  return static_cast<std::size_t>(std::count_if(rows_.begin(), rows_.end(), [&](const auto& r) { return r.kind == kind; }));
}

ConstraintSystem normalization_rows(const Scenario& scenario) {
  ConstraintSystem sys(scenario);
  const std::size_t k = scenario.output_count();
  for (std::size_t xr = 0; xr < scenario.input_count(); ++xr) {
    ConstraintRow row;
    row.kind = RowKind::normalization;
    row.rhs = 1;
    for (std::size_t ar = 0; ar < k; ++ar) row.terms.emplace_back(static_cast<std::uint32_t>(xr * k + ar), Rational(1));
    sys.add_row(std::move(row));
  }
  return sys;
}

namespace {

// All tuples over the given radices, party 0 most significant.
std::vector<Tuple> tuples(const std::vector<int>& radices) {
  std::vector<Tuple> out;
  Tuple t(radices.size(), 0);
  while (true) {
    out.push_back(t);
    std::size_t i = radices.size();
    while (i > 0) {
      --i;
      if (++t[i] < radices[i]) break;
      t[i] = 0;
      if (i == 0) return out;
    }
    if (radices.empty()) return out;
  }
}

}  // namespace

ConstraintSystem marginal_rows(const Scenario& scenario, PartySet subset) {
  const int n = scenario.parties();
  const PartySet all = (PartySet{1} << n) - 1;
  if ((subset & ~all) != 0) throw BoundsError("subset names parties outside the scenario");
  ConstraintSystem sys(scenario);
  if (subset == 0 || subset == all) return sys;

  std::vector<int> in_s, out_s;
  for (int p = 0; p < n; ++p) (subset & party_bit(p) ? in_s : out_s).push_back(p);
  auto radices = [&](const std::vector<int>& parties, const std::vector<int>& card) {
    std::vector<int> r;
    for (int p : parties) r.push_back(card[p]);
    return r;
  };
  const auto xs = tuples(radices(in_s, scenario.inputs()));
  const auto as = tuples(radices(in_s, scenario.outputs()));
  const auto xc = tuples(radices(out_s, scenario.inputs()));
  const auto ac = tuples(radices(out_s, scenario.outputs()));

  Tuple x(n), a(n);
  auto place = [](Tuple& dst, const std::vector<int>& parties, const Tuple& src) {
    for (std::size_t i = 0; i < parties.size(); ++i) dst[parties[i]] = src[i];
  };

  for (const auto& x_s : xs) {
    place(x, in_s, x_s);
    for (const auto& a_s : as) {
      place(a, in_s, a_s);
      // xc[0] is the all-zeros anchor.
      for (std::size_t alt = 1; alt < xc.size(); ++alt) {
        ConstraintRow row;
        row.kind = RowKind::marginal;
        row.rhs = 0;
        for (const auto& a_c : ac) {
          place(a, out_s, a_c);
          place(x, out_s, xc[0]);
          row.terms.emplace_back(static_cast<std::uint32_t>(scenario.flatten(x, a)), Rational(1));
          place(x, out_s, xc[alt]);
          row.terms.emplace_back(static_cast<std::uint32_t>(scenario.flatten(x, a)), Rational(-1));
        }
        sys.add_row(std::move(row));
      }
    }
  }
  return sys;
}

ConstraintSystem rc_rows(const Scenario& scenario, const SignalingStructure& structure) {
  if (structure.parties() != scenario.parties()) {
    throw ConfigurationError("structure has " + std::to_string(structure.parties()) +
                             " parties, scenario has " + std::to_string(scenario.parties()));
  }
  ConstraintSystem sys = normalization_rows(scenario);
  const PartySet all = (PartySet{1} << scenario.parties()) - 1;
  for (PartySet s = 1; s < all; ++s) {
    if (std::popcount(s) == 1 || structure.marginal_well_defined(s)) sys.append(marginal_rows(scenario, s));
  }
  return sys;
}

ConstraintSystem ns_rows(const Scenario& scenario) {
  return rc_rows(scenario, SignalingStructure(scenario.parties()));
}

std::size_t rank(const ConstraintSystem& system) {
  linalg::IntegerEchelon ech;
  for (const auto& row : system.rows()) ech.insert(linalg::to_integer_row(row.terms));
  return ech.rank();
}

std::size_t dimension(const ConstraintSystem& system) { return system.variables() - rank(system); }

std::int64_t closed_form_dimension(int inputs, int outputs) {
  if (inputs < 1 || outputs < 1) throw BoundsError("closed-form dimension needs m, n >= 1");
  const std::int64_t m = inputs, n = outputs;
  const std::int64_t base = m * (n - 1) + 1;
  return base * base * base + m * m * (m - 1) * (n - 1) * (n - 1) - 1;
}

std::string to_ine(const ConstraintSystem& system) {
  const std::size_t d = system.variables();
  std::ostringstream os;
  os << "* " << system.scenario().describe() << ": " << system.size() << " equalities, " << d
     << " nonnegativities\nH-representation\nlinearity " << system.size();
  for (std::size_t i = 1; i <= system.size(); ++i) os << ' ' << i;
  os << "\nbegin\n" << system.size() + d << ' ' << d + 1 << " rational\n";
  // cdd rows read b - A x >= 0.
  std::vector<Rational> dense(d);
  for (const auto& row : system.rows()) {
    std::fill(dense.begin(), dense.end(), Rational(0));
    for (const auto& [c, v] : row.terms) dense[c] = -v;
    os << row.rhs.get_str();
    for (const auto& v : dense) os << ' ' << v.get_str();
    os << '\n';
  }
  for (std::size_t j = 0; j < d; ++j) {
    os << '0';
    for (std::size_t k = 0; k < d; ++k) os << (k == j ? " 1" : " 0");
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

}  // namespace rcpoly
