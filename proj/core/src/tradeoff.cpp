#include "rcpoly/tradeoff.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <thread>

#include "rcpoly/error.hpp"

namespace rcpoly {

std::string certificate_hash(const std::vector<Rational>& values) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& v : values) {
    for (unsigned char c : v.get_str() + ";") {
      h ^= c;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

TradeoffReport solve_sum(std::string name, const std::vector<GameFunctional>& functionals,
                         const ConstraintSystem& system, const SignalingStructure& structure) {
  if (functionals.empty()) throw ConfigurationError("trade-off needs at least one functional");
  const Scenario& s = system.scenario();
  std::vector<Rational> objective(s.vector_length());
  TradeoffReport report;
  report.name = std::move(name);
  report.scenario = s;
  report.structure = structure;
  for (const auto& f : functionals) {
    if (!(f.scenario == s)) throw ConfigurationError(f.name + " is defined over a different scenario");
    for (std::size_t j = 0; j < objective.size(); ++j) objective[j] += f.coefficients[j];
    report.expressions.push_back(f.name);
  }
  LpSolution sol = maximize({objective, system});
  if (sol.status != LpStatus::optimal) {
    throw ConfigurationError("trade-off LP " + report.name + " is " + to_string(sol.status));
  }
  report.optimum = sol.value;
  for (const auto& f : functionals) report.terms.push_back({f.name, f.value(sol.primal)});
  report.witness = std::move(sol.primal);
  report.dual = std::move(sol.dual);
  report.certificate_hash = certificate_hash(report.dual);
  return report;
}

std::vector<GameFunctional> compile_all(const Scenario& scenario, const std::vector<CorrelatorExpression>& expressions,
                                        const SignalingStructure& structure, MarginalPolicy policy) {
  std::vector<GameFunctional> out;
  for (const auto& e : expressions) out.push_back(compile(e, scenario, structure, policy));
  return out;
}

const Scenario& s422() {
  static const Scenario s = Scenario::uniform(4, 2, 2);
  return s;
}

}  // namespace

TradeoffReport tradeoff_sum(const Scenario& scenario, const std::vector<CorrelatorExpression>& expressions,
                            const SignalingStructure& structure, MarginalPolicy policy) {
  auto functionals = compile_all(scenario, expressions, structure, policy);
  std::string name;
  for (const auto& f : functionals) name += (name.empty() ? "" : "+") + f.name;
  auto report = solve_sum(name, functionals, rc_rows(scenario, structure), structure);
  if (policy == MarginalPolicy::pinned) {
    report.notes.push_back("unmeasured parties fixed to input 0 regardless of marginal well-definedness");
  } else if (policy == MarginalPolicy::averaged) {
    report.notes.push_back("unmeasured parties averaged uniformly over their inputs");
  }
  return report;
}

TradeoffReport tradeoff_sum(const std::vector<GameFunctional>& functionals, const SignalingStructure& structure) {
  if (functionals.empty()) throw ConfigurationError("trade-off needs at least one functional");
  std::string name;
  for (const auto& f : functionals) name += (name.empty() ? "" : "+") + f.name;
  return solve_sum(name, functionals, rc_rows(functionals.front().scenario, structure), structure);
}

TradeoffReport sve_pair() {
  auto r = tradeoff_sum(s422(), {svetlichny(0, 1, 2), svetlichny(0, 1, 3)}, structure_preset("table1"),
                        MarginalPolicy::averaged);
  r.name = "sve-pair";
  return r;
}

TradeoffReport sve_fig2() {
  auto r = tradeoff_sum(s422(), {svetlichny(0, 1, 2), svetlichny(0, 1, 3)}, structure_preset("fig2"));
  r.name = "sve-fig2";
  return r;
}

Rational chsh_triple_value(const SignalingStructure& structure) {
  return tradeoff_sum(Scenario::uniform(3, 2, 2), {chsh_pair(0, 1), chsh_pair(1, 2), chsh_pair(2, 0)}, structure,
                      MarginalPolicy::pinned)
      .optimum;
}

TripleBound chsh_triple_bound(int grid_radius, unsigned threads) {
  auto structures = enumerate_structures(3, grid_radius);
  std::vector<Rational> values(structures.size());
  threads = std::max(1u, threads);
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < structures.size(); i += threads) values[i] = chsh_triple_value(structures[i]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  TripleBound out;
  for (std::size_t i = 0; i < structures.size(); ++i) {
    if (i == 0 || values[i] > out.value) {
      out.value = values[i];
      out.structure = structures[i];
    }
    out.per_structure.emplace_back(structures[i], values[i]);
  }
  return out;
}

std::vector<PinnedValue> table1(const SignalingStructure& structure, MarginalPolicy policy) {
  auto abc = compile(svetlichny(0, 1, 2), s422(), structure, policy);
  auto abd = compile(svetlichny(0, 1, 3), s422(), structure, policy);
  const ConstraintSystem system = rc_rows(s422(), structure);
  std::vector<PinnedValue> out;
  auto run = [&](const GameFunctional& pinned, int pin, const GameFunctional& maximized) {
    LpSolution sol = maximize_with_equality({maximized.coefficients, system}, pinned.coefficients, Rational(pin));
    PinnedValue v{pinned.name, Rational(pin), maximized.name, sol.status, sol.value};
    out.push_back(std::move(v));
  };
  run(abc, 8, abd);
  run(abd, 8, abc);
  run(abc, 0, abd);
  run(abd, 0, abc);
  return out;
}

std::vector<Table1Candidate> find_table1_structures(int grid_radius, unsigned threads,
                                                    MarginalPolicy policy) {
  auto structures = enumerate_structures(4, grid_radius);
  std::vector<std::optional<Table1Candidate>> found(structures.size());
  threads = std::max(1u, threads);
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < structures.size(); i += threads) {
      const auto& s = structures[i];
      TradeoffReport sum;
      try {
        sum = tradeoff_sum(s422(), {svetlichny(0, 1, 2), svetlichny(0, 1, 3)}, s, policy);
      } catch (const CompilationError&) {
        continue;
      }
      if (sum.optimum != 12) continue;
      auto pins = table1(s, policy);
      if (pins[0].status != LpStatus::optimal || pins[0].value != 4) continue;
      if (pins[1].status != LpStatus::optimal || pins[1].value != 0) continue;
      found[i] = Table1Candidate{s, sum.optimum, pins[0].value, pins[1].value};
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::vector<Table1Candidate> out;
  for (auto& f : found) {
    if (f) out.push_back(std::move(*f));
  }
  return out;
}

// ------------------------------------------------- nonlocality vs contextuality

Scenario contextual_scenario() { return Scenario({3, 9, 3}, {2, 4, 2}); }

int bob_context(int i, int j) { return 3 * i + j; }

std::vector<std::pair<int, int>> cycle_edges() { return {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}}; }

std::vector<std::pair<int, int>> chord_edges() { return {{0, 1}, {1, 2}, {2, 0}}; }

namespace {

constexpr unsigned kPrimedBit = 1;    // b' is bit 0 of Bob's composite output
constexpr unsigned kUnprimedBit = 2;  // b is bit 1

int bit_of(int o, unsigned mask) { return (static_cast<unsigned>(o) & mask) ? 1 : 0; }

// Row equating sum over {entries matching `keep` in context c1} with the same in c2.
void add_equal_marginals(ConstraintSystem& sys, const std::vector<std::uint32_t>& lhs,
                         const std::vector<std::uint32_t>& rhs) {
  ConstraintRow row;
  row.kind = RowKind::marginal;
  for (auto j : lhs) row.terms.emplace_back(j, Rational(1));
  for (auto j : rhs) row.terms.emplace_back(j, Rational(-1));
  sys.add_row(std::move(row));
}

}  // namespace

ConstraintSystem contextual_system() {
  const Scenario s = contextual_scenario();
  ConstraintSystem sys = rc_rows(s, structure_preset("fig1"));

  auto index = [&](int x, int ctx, int z, int a, int o, int c) {
    return static_cast<std::uint32_t>(s.flatten(std::vector<int>{x, ctx, z}, std::vector<int>{a, o, c}));
  };
  // Entries of context ctx at inputs (x, z) whose Bob bit under `mask` equals beta,
  // optionally restricted to a fixed a or c (-1 = summed).
  auto collect = [&](int x, int ctx, int z, unsigned mask, int beta, int a_fixed, int c_fixed) {
    std::vector<std::uint32_t> out;
    for (int a = 0; a < 2; ++a) {
      if (a_fixed >= 0 && a != a_fixed) continue;
      for (int o = 0; o < 4; ++o) {
        if (bit_of(o, mask) != beta) continue;
        for (int c = 0; c < 2; ++c) {
          if (c_fixed >= 0 && c != c_fixed) continue;
          out.push_back(index(x, ctx, z, a, o, c));
        }
      }
    }
    return out;
  };

  // Local no-disturbance: the joint statistics of each Bob observable with
  // Alice's and Charlie's outcomes do not depend on which compatible partner
  // Bob measures alongside it. B_i is shared by (i,0), (i,1), (i,2); B'_i by
  // (0,i), (1,i), (2,i). These rows imply the single-observable and the
  // (a, b_i | x), (b_i, c | z) versions.
  for (int x = 0; x < 3; ++x) {
    for (int z = 0; z < 3; ++z) {
      for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
          for (int beta = 0; beta < 2; ++beta) {
            for (int i = 0; i < 3; ++i) {
              for (int j = 1; j < 3; ++j) {
                add_equal_marginals(sys, collect(x, bob_context(i, 0), z, kUnprimedBit, beta, a, c),
                                    collect(x, bob_context(i, j), z, kUnprimedBit, beta, a, c));
                add_equal_marginals(sys, collect(x, bob_context(0, i), z, kPrimedBit, beta, a, c),
                                    collect(x, bob_context(j, i), z, kPrimedBit, beta, a, c));
              }
            }
          }
        }
      }
    }
  }
  return sys;
}

namespace {

CorrelatorExpression contextual_chain(int other) {
  CorrelatorExpression e{std::string("Ch3_B") + party_name(other), {}};
  auto b = [](int i) { return Observable{1, bob_context(i, i), kUnprimedBit}; };
  auto o = [&](int x) { return Observable{other, x, 1}; };
  e.terms.push_back({Rational(1), {b(0), o(0)}});
  e.terms.push_back({Rational(1), {b(1), o(0)}});
  e.terms.push_back({Rational(1), {b(1), o(1)}});
  e.terms.push_back({Rational(1), {b(2), o(1)}});
  e.terms.push_back({Rational(1), {b(2), o(2)}});
  e.terms.push_back({Rational(-1), {b(0), o(2)}});
  return e;
}

CorrelatorExpression contextual_cycle() {
  CorrelatorExpression e{"Cyc6_B", {}};
  const auto edges = cycle_edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Observable both{1, bob_context(edges[k].first, edges[k].second), kUnprimedBit | kPrimedBit};
    e.terms.push_back({Rational(k + 1 == edges.size() ? -1 : 1), {both}});
  }
  return e;
}

}  // namespace

std::vector<GameFunctional> contextual_functionals() {
  const Scenario s = contextual_scenario();
  return {compile(contextual_chain(0), s), compile(contextual_cycle(), s), compile(contextual_chain(2), s)};
}

TradeoffReport contextual_tradeoff() {
  auto system = contextual_system();
  auto report = solve_sum("contextual", contextual_functionals(), system, structure_preset("fig1"));
  report.notes.push_back("Bob's inputs are the 9 contexts (B_i, B'_j); composite output 2b + b'");
  report.notes.push_back("rows: normalization and B->{A,C} relativistic marginals over contexts; "
                         "(a, o, c | x, z) no-disturbance for every Bob observable o across the contexts sharing it; " +
                         std::to_string(system.size()) + " rows in total");
  report.notes.push_back("Ch3 terms read B_i in context (B_i, B'_i); Cyc6 reads the six cycle contexts");
  return report;
}

Rational contextual_cyc6_value() {
  const Scenario s = contextual_scenario();
  auto f = compile(contextual_cycle(), s);
  LpSolution sol = maximize({f.coefficients, contextual_system()});
  if (sol.status != LpStatus::optimal) throw ConfigurationError("Cyc6 LP is " + to_string(sol.status));
  return sol.value;
}

Rational cyc6_noncontextual_value() {
  // Observables B_0..B_2 are bits 0..2 and B'_0..B'_2 bits 3..5 of the assignment.
  int best = -100;
  const auto edges = cycle_edges();
  for (int v = 0; v < 64; ++v) {
    int sum = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      int b = (v >> edges[k].first) & 1;
      int bp = (v >> (3 + edges[k].second)) & 1;
      int product = (b ^ bp) ? -1 : 1;
      sum += (k + 1 == edges.size() ? -1 : 1) * product;
    }
    best = std::max(best, sum);
  }
  return Rational(best);
}

}  // namespace rcpoly
