#include "reproduce.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "rcpoly/constraints.hpp"
#include "rcpoly/games.hpp"
#include "rcpoly/lp.hpp"
#include "rcpoly/spacetime.hpp"
#include "rcpoly/symmetry.hpp"
#include "rcpoly/tradeoff.hpp"

namespace rcpoly::reproduce {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string str(const Rational& v) { return to_string(v); }
std::string str(std::size_t v) { return std::to_string(v); }
std::string str(std::int64_t v) { return std::to_string(v); }

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

class Checker {
 public:
  explicit Checker(CriterionResult& result) : r_(result) { r_.passed = true; }

  template <class T>
  void equal(const std::string& what, const T& got, const T& want) {
    record(what + ": " + str(got) + " (expected " + str(want) + ")", got == want);
  }
  void truth(const std::string& what, bool ok) { record(what + (ok ? ": yes" : ": no"), ok); }
  void budget(const std::string& what, double seconds, double limit) {
    record(what + " took " + seconds_text(seconds) + " (budget " + seconds_text(limit) + ")", seconds < limit);
  }
  void note(const std::string& text) { r_.details.push_back("  " + text); }
  void fail(const std::string& text) { record(text, false); }

 private:
  void record(const std::string& line, bool ok) {
    r_.details.push_back((ok ? "  ok   " : "  FAIL ") + line);
    r_.passed = r_.passed && ok;
  }
  CriterionResult& r_;
};

const Scenario& s222() {
  static const Scenario s = Scenario::uniform(2, 2, 2);
  return s;
}
const Scenario& s322() {
  static const Scenario s = Scenario::uniform(3, 2, 2);
  return s;
}
const SignalingStructure& fig1() {
  static const SignalingStructure s = structure_preset("fig1");
  return s;
}

struct Timed {
  LpSolution solution;
  double seconds = 0;
};

Timed lp_max(const std::vector<Rational>& objective, const ConstraintSystem& system, Checker& ck,
             const std::string& what) {
  auto t0 = Clock::now();
  LpProblem problem{objective, system};
  Timed t{maximize(problem), 0};
  t.seconds = since(t0);
  if (t.solution.status != LpStatus::optimal) {
    ck.fail(what + " is " + to_string(t.solution.status));
  } else if (!verify_certificate(problem, t.solution)) {
    ck.fail(what + " dual certificate rejected");
  }
  return t;
}

// Lifts a (2,2,2) functional onto the pair (first, second) of (3,2,2); the third
// party sits at input 0 with its output summed.
std::vector<Rational> lift_pair(const std::vector<Rational>& f, int first, int second) {
  const int third = 3 - first - second;
  std::vector<Rational> out(s322().vector_length());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto [x, a] = s322().unflatten(i);
    if (x[third] != 0) continue;
    const int xs[2] = {x[first], x[second]};
    const int as[2] = {a[first], a[second]};
    out[i] = f[s222().flatten(xs, as)];
  }
  return out;
}

// ------------------------------------------------------------------ criteria

void dimension_counts(Session&, Checker& ck) {
  auto t0 = Clock::now();
  ck.equal("dim rc_rows((3,2,2), fig1)", dimension(rc_rows(s322(), fig1())), std::size_t{30});
  ck.equal("dim ns_rows((3,2,2))", dimension(ns_rows(s322())), std::size_t{26});
  ck.budget("both ranks", since(t0), 1.0);
}

void closed_form(Session&, Checker& ck) {
  auto t0 = Clock::now();
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      auto d = static_cast<std::int64_t>(dimension(rc_rows(Scenario::uniform(3, m, n), fig1())));
      ck.equal("(3," + std::to_string(m) + "," + std::to_string(n) + ") rank-based vs closed form", d,
               closed_form_dimension(m, n));
    }
  }
  ck.budget("nine ranks", since(t0), 120.0);
}

void rank_count(Session&, Checker& ck) {
  auto t0 = Clock::now();
  ck.equal("rank rc_rows((3,2,2), fig1)", rank(rc_rows(s322(), fig1())), std::size_t{34});
  ck.budget("rank", since(t0), 1.0);
}

void game_values(Session&, Checker& ck) {
  const ConstraintSystem ns = ns_rows(s322());
  const ConstraintSystem rc = rc_rows(s322(), fig1());
  struct Row {
    GameFunctional game;
    Rational c, n, r;
  };
  const Row rows[] = {{gyni(), Rational(1, 4), Rational(1, 3), Rational(1, 2)},
                      {gwa(), Rational(3, 4), Rational(3, 4), Rational(1)}};
  for (const auto& row : rows) {
    const std::string& name = row.game.name;
    ck.equal("classical " + name, classical_value(row.game), row.c);
    auto tn = lp_max(row.game.coefficients, ns, ck, "NS LP " + name);
    ck.equal("NS " + name, tn.solution.value, row.n);
    ck.budget("NS LP " + name, tn.seconds, 10.0);
    auto tr = lp_max(row.game.coefficients, rc, ck, "RC LP " + name);
    ck.equal("RC " + name, tr.solution.value, row.r);
    ck.budget("RC LP " + name, tr.seconds, 10.0);
  }
}

void explicit_boxes(Session&, Checker& ck) {
  auto t0 = Clock::now();
  const ConstraintSystem ns = ns_rows(s322());
  const ConstraintSystem rc = rc_rows(s322(), fig1());
  struct Row {
    const char* name;
    BoxVector box;
    GameFunctional game;
    Rational value;
  };
  const Row rows[] = {{"GYNI box", gyni_box(), gyni(), Rational(1, 2)}, {"GWA box", gwa_box(), gwa(), Rational(1)}};
  for (const auto& row : rows) {
    const std::string n = row.name;
    ck.truth(n + " is a valid box", validate_box(row.box).empty());
    ck.truth(n + " satisfies rc_rows(fig1)", rc.satisfied_by(row.box.entries));
    ck.truth(n + " violates ns_rows", !ns.satisfied_by(row.box.entries));
    ck.truth(n + " is extremal", is_extremal(row.box.entries, rc));
    ck.equal(n + " value under " + row.game.name, row.game.value(row.box.entries), row.value);
  }
  ck.budget("box checks", since(t0), 1.0);
}

void symmetric_extensions(Session&, Checker& ck) {
  auto t0 = Clock::now();
  const ConstraintSystem rc = rc_rows(s322(), fig1());
  const auto ab = compile(chsh_pair(0, 1), s322(), fig1());
  const auto cb = compile(chsh_pair(2, 1), s322(), fig1());

  BoxVector p = symmetric_extension(pr_box());
  ck.truth("PR extension is a valid box", validate_box(p).empty());
  ck.equal("PR extension <CHSH>_AB", ab.value(p.entries), Rational(4));
  ck.equal("PR extension <CHSH>_CB", cb.value(p.entries), Rational(4));
  ck.truth("PR extension satisfies rc_rows(fig1)", rc.satisfied_by(p.entries));

  const ConstraintSystem ns2 = ns_rows(s222());
  std::mt19937 rng(20161);
  std::uniform_int_distribution<int> coeff(0, 9);
  for (int t = 0; t < 3; ++t) {
    std::vector<Rational> f(s222().vector_length());
    for (auto& c : f) c = coeff(rng);
    auto opt = lp_max(f, ns2, ck, "random functional " + std::to_string(t));
    BoxVector q{s222(), opt.solution.primal};
    BoxVector ext = symmetric_extension(q);
    const std::string tag = "random functional " + std::to_string(t);
    ck.equal(tag + " AB value", evaluate(lift_pair(f, 0, 1), ext.entries), opt.solution.value);
    ck.equal(tag + " CB value", evaluate(lift_pair(f, 2, 1), ext.entries), opt.solution.value);
    ck.truth(tag + " extension satisfies rc_rows(fig1)", rc.satisfied_by(ext.entries));
  }
  ck.budget("extensions", since(t0), 60.0);
}

void tradeoffs(Session& session, Checker& ck) {
  auto timed = [](auto&& fn) {
    auto t0 = Clock::now();
    auto v = fn();
    return std::make_pair(v, since(t0));
  };
  auto [pair, pair_s] = timed([] { return sve_pair().optimum; });
  ck.equal("Sve(ABC) + Sve(ABD) over table1", pair, Rational(12));
  ck.budget("sve-pair LP", pair_s, 600.0);

  auto [pins, pins_s] = timed([] { return table1(structure_preset("table1"), MarginalPolicy::averaged); });
  for (const auto& p : pins) {
    ck.note(p.pinned + " = " + str(p.pin) + ": max " + p.maximized + " = " +
            (p.status == LpStatus::optimal ? str(p.value) : to_string(p.status)));
  }
  ck.equal("max Sve(ABD) with Sve(ABC) = 8", pins[0].value, Rational(4));
  ck.equal("max Sve(ABC) with Sve(ABD) = 8", pins[1].value, Rational(0));
  ck.budget("four pinned LPs", pins_s, 4 * 600.0);

  auto [triple, triple_s] = timed([&] { return chsh_triple_bound(3, session.options.threads); });
  for (const auto& [s, v] : triple.per_structure) ck.note("CHSH triple under " + s.describe() + ": " + str(v));
  ck.equal("CHSH triple, maximum over structures", triple.value, Rational(10));
  ck.budget("structure scan", triple_s, 7200.0);

  auto [fig2, fig2_s] = timed([] { return sve_fig2().optimum; });
  ck.equal("Sve(ABC) + Sve(ABD) over fig2", fig2, Rational(8));
  ck.budget("sve-fig2 LP", fig2_s, 600.0);

  auto [ctx, ctx_s] = timed([] { return contextual_tradeoff().optimum; });
  ck.equal("Ch3(B,A) + Cyc6(B) + Ch3(B,C)", ctx, Rational(12));
  ck.budget("contextual LP", ctx_s, 600.0);
}

void small_enumeration(Session& session, Checker& ck) {
  auto t0 = Clock::now();
  const ConstraintSystem ns = ns_rows(s222());
  EnumerationOptions opts;
  opts.threads = session.options.threads;
  auto result = enumerate_vertices(ns, opts);
  result.vertices.sort();
  auto expected = oracle::basic_feasible_solutions(ns);
  ck.equal("double description vertex count", result.vertices.size(), std::size_t{24});
  ck.equal("basis oracle vertex count", expected.size(), std::size_t{24});
  bool identical = result.vertices.size() == expected.size();
  for (std::size_t i = 0; identical && i < expected.size(); ++i) identical = result.vertices.vertex(i) == expected[i];
  ck.truth("vertex lists identical", identical);
  ck.budget("enumeration and oracle", since(t0), 60.0);
}

// Plain double description on this system exceeds several GB of intermediate
// rays, so the set is built orbit by orbit (double description on each vertex
// cone) and each representative is re-checked for extremality.
const VertexSet& full_vertices(Session& session, Checker& ck) {
  if (session.fig1_vertices) return *session.fig1_vertices;
  const ConstraintSystem rc = rc_rows(s322(), fig1());
  auto group = make_group(s322(), fig1());
  OrbitEnumerationOptions opts;
  auto log = session.options.log;
  opts.progress = [log](std::size_t done, std::size_t found, std::size_t) {
    if (log) log("  vertex cones " + std::to_string(done) + "/" + std::to_string(found));
  };
  auto result = enumerate_vertices_by_orbits(rc, group, opts);
  bool extremal = true;
  for (const auto& c : result.classes.classes) extremal = extremal && is_extremal(c.canonical, rc);
  ck.truth("orbit representatives are vertices", extremal);
  ck.note("orbits " + str(result.classes.classes.size()) + ", edge directions " + str(result.cone_rays));
  session.fig1_vertices = std::move(result.vertices);
  return *session.fig1_vertices;
}

void full_enumeration(Session& session, Checker& ck) {
  auto t0 = Clock::now();
  const VertexSet& vs = full_vertices(session, ck);
  auto census = vs.census();
  ck.equal("vertices", vs.size(), std::size_t{153600});
  ck.equal("CL", census.cl, std::size_t{64});
  ck.equal("NS", census.ns, std::size_t{2144});
  ck.equal("RC", census.rc, std::size_t{151392});
  ck.note("enumeration took " + seconds_text(since(t0)));
}

void classification(Session& session, Checker& ck) {
  const VertexSet& vs = full_vertices(session, ck);
  auto t0 = Clock::now();
  auto group = make_group(s322(), fig1());
  ck.equal("group order", group.order(), std::size_t{1024});
  auto classes = classify(vs, group, session.options.threads);
  auto cc = classes.class_census();
  ck.note("classes " + str(cc.total()) + " (CL " + str(cc.cl) + ", NS " + str(cc.ns) + ", RC " + str(cc.rc) + ")");
  bool ok = cc.total() == 196 && cc.cl == 1 && cc.ns == 5 && cc.rc == 190;
  if (!ok) {
    auto sub = make_group(s322(), fig1(), false);
    auto alt = classify(vs, sub, session.options.threads).class_census();
    ck.note("input-independent output relabelings (order " + str(sub.order()) + "): " + str(alt.total()) +
            " classes (CL " + str(alt.cl) + ", NS " + str(alt.ns) + ", RC " + str(alt.rc) + ")");
    ok = alt.total() == 196 && alt.cl == 1 && alt.ns == 5 && alt.rc == 190;
  }
  ck.truth("196 classes: 1 CL, 5 NS, 190 RC", ok);
  ck.budget("classification", since(t0), 1800.0);
}

void properties(Session&, Checker& ck) {
  std::size_t lps = 0;
  for (const auto& name : game_names()) {
    GameFunctional g = game_by_name(name);
    const SignalingStructure structure =
        g.scenario.parties() == 3 ? fig1() : structure_preset("ns", g.scenario.parties());
    Rational c = classical_value(g);
    auto n = lp_max(g.coefficients, ns_rows(g.scenario), ck, "NS LP " + name);
    auto r = lp_max(g.coefficients, rc_rows(g.scenario, structure), ck, "RC LP " + name);
    lps += 2;
    ck.truth(name + ": " + str(c) + " <= " + str(n.solution.value) + " <= " + str(r.solution.value),
             c <= n.solution.value && n.solution.value <= r.solution.value);
  }

  const ConstraintSystem rc = rc_rows(s322(), fig1());
  auto group = make_group(s322(), fig1());
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::set<std::vector<Rational>> vertices;
  for (int attempt = 0; vertices.size() < 100 && attempt < 2000; ++attempt) {
    std::vector<Rational> f(s322().vector_length());
    for (auto& c : f) c = coeff(rng);
    auto opt = lp_max(f, rc, ck, "random vertex LP");
    ++lps;
    vertices.insert(std::move(opt.solution.primal));
  }
  ck.equal("distinct random vertices", vertices.size(), std::size_t{100});
  std::size_t not_extremal = 0, broken = 0;
  for (const auto& v : vertices) {
    if (!is_extremal(v, rc)) ++not_extremal;
    for (std::size_t g = 0; g < group.order(); ++g) {
      if (!rc.satisfied_by(apply(group, g, v))) ++broken;
    }
  }
  ck.equal("random LP optima that are not vertices", not_extremal, std::size_t{0});
  ck.equal("vertex images violating rc_rows(fig1), 100 x " + str(group.order()), broken, std::size_t{0});
  ck.note(str(lps) + " LP certificates verified");
}

struct Entry {
  const char* title;
  void (*fn)(Session&, Checker&);
};

const std::map<int, Entry>& registry() {
  static const std::map<int, Entry> r = {
      {1, {"dimension of the fig1 and NS polytopes", dimension_counts}},
      {2, {"closed-form dimension for m, n in 1..3", closed_form}},
      {3, {"rank of the fig1 system", rank_count}},
      {4, {"GYNI and GWA values", game_values}},
      {5, {"explicit GYNI and GWA boxes", explicit_boxes}},
      {6, {"symmetric extensions of bipartite boxes", symmetric_extensions}},
      {7, {"trade-off bounds", tradeoffs}},
      {8, {"(2,2,2) NS enumeration against the basis oracle", small_enumeration}},
      {9, {"full (3,2,2) fig1 enumeration", full_enumeration}},
      {10, {"equivalence classes of the fig1 vertices", classification}},
      {11, {"property suites", properties}},
  };
  return r;
}

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> out;
  for (const auto& [id, e] : registry()) out.push_back(id);
  return out;
}

std::string criterion_title(int id) {
  auto it = registry().find(id);
  return it == registry().end() ? std::string() : it->second.title;
}

CriterionResult run_criterion(int id, Session& session) {
  CriterionResult result;
  result.id = id;
  auto it = registry().find(id);
  if (it == registry().end()) {
    result.title = "unknown criterion";
    result.details.push_back("  FAIL no criterion " + std::to_string(id));
    return result;
  }
  result.title = it->second.title;
  auto t0 = Clock::now();
  Checker ck(result);
  try {
    it->second.fn(session, ck);
  } catch (const std::exception& e) {
    ck.fail(std::string("exception: ") + e.what());
  }
  result.seconds = since(t0);
  return result;
}

std::string format(const CriterionResult& result, bool with_details) {
  std::ostringstream os;
  os << (result.passed ? "[PASS] " : "[FAIL] ") << result.id << " " << result.title << " ("
     << seconds_text(result.seconds) << ")";
  if (with_details) {
    for (const auto& d : result.details) os << "\n  " << d;
  }
  return os.str();
}

}  // namespace rcpoly::reproduce
