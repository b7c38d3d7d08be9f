// rcpoly: command-line front end for the relativistic-causal polytope library.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rcpoly/constraints.hpp"
#include "rcpoly/error.hpp"
#include "rcpoly/games.hpp"
#include "rcpoly/json_io.hpp"
#include "rcpoly/lp.hpp"
#include "rcpoly/polytope.hpp"
#include "rcpoly/spacetime.hpp"
#include "rcpoly/symmetry.hpp"
#include "rcpoly/tradeoff.hpp"
#include "reproduce.hpp"

namespace fs = std::filesystem;
using namespace rcpoly;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write " + path.string());
  out << text;
}

std::vector<int> split_ints(const std::string& text, char sep) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigurationError("bad integer '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

// "n,m:k,m:k,..." (per party) or "n,m,k" (uniform), or a JSON file.
Scenario parse_scenario(const std::string& text) {
  if (fs::is_regular_file(text)) return scenario_from_json(slurp(text));
  std::stringstream ss(text);
  std::string head;
  std::getline(ss, head, ',');
  const int n = split_ints(head, ',').at(0);
  std::vector<std::string> parts;
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() == 2 && parts[0].find(':') == std::string::npos) {
    return Scenario::uniform(n, split_ints(parts[0], ',')[0], split_ints(parts[1], ',')[0]);
  }
  if (static_cast<int>(parts.size()) != n) {
    throw ConfigurationError("scenario '" + text + "' lists " + std::to_string(parts.size()) + " parties, expected " +
                             std::to_string(n));
  }
  std::vector<int> m, k;
  for (const auto& p : parts) {
    auto mk = split_ints(p, ':');
    if (mk.size() != 2) throw ConfigurationError("party entry '" + p + "' is not m:k");
    m.push_back(mk[0]);
    k.push_back(mk[1]);
  }
  return Scenario(m, k);
}

SignalingStructure load_structure(const std::string& text, int parties) {
  if (fs::is_regular_file(text)) return structure_from_json(slurp(text));
  return structure_preset(text, parties);
}

GameFunctional load_game(const std::string& text) {
  if (fs::is_regular_file(text)) return game_from_json(slurp(text));
  return game_by_name(text);
}

struct Common {
  std::string scenario = "3,2,2";
  std::string structure = "fig1";
  std::string out;
  std::string checkpoint;
  std::string method = "orbits";
  unsigned threads = 1;
};

void add_scenario(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario, "n,m1:k1,...,mn:kn or n,m,k or a JSON file")->capture_default_str();
}
void add_structure(CLI::App* cmd, Common& c) {
  cmd->add_option("--structure", c.structure, "preset name or JSON file")->capture_default_str();
}
void add_threads(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
}

void print_report(const TradeoffReport& r) {
  std::cout << r.name << " over " << r.scenario.describe() << " " << r.structure.describe() << "\n";
  std::cout << "optimum " << to_string(r.optimum) << "\n";
  for (const auto& t : r.terms) std::cout << "  " << t.name << " = " << to_string(t.value) << "\n";
  for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
  std::cout << "certificate " << r.certificate_hash << "\n";
}

int cmd_dim(const Common& c) {
  Scenario s = parse_scenario(c.scenario);
  SignalingStructure st = load_structure(c.structure, s.parties());
  ConstraintSystem sys = rc_rows(s, st);
  std::cout << "rows " << sys.size() << ", rank " << rank(sys) << "\n";
  std::string closed = "-";
  const bool uniform = std::adjacent_find(s.inputs().begin(), s.inputs().end(), std::not_equal_to<>()) ==
                           s.inputs().end() &&
                       std::adjacent_find(s.outputs().begin(), s.outputs().end(), std::not_equal_to<>()) ==
                           s.outputs().end();
  if (s.parties() == 3 && uniform && st == structure_preset("fig1")) {
    closed = std::to_string(closed_form_dimension(s.inputs()[0], s.outputs()[0]));
  }
  std::cout << dimension(sys) << " / " << closed << "\n";
  return 0;
}

int cmd_solve(const Common& c, const std::string& game_spec, const std::string& theory) {
  GameFunctional g = load_game(game_spec);
  if (theory == "classical") {
    std::cout << g.name << " classical " << to_string(classical_value(g, c.threads)) << "\n";
    return 0;
  }
  ConstraintSystem sys =
      theory == "ns" ? ns_rows(g.scenario) : rc_rows(g.scenario, load_structure(c.structure, g.scenario.parties()));
  LpProblem problem{g.coefficients, sys};
  LpSolution sol = maximize(problem);
  if (sol.status != LpStatus::optimal) {
    std::cout << g.name << " " << theory << " " << to_string(sol.status) << "\n";
    return 1;
  }
  std::cout << g.name << " " << theory << " " << to_string(sol.value) << "\n";
  if (!c.out.empty()) {
    write_file(c.out, to_json(BoxVector{g.scenario, sol.primal}) + "\n");
    std::cout << "witness " << c.out << "\n";
  }
  return verify_certificate(problem, sol) ? 0 : 1;
}

int cmd_enumerate(const Common& c) {
  Scenario s = parse_scenario(c.scenario);
  SignalingStructure st = load_structure(c.structure, s.parties());
  const ConstraintSystem system = rc_rows(s, st);
  VertexSet vertices;
  bool complete = true;
  if (c.method == "orbits") {
    if (!c.checkpoint.empty()) throw ConfigurationError("--checkpoint applies to --method dd only");
    OrbitEnumerationOptions opts;
    opts.progress = [](std::size_t done, std::size_t found, std::size_t) {
      std::cerr << "vertex cones " << done << "/" << found << "\n";
    };
    auto result = enumerate_vertices_by_orbits(system, make_group(s, st), opts);
    std::cout << "orbits " << result.classes.classes.size() << "\n";
    vertices = std::move(result.vertices);
  } else {
    EnumerationOptions opts;
    opts.threads = c.threads;
    if (!c.checkpoint.empty()) opts.checkpoint_dir = c.checkpoint;
    opts.progress = [](std::size_t done, std::size_t total, std::size_t rays) {
      std::cerr << "inserted " << done << "/" << total << ", rays " << rays << "\n";
    };
    auto result = enumerate_vertices(system, opts);
    result.vertices.sort();
    complete = result.complete;
    vertices = std::move(result.vertices);
  }
  auto census = vertices.census();
  std::cout << "vertices " << vertices.size() << " (CL " << census.cl << ", NS " << census.ns << ", RC "
            << census.rc << ")" << (complete ? "" : " incomplete") << "\n";
  if (!c.out.empty()) {
    write_file(c.out, to_ext(vertices));
    std::cout << "wrote " << c.out << "\n";
  }
  return complete ? 0 : 2;
}

int cmd_classify(const Common& c, const std::string& ext, bool fixed_outputs) {
  Scenario s = parse_scenario(c.scenario);
  SignalingStructure st = load_structure(c.structure, s.parties());
  VertexSet vs = from_ext(slurp(ext), s);
  auto group = make_group(s, st, !fixed_outputs);
  auto classes = classify(vs, group, c.threads);
  auto cc = classes.class_census();
  std::cout << class_report_table(classes);
  std::cout << "group order " << group.order() << ", classes " << cc.total() << " (CL " << cc.cl << ", NS " << cc.ns
            << ", RC " << cc.rc << ")\n";
  if (!c.out.empty()) write_file(c.out, class_report_json(classes) + "\n");
  return 0;
}

int cmd_tradeoff(const Common& c, const std::string& name) {
  if (name == "sve-pair" || name == "sve-fig2" || name == "contextual") {
    TradeoffReport r = name == "sve-pair" ? sve_pair() : name == "sve-fig2" ? sve_fig2() : contextual_tradeoff();
    print_report(r);
    if (!c.out.empty()) write_file(c.out, to_json(r) + "\n");
    return 0;
  }
  if (name == "chsh-triple") {
    auto b = chsh_triple_bound(3, c.threads);
    for (const auto& [s, v] : b.per_structure) std::cout << s.describe() << " " << to_string(v) << "\n";
    std::cout << "maximum " << to_string(b.value) << " under " << b.structure.describe() << "\n";
    return 0;
  }
  if (name == "table1") {
    SignalingStructure st = structure_preset("table1");
    std::cout << "structure " << st.describe() << "\n";
    for (const auto& p : table1(st, MarginalPolicy::averaged)) {
      std::cout << p.pinned << " = " << to_string(p.pin) << "  ->  max " << p.maximized << " = "
                << (p.status == LpStatus::optimal ? to_string(p.value) : to_string(p.status)) << "\n";
    }
    return 0;
  }
  throw ConfigurationError("unknown trade-off '" + name + "'");
}

int cmd_structures(int parties, int radius) {
  for (const auto& s : enumerate_structures(parties, radius)) std::cout << s.describe() << "\n";
  return 0;
}

int cmd_reproduce(const Common& c, const std::vector<int>& only, bool verbose) {
  reproduce::Session session;
  session.options.threads = c.threads;
  if (verbose) session.options.log = [](const std::string& line) { std::cerr << line << "\n"; };
  auto ids = only.empty() ? reproduce::criterion_ids() : only;
  int failed = 0;
  for (int id : ids) {
    auto r = reproduce::run_criterion(id, session);
    std::cout << reproduce::format(r, verbose) << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact relativistic-causal correlation polytopes"};
  app.require_subcommand(1);
  Common c;

  auto* dim = app.add_subcommand("dim", "rank-based and closed-form dimension");
  add_scenario(dim, c);
  add_structure(dim, c);

  std::string game = "gyni", theory = "rc";
  auto* solve = app.add_subcommand("solve", "optimal value of a game");
  solve->add_option("--game", game, "registered name or JSON file")->capture_default_str();
  solve->add_option("--theory", theory)->check(CLI::IsMember({"classical", "ns", "rc"}))->capture_default_str();
  add_structure(solve, c);
  solve->add_option("--out", c.out, "witness box JSON");
  add_threads(solve, c);

  auto* enumerate = app.add_subcommand("enumerate", "vertex enumeration to a .ext file");
  add_scenario(enumerate, c);
  add_structure(enumerate, c);
  enumerate->add_option("--out", c.out, ".ext output");
  enumerate->add_option("--method", c.method, "orbits: per-orbit vertex cones; dd: plain double description")
      ->check(CLI::IsMember({"orbits", "dd"}))
      ->capture_default_str();
  enumerate->add_option("--checkpoint", c.checkpoint, "checkpoint directory for --method dd (resumes when present)");
  add_threads(enumerate, c);

  std::string ext;
  bool fixed_outputs = false;
  auto* classify_cmd = app.add_subcommand("classify", "equivalence classes of a vertex file");
  classify_cmd->add_option("ext", ext, ".ext file")->required()->check(CLI::ExistingFile);
  add_scenario(classify_cmd, c);
  add_structure(classify_cmd, c);
  classify_cmd->add_flag("--input-independent-outputs", fixed_outputs,
                         "one output relabeling per party instead of one per input");
  classify_cmd->add_option("--out", c.out, "class report JSON");
  add_threads(classify_cmd, c);

  std::string tradeoff_name;
  auto* tradeoff = app.add_subcommand("tradeoff", "trade-off linear programs");
  tradeoff->add_option("name", tradeoff_name)
      ->required()
      ->check(CLI::IsMember({"sve-pair", "sve-fig2", "chsh-triple", "table1", "contextual"}));
  tradeoff->add_option("--out", c.out, "report JSON");
  add_threads(tradeoff, c);

  int parties = 3, radius = 3;
  auto* structures = app.add_subcommand("structures", "signaling structures realizable on a (1+1)-D grid");
  structures->add_option("--parties", parties)->check(CLI::Range(2, 4))->capture_default_str();
  structures->add_option("--radius", radius)->check(CLI::Range(1, 8))->capture_default_str();

  std::vector<int> only;
  bool verbose = false;
  auto* repro = app.add_subcommand("reproduce-paper", "run every acceptance criterion");
  repro->add_option("--only", only, "criterion numbers");
  repro->add_flag("-v,--verbose", verbose, "print each check");
  add_threads(repro, c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dim) return cmd_dim(c);
    if (*solve) return cmd_solve(c, game, theory);
    if (*enumerate) return cmd_enumerate(c);
    if (*classify_cmd) return cmd_classify(c, ext, fixed_outputs);
    if (*tradeoff) return cmd_tradeoff(c, tradeoff_name);
    if (*structures) return cmd_structures(parties, radius);
    if (*repro) return cmd_reproduce(c, only, verbose);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
