#include "rcpoly/json_io.hpp"

#include <json.hpp>

#include "rcpoly/error.hpp"

namespace rcpoly {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed ") + what + ": " + e.what());
  }
}

json scenario_json(const Scenario& s) {
  return {{"parties", s.parties()}, {"inputs", s.inputs()}, {"outputs", s.outputs()}};
}

Scenario scenario_of(const json& j) {
  auto inputs = j.at("inputs").get<std::vector<int>>();
  auto outputs = j.at("outputs").get<std::vector<int>>();
  if (j.contains("parties") && j.at("parties").get<std::size_t>() != inputs.size()) {
    throw FormatError("scenario party count disagrees with its cardinality lists");
  }
  return Scenario(std::move(inputs), std::move(outputs));
}

json rationals_json(const std::vector<Rational>& v) { return to_strings(v); }

std::vector<Rational> rationals_of(const json& j) { return parse_rationals(j.get<std::vector<std::string>>()); }

json structure_json(const SignalingStructure& s) {
  json allowed = json::array();
  for (const auto& r : s.relations()) {
    std::vector<int> to;
    for (int q = 0; q < s.parties(); ++q) {
      if (r.targets & party_bit(q)) to.push_back(q);
    }
    allowed.push_back({{"from", r.from}, {"to", to}});
  }
  return {{"parties", s.parties()}, {"allowed", allowed}};
}

}  // namespace

std::string to_json(const Scenario& scenario) { return scenario_json(scenario).dump(); }

Scenario scenario_from_json(std::string_view text) {
  return guarded("scenario", [&] { return scenario_of(parse(text)); });
}

std::string to_json(const BoxVector& box) {
  return json{{"scenario", scenario_json(box.scenario)}, {"entries", rationals_json(box.entries)}}.dump();
}

BoxVector box_from_json(std::string_view text) {
  return guarded("box", [&] {
    json j = parse(text);
    BoxVector box{scenario_of(j.at("scenario")), rationals_of(j.at("entries"))};
    if (box.entries.size() != box.scenario.vector_length()) {
      throw FormatError("box has " + std::to_string(box.entries.size()) + " entries, scenario needs " +
                        std::to_string(box.scenario.vector_length()));
    }
    return box;
  });
}

std::string to_json(const SignalingStructure& structure) { return structure_json(structure).dump(); }

SignalingStructure structure_from_json(std::string_view text) {
  return guarded("structure", [&] {
    json j = parse(text);
    SignalingStructure s(j.at("parties").get<int>());
    for (const auto& rel : j.at("allowed")) {
      PartySet to = 0;
      for (int q : rel.at("to").get<std::vector<int>>()) {
        if (q < 0 || q >= s.parties()) throw FormatError("structure names party " + std::to_string(q));
        to |= party_bit(q);
      }
      s.allow(rel.at("from").get<int>(), to);
    }
    return s;
  });
}

std::string to_json(const GameFunctional& game) {
  json j{{"name", game.name}, {"scenario", scenario_json(game.scenario)}, {"coefficients", rationals_json(game.coefficients)}};
  if (game.classical_bound) j["classical_bound"] = to_string(*game.classical_bound);
  if (game.ns_bound) j["ns_bound"] = to_string(*game.ns_bound);
  if (game.rc_bound) j["rc_bound"] = to_string(*game.rc_bound);
  return j.dump();
}

GameFunctional game_from_json(std::string_view text) {
  return guarded("game", [&] {
    json j = parse(text);
    GameFunctional g{j.value("name", std::string("game")), scenario_of(j.at("scenario")),
                     rationals_of(j.at("coefficients")), {}, {}, {}};
    if (g.coefficients.size() != g.scenario.vector_length()) {
      throw FormatError("game has " + std::to_string(g.coefficients.size()) + " coefficients, scenario needs " +
                        std::to_string(g.scenario.vector_length()));
    }
    if (j.contains("classical_bound")) g.classical_bound = parse_rational(j["classical_bound"].get<std::string>());
    if (j.contains("ns_bound")) g.ns_bound = parse_rational(j["ns_bound"].get<std::string>());
    if (j.contains("rc_bound")) g.rc_bound = parse_rational(j["rc_bound"].get<std::string>());
    return g;
  });
}

std::string to_json(const TradeoffReport& report) {
  json terms = json::array();
  for (const auto& t : report.terms) terms.push_back({{"name", t.name}, {"value", to_string(t.value)}});
  json j{{"name", report.name},
         {"scenario", scenario_json(report.scenario)},
         {"structure", structure_json(report.structure)},
         {"structure_text", report.structure.describe()},
         {"expressions", report.expressions},
         {"optimum", to_string(report.optimum)},
         {"terms", terms},
         {"witness", rationals_json(report.witness)},
         {"certificate_hash", report.certificate_hash},
         {"notes", report.notes}};
  return j.dump(1);
}

}  // namespace rcpoly
