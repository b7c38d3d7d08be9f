#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rcpoly/games.hpp"
#include "rcpoly/scenario.hpp"
#include "rcpoly/spacetime.hpp"
#include "rcpoly/tradeoff.hpp"

namespace rcpoly {

/// JSON round trips. Rationals are canonical "p/q" or "p" strings. Parsing
/// failures throw FormatError.

std::string to_json(const Scenario& scenario);
Scenario scenario_from_json(std::string_view text);

std::string to_json(const BoxVector& box);
BoxVector box_from_json(std::string_view text);

/// {"parties":N,"allowed":[{"from":p,"to":[q1,...]},...]}
std::string to_json(const SignalingStructure& structure);
SignalingStructure structure_from_json(std::string_view text);

/// {"name":..,"scenario":{..},"coefficients":[..]} plus any known bounds.
std::string to_json(const GameFunctional& game);
GameFunctional game_from_json(std::string_view text);

std::string to_json(const TradeoffReport& report);

}  // namespace rcpoly
