#include <gtest/gtest.h>

#include "rcpoly/error.hpp"
#include "rcpoly/games.hpp"
#include "rcpoly/json_io.hpp"

using namespace rcpoly;

TEST(Json, ScenarioRoundTrip) {
  Scenario s({2, 3, 1}, {2, 2, 4});
  EXPECT_EQ(scenario_from_json(to_json(s)), s);
}

TEST(Json, BoxRoundTrip) {
  auto box = gwa_box();
  auto back = box_from_json(to_json(box));
  EXPECT_EQ(back.scenario, box.scenario);
  EXPECT_EQ(back.entries, box.entries);
}

TEST(Json, StructureRoundTrip) {
  for (const auto& name : structure_preset_names()) {
    auto s = structure_preset(name);
    EXPECT_EQ(structure_from_json(to_json(s)), s) << name;
  }
}

TEST(Json, GameRoundTrip) {
  for (const auto& name : game_names()) {
    auto g = game_by_name(name);
    auto back = game_from_json(to_json(g));
    EXPECT_EQ(back.name, g.name);
    EXPECT_EQ(back.scenario, g.scenario);
    EXPECT_EQ(back.coefficients, g.coefficients);
  }
}

TEST(Json, MalformedInputIsRejected) {
  EXPECT_THROW(scenario_from_json("{"), FormatError);
  EXPECT_THROW(box_from_json(R"({"scenario":{"inputs":[2],"outputs":[2]},"entries":["1/0","0","0","0"]})"), FormatError);
  EXPECT_THROW(structure_from_json(R"({"parties":3,"allowed":[{"from":0,"to":[0,1]}]})"), std::exception);
}
