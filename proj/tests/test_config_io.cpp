#include "mobius/config_io.hpp"
#include "mobius/generate.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mobius;
using nlohmann::json;

namespace {

int exit_of(const json& j) {
  try {
    io::configuration_from_json(j);
  } catch (const io::InputError& e) {
    return e.exit_code();
  }
  return 0;
}

json balls_doc(json items) { return json{{"version", 1}, {"dim", 2}, {"kind", "balls"}, {"items", items}}; }

}  // namespace

TEST(ConfigIo, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (auto kind : {ConfigKind::Balls, ConfigKind::Points}) {
      const auto inst = generate_instance(kind, 7, 1 + static_cast<Index>(seed % 3), seed);
      const Configuration back = io::configuration_from_json(json::parse(io::dump(io::configuration_to_json(inst.b))));
      ASSERT_EQ(back.size(), inst.b.size());
      EXPECT_EQ(back.labels(), inst.b.labels());
      for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back.lifts()[i].coords(), inst.b.lifts()[i].coords());
      }
      const LorentzMap m = io::map_from_json(json::parse(io::dump(io::map_to_json(inst.map))));
      EXPECT_EQ(m.matrix(), inst.map.matrix());
    }
  }
}

TEST(ConfigIo, ParseErrors) {
  EXPECT_EQ(exit_of(json::array()), 2);
  EXPECT_EQ(exit_of(json{{"dim", 2}, {"kind", "balls"}, {"items", json::array()}}), 2);
  EXPECT_EQ(exit_of(json{{"version", 2}, {"dim", 2}, {"kind", "balls"}, {"items", json::array()}}), 2);
  EXPECT_EQ(exit_of(json{{"version", 1}, {"dim", 2}, {"kind", "circles"}, {"items", json::array()}}), 2);
  EXPECT_EQ(exit_of(balls_doc({{{"label", "a"}, {"type", "blob"}}})), 2);
  EXPECT_EQ(exit_of(balls_doc({{{"label", "a"}, {"type", "sphere"}, {"center", {0, 0}}}})), 2);
  EXPECT_EQ(exit_of(balls_doc({{{"label", "a"}, {"type", "sphere"}, {"center", {0, "x"}}, {"radius", 1}}})), 2);
}

TEST(ConfigIo, SemanticErrorsNameTheItem) {
  EXPECT_EQ(exit_of(balls_doc(json::array())), 3);
  const json bad_radius = balls_doc({{{"label", "wheel"}, {"type", "sphere"}, {"center", {0, 0}}, {"radius", -1}}});
  EXPECT_EQ(exit_of(bad_radius), 3);
  try {
    io::configuration_from_json(bad_radius);
  } catch (const io::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("wheel"), std::string::npos);
  }
  EXPECT_EQ(exit_of(balls_doc({{{"label", "h"}, {"type", "halfspace"}, {"normal", {1, 1}}, {"offset", 0}}})), 3);
  EXPECT_EQ(exit_of(balls_doc({{{"label", "a"}, {"type", "sphere"}, {"center", {0, 0}}, {"radius", 1}},
                               {{"label", "a"}, {"type", "sphere"}, {"center", {1, 0}}, {"radius", 1}}})),
            3);
  EXPECT_EQ(exit_of(balls_doc({{{"label", "a"}, {"type", "sphere"}, {"center", {0, 0, 0}}, {"radius", 1}}})), 3);
  const json dup = {{"version", 1},
                    {"dim", 1},
                    {"kind", "points"},
                    {"items", {{{"label", "p"}, {"type", "finite"}, {"coords", {1}}},
                               {{"label", "q"}, {"type", "finite"}, {"coords", {1}}}}}};
  EXPECT_EQ(exit_of(dup), 3);
}

TEST(ConfigIo, MapValidation) {
  json m{{"version", 1}, {"dim", 1}, {"matrix", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  EXPECT_NO_THROW(io::map_from_json(m));
  m["matrix"][0][0] = 1.0 + 1e-7;
  std::ostringstream warn;
  EXPECT_NO_THROW(io::map_from_json(m, &warn));
  EXPECT_NE(warn.str().find("warning"), std::string::npos);
  m["matrix"][0][0] = 1.1;
  try {
    io::map_from_json(m);
    ADD_FAILURE();
  } catch (const io::InputError& e) {
    EXPECT_EQ(e.exit_code(), 3);
  }
  m["matrix"] = {{1, 0}, {0, 1}};
  try {
    io::map_from_json(m);
    ADD_FAILURE();
  } catch (const io::InputError& e) {
    EXPECT_EQ(e.exit_code(), 2);
  }
}
