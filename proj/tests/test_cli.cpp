#include "mobius/cli.hpp"
#include "mobius/config_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kFixtures = MOBIUS_FIXTURES;
std::string fx(const std::string& name) { return kFixtures + "/" + name; }

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mobius::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mobius_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, GramSquare) {
  const Result r = run({"--json", "gram", fx("example3_a.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  const auto& m = j["matrix"];
  EXPECT_EQ(m[0][1].get<double>(), -1.0);
  EXPECT_EQ(m[2][3].get<double>(), -1.0);
  EXPECT_EQ(m[0][2].get<double>(), 0.0);
  EXPECT_EQ(m[1][3].get<double>(), 0.0);
  EXPECT_EQ(m[3][3].get<double>(), 1.0);
}

TEST(Cli, GramConcentric) {
  const Result r = run({"gram", "--json", fx("concentric.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["matrix"][0][1].get<double>(), 1.25, 1e-15);
}

TEST(Cli, GramEmptyConfiguration) {
  const Result r = run({"gram", fx("empty.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("empty configuration"), std::string::npos);
}

TEST(Cli, ParseErrorsExitTwo) {
  const fs::path dir = scratch("parse");
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_EQ(run({"gram", (dir / "bad.json").string()}).code, 2);
  EXPECT_EQ(run({"gram", (dir / "missing.json").string()}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, SolveSquareVsRectangleRefuses) {
  const Result r = run({"solve", "balls", fx("example3_a.json"), fx("example3_b.json")});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("CommonBoundaryPoint"), std::string::npos);
  const Result j = run({"--json", "solve", "balls", fx("example3_a.json"), fx("example3_b.json")});
  EXPECT_EQ(json::parse(j.out)["error"], "CommonBoundaryPoint");
}

TEST(Cli, SolveMismatchedDimensions) {
  EXPECT_EQ(run({"solve", "balls", fx("example3_a.json"), fx("concentric.json")}).code, 2);
  const fs::path dir = scratch("dims");
  ASSERT_EQ(run({"--seed", "3", "generate", "--kind", "balls", "--n", "4", "--dim", "3", "--out", dir.string()}).code, 0);
  EXPECT_EQ(run({"solve", "balls", fx("generic4.json"), (dir / "A.json").string()}).code, 2);
  EXPECT_EQ(run({"solve", "points", fx("generic4.json"), fx("generic4.json")}).code, 2);
}

TEST(Cli, SolvePointsGenerated) {
  const fs::path dir = scratch("points");
  ASSERT_EQ(run({"generate", "--kind", "points", "--n", "9", "--dim", "2", "--seed", "11", "--out", dir.string()}).code, 0);
  const Result r = run({"--json", "solve", "points", (dir / "A.json").string(), (dir / "B.json").string()});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_LE(json::parse(r.out)["residual_match"].get<double>(), 1e-7);
}

TEST(Cli, ClassifyFixtures) {
  const json co = json::parse(run({"--json", "classify", fx("coaxial.json")}).out);
  EXPECT_EQ(co["uniqueness"], "StronglySymmetric");
  EXPECT_NEAR(co["witness"]["radius"].get<double>(), 1.0, 1e-12);

  const json sq = json::parse(run({"--json", "classify", fx("example3_a.json")}).out);
  EXPECT_EQ(sq["span"]["kind"], "LightLike");
  EXPECT_EQ(sq["common_boundary_point"], true);
  EXPECT_EQ(sq["common_point"], "infinity");

  const json g4 = json::parse(run({"--json", "classify", fx("generic4.json")}).out);
  EXPECT_EQ(g4["uniqueness"], "Unique");
  EXPECT_EQ(g4["span"]["dim"], 4);
}

TEST(Cli, ApplyMaps) {
  const Result id = run({"apply", fx("identity_map.json"), fx("generic4.json")});
  ASSERT_EQ(id.code, 0);
  const auto a = mobius::io::load_configuration(fx("generic4.json"));
  const auto b = mobius::io::configuration_from_json(json::parse(id.out));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_LE((a.lifts()[i].coords() - b.lifts()[i].coords()).norm(), 1e-15);
  }

  const Result rot = run({"apply", fx("rotation_map.json"), fx("example3_a.json")});
  ASSERT_EQ(rot.code, 0);
  const json items = json::parse(rot.out)["items"];
  EXPECT_NEAR(items[0]["normal"][0].get<double>(), 0.0, 1e-15);
  EXPECT_NEAR(items[0]["normal"][1].get<double>(), 1.0, 1e-15);

  EXPECT_EQ(run({"apply", fx("negative_map.json"), fx("example3_a.json")}).code, 4);
}

TEST(Cli, VerifyExample2EnumeratesSides) {
  const Result r = run({"--json", "verify", fx("example2_a.json"), fx("example2_b.json")});
  EXPECT_EQ(r.code, 4);
  const json j = json::parse(r.out);
  EXPECT_LE(j["unsigned_max_difference"].get<double>(), 1e-12);
  ASSERT_EQ(j["side_assignments"].size(), 8u);
  for (const auto& s : j["side_assignments"]) EXPECT_GE(s["max_difference"].get<double>(), 0.1);
  EXPECT_EQ(j["some_assignment_matches"], false);
}

TEST(Cli, VerifyWithGeneratingMap) {
  const fs::path dir = scratch("verify");
  ASSERT_EQ(run({"generate", "--kind", "balls", "--n", "6", "--dim", "3", "--seed", "2", "--out", dir.string()}).code, 0);
  const Result r = run({"verify", (dir / "A.json").string(), (dir / "B.json").string(), "--map", (dir / "map.json").string()});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(run({"verify", (dir / "A.json").string(), (dir / "B.json").string(), "--map", fx("identity_map.json")}).code,
            2);
}

TEST(Cli, VerifyFullCrossRatiosOnPerturbedPoints) {
  const fs::path dir = scratch("cr");
  ASSERT_EQ(run({"generate", "--kind", "points", "--n", "7", "--dim", "2", "--seed", "5", "--out", dir.string()}).code, 0);
  EXPECT_EQ(run({"verify", "--full-cross-ratios", (dir / "A.json").string(), (dir / "B.json").string()}).code, 0);
  json b = json::parse(slurp(dir / "B.json"));
  for (auto& it : b["items"]) {
    if (it["type"] == "finite") {
      it["coords"][0] = it["coords"][0].get<double>() + 1e-3;
      break;
    }
  }
  std::ofstream(dir / "B2.json") << b.dump();
  const Result r = run({"--json", "verify", "--full-cross-ratios", (dir / "A.json").string(), (dir / "B2.json").string()});
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(json::parse(r.out)["cross_ratio"]["witness"].size(), 4u);
}

TEST(Cli, GenerateIsDeterministic) {
  const fs::path d1 = scratch("gen1"), d2 = scratch("gen2");
  for (const auto& d : {d1, d2}) {
    ASSERT_EQ(run({"generate", "--kind", "balls", "--n", "6", "--dim", "2", "--seed", "7", "--out", d.string()}).code, 0);
  }
  for (const char* f : {"A.json", "B.json", "map.json"}) EXPECT_EQ(slurp(d1 / f), slurp(d2 / f)) << f;
  EXPECT_EQ(run({"generate", "--kind", "balls", "--n", "0", "--dim", "2"}).code, 2);
  EXPECT_EQ(run({"generate", "--kind", "shapes", "--n", "3", "--dim", "2"}).code, 2);
  EXPECT_EQ(run({"generate", "--kind", "balls", "--n", "3", "--dim", "2", "--structure", "common-sphere"}).code, 2);
}

TEST(Cli, GenerateSolveVerifyLoop) {
  struct Case {
    std::string kind, structure, n, dim;
  };
  const std::vector<Case> cases{{"balls", "full", "6", "2"},
                                {"balls", "strongly-symmetric", "5", "2"},
                                {"points", "full", "6", "3"},
                                {"points", "common-sphere", "6", "2"},
                                {"points", "full", "2", "2"}};
  for (const auto& c : cases) {
    const fs::path dir = scratch("loop_" + c.kind + c.structure + c.n);
    ASSERT_EQ(run({"generate", "--kind", c.kind, "--n", c.n, "--dim", c.dim, "--structure", c.structure, "--seed",
                   "13", "--out", dir.string()})
                  .code,
              0);
    const Result s = run({"solve", c.kind, (dir / "A.json").string(), (dir / "B.json").string(), "-o",
                       (dir / "solved.json").string()});
    ASSERT_EQ(s.code, 0) << c.kind << " " << c.structure << "\n" << s.out << s.err;
    const Result v = run({"verify", (dir / "A.json").string(), (dir / "B.json").string(), "--map",
                       (dir / "solved.json").string()});
    EXPECT_EQ(v.code, 0) << c.kind << " " << c.structure << "\n" << v.out;
  }
  const fs::path dir = scratch("loop_common_point");
  ASSERT_EQ(run({"generate", "--kind", "balls", "--n", "5", "--dim", "2", "--structure", "common-point", "--out",
                 dir.string()})
                .code,
            0);
  const Result s = run({"solve", "balls", (dir / "A.json").string(), (dir / "B.json").string()});
  EXPECT_EQ(s.code, 4);
  EXPECT_NE(s.out.find("CommonBoundaryPoint"), std::string::npos);
}

TEST(Cli, GenerateStronglySymmetricClassifies) {
  const fs::path dir = scratch("ss");
  ASSERT_EQ(run({"generate", "--kind", "balls", "--n", "6", "--dim", "3", "--structure", "strongly-symmetric", "--out",
                 dir.string()})
                .code,
            0);
  const json j = json::parse(run({"--json", "classify", (dir / "A.json").string()}).out);
  EXPECT_EQ(j["uniqueness"], "StronglySymmetric");
}

TEST(Cli, RenderSquare) {
  const fs::path dir = scratch("render");
  const fs::path out = dir / "square.svg";
  ASSERT_EQ(run({"render", fx("example3_a.json"), "-o", out.string()}).code, 0);
  const std::string svg = slurp(out);
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = svg.find("class=\"halfspace\"", pos)) != std::string::npos; ++pos) ++lines;
  EXPECT_EQ(lines, 4u);
  EXPECT_NE(svg.find("clipped"), std::string::npos);
  // deterministic bytes
  ASSERT_EQ(run({"render", fx("example3_a.json"), "-o", (dir / "again.svg").string()}).code, 0);
  EXPECT_EQ(svg, slurp(dir / "again.svg"));
}

TEST(Cli, RenderExample2AndPoints) {
  const Result ex = run({"render", fx("example2_a.json"), "-o", "-"});
  ASSERT_EQ(ex.code, 0);
  EXPECT_NE(ex.out.find("class=\"sphere\""), std::string::npos);
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = ex.out.find("class=\"halfspace\"", pos)) != std::string::npos; ++pos) ++lines;
  EXPECT_EQ(lines, 2u);

  const Result pts = run({"render", fx("points.json"), "-o", "-"});
  ASSERT_EQ(pts.code, 0);
  std::size_t dots = 0;
  for (std::size_t pos = 0; (pos = pts.out.find("class=\"point\"", pos)) != std::string::npos; ++pos) ++dots;
  EXPECT_EQ(dots, 4u);
  EXPECT_NE(pts.out.find(">p1<"), std::string::npos);
  EXPECT_NE(pts.out.find("inf"), std::string::npos);

  EXPECT_EQ(run({"render", fx("triple_a.json"), "-o", "-"}).code, 2);
}

TEST(Cli, Hyperboloid) {
  const Result r = run({"--json", "hyperboloid", "0.5", "0"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out)["hyperboloid"];
  EXPECT_NEAR(j[0].get<double>(), 4.0 / 3, 1e-15);
  EXPECT_NEAR(j[2].get<double>(), 5.0 / 3, 1e-15);
}
