#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <unistd.h>

#include "ghr/cli.hpp"
#include "ghr/error.hpp"
#include "ghr/io.hpp"
#include "test_support.hpp"

namespace ghr {
namespace {

namespace fs = std::filesystem;

const fs::path kData = GHR_TEST_DATA;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("ghr_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string data(const char* name) { return (kData / name).string(); }

TEST(SpaceFormat, ParsesJsonAndPlainText) {
  const auto j = io::parse_space(R"({"name":"n","points":["a","b"],"matrix":[[0,1],[1,0]]})");
  EXPECT_EQ(j.name(), "n");
  EXPECT_EQ(j.label(1), "b");
  const auto t = io::parse_space("0 1 2\n1 0 1\n2 1 0\n", 1e-9, "line");
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.label(2), "p2");
  EXPECT_EQ(t.name(), "line");
  EXPECT_EQ(t(0, 2), 2.0);
}

TEST(SpaceFormat, RejectsBadInput) {
  auto code = [](std::string_view text) {
    try {
      io::parse_space(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidInput;
  };
  EXPECT_EQ(code("0 1 1"), ErrorCode::InvalidInput);
  EXPECT_EQ(code("0 x\nx 0"), ErrorCode::InvalidInput);
  EXPECT_EQ(code(R"({"matrix": [[0, 1], [1]]})"), ErrorCode::NotSquare);
  EXPECT_EQ(code(R"({"matrix": )"), ErrorCode::InvalidInput);
  EXPECT_EQ(code(R"({"points": ["a"], "matrix": [[0, 1], [1, 0]]})"), ErrorCode::SizeMismatch);
}

TEST(SpaceFormat, ExportUsesTheDocumentedFields) {
  const auto s = io::read_space(data("two_points_2.json"));
  const auto j = io::to_json(s);
  EXPECT_EQ(j.dump(), R"({"name":"X","points":["a","b"],"matrix":[[0.0,2.0],[2.0,0.0]]})");
  EXPECT_EQ(io::parse_space(j.dump()).matrix(), s.matrix());
}

TEST(CorrespondenceFormat, ReadsAndWrites) {
  const auto c = io::read_correspondence(data("full_2x2.json"));
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(io::correspondence_from_json(io::to_json(c)), c);
  EXPECT_THROW(io::correspondence_from_json(io::Json::parse(R"({"m":2,"n":2,"pairs":[[0,0]]})")),
               Error);
  EXPECT_THROW(io::correspondence_from_json(io::Json::parse(R"({"m":2,"pairs":[]})")), Error);
}

TEST(GhResultFormat, Fields) {
  const auto x = io::read_space(data("two_points_2.json"));
  const auto y = io::read_space(data("two_points_1.json"));
  const auto j = io::to_json(gh_distance_exact(x, y));
  EXPECT_EQ(j.at("value"), 0.5);
  EXPECT_EQ(j.at("method"), "exact");
  EXPECT_EQ(j.at("certified"), true);
  EXPECT_EQ(j.at("witness").at("pairs").size(), 2u);
}

TEST(ProductFormat, RoundTripReproducesTheVerification) {
  std::mt19937_64 rng(9);
  const auto x = testing::random_space(3, rng), y = testing::random_space(2, rng);
  const auto gh = gh_distance_exact(x, y);
  const auto [p, report] = realize_geodesic(x, y, gh.witness, ParamGrid::uniform(0, 1, 11));
  const auto text = io::dump(io::to_json(p));
  const auto loaded = io::product_from_json(io::Json::parse(text));
  EXPECT_EQ(loaded.dist, p.dist);
  EXPECT_EQ(loaded.c, p.c);
  EXPECT_EQ(loaded.grid.values(), p.grid.values());
  const auto again = verify_product(loaded);
  EXPECT_TRUE(again.passed());
  EXPECT_EQ(again.max_triangle_violation, report.max_triangle_violation);
  EXPECT_EQ(again.slice_hausdorff, report.slice_hausdorff);
  EXPECT_EQ(io::dump(io::to_json(loaded)), text);
}

TEST(ProductFormat, RejectsInconsistentLayouts) {
  auto j = io::Json::parse(R"({"c": 1, "grid": [0, 1],
      "points": [{"z":0,"t":0},{"z":0,"t":1}], "matrix": [[0,1],[1,0]]})");
  EXPECT_NO_THROW(io::product_from_json(j));
  j["points"][1]["t"] = 0.5;
  EXPECT_THROW(io::product_from_json(j), Error);
  j["points"][1]["t"] = 1;
  j["matrix"] = io::Json::parse("[[0]]");
  EXPECT_THROW(io::product_from_json(j), Error);
}

TEST(Cli, ValidateReportsKind) {
  const auto r = cli({"validate", data("two_points_2.json")});
  EXPECT_EQ(r.code, 0);
  const auto j = io::Json::parse(r.out);
  EXPECT_EQ(j.at("kind"), "metric");
  EXPECT_EQ(j.at("worst_triangle_deficit"), 0.0);

  const auto bad = cli({"validate", data("broken_triangle.txt")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("TriangleViolation: (0,2,1, deficit=1)"), std::string::npos) << bad.err;

  TempDir tmp;
  io::write_text_file(tmp.file("pseudo.txt"), "0 0\n0 0\n");
  EXPECT_EQ(cli({"validate", tmp.file("pseudo.txt")}).code, 0);
  EXPECT_EQ(cli({"validate", "--metric", tmp.file("pseudo.txt")}).code, 2);
}

TEST(Cli, Hausdorff) {
  const auto r = cli({"hausdorff", data("line3.txt"), "--a", "0", "--b", "0,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(io::Json::parse(r.out).at("value"), 2.0);
  EXPECT_EQ(cli({"hausdorff", data("line3.txt"), "--a", "0", "--b", "7"}).code, 2);
}

TEST(Cli, DistExactAndHeuristic) {
  const auto r = cli({"dist", "--exact", data("two_points_2.json"), data("two_points_1.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(io::Json::parse(r.out).at("value"), 0.5);
  const auto h = cli({"dist", "--heuristic", "--seed", "3", data("two_points_2.json"),
                      data("two_points_1.json")});
  EXPECT_EQ(h.code, 0);
  const auto j = io::Json::parse(h.out);
  EXPECT_EQ(j.at("value"), 0.5);
  EXPECT_EQ(j.at("certified"), false);
  EXPECT_EQ(cli({"dist", "--exact", "--heuristic", data("two_points_2.json"),
                 data("two_points_1.json")})
                .code,
            2);
}

TEST(Cli, SearchCapExceededExitsWithThree) {
  TempDir tmp;
  std::mt19937_64 rng(1);
  io::write_text_file(tmp.file("a.json"), io::dump(io::to_json(testing::random_space(6, rng))));
  io::write_text_file(tmp.file("b.json"), io::dump(io::to_json(testing::random_space(5, rng))));
  EXPECT_EQ(cli({"dist", tmp.file("a.json"), tmp.file("b.json")}).code, 3);
  EXPECT_EQ(cli({"dist", "--heuristic", tmp.file("a.json"), tmp.file("b.json")}).code, 0);
}

TEST(Cli, GeodesicSlice) {
  TempDir tmp;
  const auto r = cli({"geodesic", data("two_points_2.json"), data("two_points_1.json"), "--t",
                      "0.5", "--corr", data("full_2x2.json"), "-o", tmp.file("s.json")});
  EXPECT_EQ(r.code, 0);
  const auto j = io::read_json_file(tmp.file("s.json"));
  EXPECT_EQ(j.at("name"), "geodesic(t=0.5)");
  EXPECT_EQ(j.at("points").at(1), "(a,v)");
  EXPECT_EQ(j.at("matrix").at(0).at(3), 1.5);
  EXPECT_EQ(cli({"geodesic", data("two_points_2.json"), data("two_points_1.json"), "--t", "2"})
                .code,
            2);
}

TEST(Cli, RealizeThenVerifyRoundTrip) {
  TempDir tmp;
  const auto r = cli({"realize", data("two_points_2.json"), data("two_points_1.json"), "--grid",
                      "11", "-o", tmp.file("p.json"), "--report", tmp.file("r.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto report = io::Json::parse(r.out);
  EXPECT_EQ(report.at("passed"), true);
  EXPECT_EQ(report.at("corollary").at("applicable"), true);
  EXPECT_EQ(io::read_json_file(tmp.file("r.json")), report);
  const auto v = cli({"verify", tmp.file("p.json")});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(io::Json::parse(v.out).at("passed"), true);
}

TEST(Cli, RealizeIsometricNeedsExplicitScale) {
  TempDir tmp;
  const auto r = cli({"realize", data("two_points_2.json"), data("two_points_2.json"), "-o",
                      tmp.file("p.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("DegenerateGeodesic"), std::string::npos);
  EXPECT_EQ(cli({"realize", data("two_points_2.json"), data("two_points_2.json"), "--c", "1.0",
                 "-o", tmp.file("p.json")})
                .code,
            0);
  EXPECT_EQ(cli({"verify", tmp.file("p.json")}).code, 0);
}

TEST(Cli, FailedHypothesesExitWithOne) {
  TempDir tmp;
  const std::vector<std::string> base{"realize", data("two_points_2.json"),
                                      data("two_points_1.json"), "--c", "0.1", "-o",
                                      tmp.file("p.json")};
  const auto refused = cli(base);
  EXPECT_EQ(refused.code, 1);
  EXPECT_EQ(io::Json::parse(refused.out).at("error"), "ConditionFailed");
  EXPECT_FALSE(fs::exists(tmp.file("p.json")));

  auto forced_args = base;
  forced_args.push_back("--force");
  const auto forced = cli(forced_args);
  EXPECT_EQ(forced.code, 1);
  EXPECT_EQ(io::Json::parse(forced.out).at("hypotheses_forced"), true);
  EXPECT_EQ(cli({"verify", tmp.file("p.json")}).code, 1);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"validate", "/nonexistent/space.json"}).code, 2);
  EXPECT_EQ(cli({"realize", data("two_points_2.json"), data("two_points_1.json"), "--grid", "1",
                 "-o", "/tmp/unused.json"})
                .code,
            2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, OutputIsDeterministic) {
  TempDir tmp;
  std::mt19937_64 rng(21);
  io::write_text_file(tmp.file("a.json"), io::dump(io::to_json(testing::random_space(7, rng))));
  io::write_text_file(tmp.file("b.json"), io::dump(io::to_json(testing::random_space(6, rng))));
  const std::vector<std::string> h{"dist", "--heuristic", "--seed", "5", tmp.file("a.json"),
                                   tmp.file("b.json")};
  EXPECT_EQ(cli(h).out, cli(h).out);

  for (int i = 0; i < 2; ++i)
    cli({"realize", data("two_points_2.json"), data("two_points_1.json"), "-o",
         tmp.file("p" + std::to_string(i) + ".json")});
  EXPECT_EQ(io::read_text_file(tmp.file("p0.json")), io::read_text_file(tmp.file("p1.json")));
}

}  // namespace
}  // namespace ghr
