#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = EFORGE_CLI_PATH;
const std::string kData = EFORGE_TEST_DATA;

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("eforge_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result eforge(const std::string& args, const std::string& env = {}) {
  const fs::path dir = scratch();
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + kCli + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string write_body(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, WitnessCheckExitsZeroWithEveryStagePassing) {
  const fs::path report = scratch() / "t1.json";
  const Result r = eforge("check t1 --inner " + data("ellipsoid_149.json") + " --outer " + data("ball_r3.json") +
                          " --apexes 64 --report " + report.string());
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto doc = nlohmann::json::parse(slurp(report));
  EXPECT_EQ(doc["schema"], "ellipsoid-forge/report-v1");
  EXPECT_EQ(doc["verdict"], "consistent");
  EXPECT_EQ(doc["samples"]["apexes"], 64);
  for (const auto& st : doc["stages"]) EXPECT_EQ(st["verdict"], "pass") << st["name"];
  EXPECT_FALSE(doc.contains("wall_time_ms"));
  // one summary line per stage plus the verdict line
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), static_cast<long>(doc["stages"].size()) + 1);
}

TEST(Cli, CounterexampleExitsTwo) {
  const Result r = eforge("check t4 --body " + data("l4_ball.json") + " --ball-radius 1.0");
  EXPECT_EQ(r.code, 2) << r.out << r.err;
  EXPECT_NE(r.out.find("hypothesis-violated"), std::string::npos);
}

TEST(Cli, PreconditionFailureExitsTwoWithAReport) {
  const Result r = eforge("check t1 --inner " + data("l4_ball.json") + " --outer " + data("unit_ball.json") +
                          " --report -");
  EXPECT_EQ(r.code, 2) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "hypothesis-violated");
  EXPECT_EQ(doc["stages"][0]["name"], "preconditions");
  EXPECT_NE(doc["notes"][0].get<std::string>().find("BodiesNotNested"), std::string::npos);
}

TEST(Cli, FailedConclusionExitsThree) {
  const std::string inner =
      write_body("inner.json", R"({"kind":"ellipsoid","dimension":3,"center":[0,0,0],"matrix":[[2,0,0],[0,2,0],[0,0,2]]})");
  const Result r = eforge("check t2 --inner " + inner + " --outer " + data("unit_ball.json") +
                          " --apexes 8 --tol homothetic=1e-300");
  EXPECT_EQ(r.code, 3) << r.out << r.err;
}

TEST(Cli, GrazeExportLiesInThePolarPlane) {
  const fs::path csv = scratch() / "graze.csv";
  const Result r = eforge("sample graze --body " + data("unit_ball.json") + " --apex 2,0,0 --m 200 --out " + csv.string());
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x1,x2,x3,residual");
  int rows = 0;
  while (std::getline(in, line)) {
    double x1 = 0, x2 = 0, x3 = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x1, &x2, &x3), 3);
    EXPECT_NEAR(x1, 0.5, 1e-12);
    EXPECT_NEAR(std::hypot(x2, x3), std::sqrt(3.0) / 2, 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 200);
  const auto meta = nlohmann::json::parse(slurp(csv.string() + ".json"));
  EXPECT_EQ(meta["source"], "graze");
  EXPECT_NEAR(meta["plane_fit"]["offset"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(meta["conic_fit"]["classification"], "ellipse");
}

TEST(Cli, OtherSamplers) {
  for (const std::string args : {"sample shadow --body " + data("ellipsoid_149.json") + " --direction 0,0,1 --m 16",
                                 "sample omega --body " + data("unit_ball.json") + " --apex 0,0,2 --apex2=0,0,-2 --m 16",
                                 "sample section --body " + data("l4_ball.json") + " --normal 0,0,1 --offset 0.2 --m 16"}) {
    const Result r = eforge(args);
    EXPECT_EQ(r.code, 0) << args << "\n" << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 17) << args;
  }
}

TEST(Cli, ReportsAreByteIdenticalAcrossRuns) {
  const std::string args = "check radon --body " + data("sheared_l3.json") + " --apexes 4 --seed 9 --report -";
  const Result a = eforge(args);
  const Result b = eforge(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["seed"], 9);
}

TEST(Cli, TimingIsOptIn) {
  const Result r = eforge("check pole --body " + data("unit_ball.json") + " --point 2,0,0 --timing --report -");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out).contains("wall_time_ms"));
}

TEST(Cli, ToleranceProfileAndOverridesAreEchoed) {
  const std::string args = "check pole --body " + data("unit_ball.json") + " --direction 0,1,0 --report -";
  const auto strict = nlohmann::json::parse(eforge(args, "ELLIPSOID_FORGE_PROFILE=strict").out);
  EXPECT_DOUBLE_EQ(strict["tolerances"]["ellipse"].get<double>(), 1e-7);
  const auto loose = nlohmann::json::parse(eforge(args + " --profile loose --tol pole=3e-4").out);
  EXPECT_DOUBLE_EQ(loose["tolerances"]["ellipse"].get<double>(), 1e-5);
  EXPECT_DOUBLE_EQ(loose["tolerances"]["pole"].get<double>(), 3e-4);
}

TEST(Cli, UsageAndInputErrorsExitOne) {
  EXPECT_EQ(eforge("").code, 1);
  EXPECT_EQ(eforge("check").code, 1);
  EXPECT_EQ(eforge("check t1 --inner missing.json --outer " + data("unit_ball.json")).code, 1);
  EXPECT_EQ(eforge("check pole --body " + data("unit_ball.json") + " --point 2,zero,0").code, 1);
  EXPECT_EQ(eforge("check pole --body " + data("unit_ball.json") + " --point 2,0").code, 1);
  EXPECT_EQ(eforge("check pole --body " + data("unit_ball.json") + " --point 2,0,0 --tol nonsense=1").code, 1);
  const std::string bad = write_body("bad.json", R"({"kind":"ellipsoid","dimension":3,"center":[0,0,0]})");
  const Result r = eforge("body validate " + bad);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("matrix"), std::string::npos);
  EXPECT_EQ(eforge("--help").code, 0);
}

TEST(Cli, BodyValidate) {
  for (const char* name : {"unit_ball.json", "ellipsoid_149.json", "l4_ball.json", "sheared_l3.json", "simplex.json"}) {
    const Result r = eforge(std::string("body validate ") + data(name));
    EXPECT_EQ(r.code, 0) << name << r.err;
    EXPECT_TRUE(nlohmann::json::parse(r.out)["valid"].get<bool>()) << name;
  }
}

TEST(Cli, SweepTabulatesTheFamily) {
  const fs::path csv = scratch() / "sweep.csv";
  const Result r = eforge("sweep --check pole --from 2 --to 4 --steps 3 --out " + csv.string());
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(slurp(csv));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0].rfind("exponent,verdict", 0), 0u);
  EXPECT_EQ(lines[1].rfind("2,consistent", 0), 0u);
  EXPECT_EQ(lines[3].rfind("4,hypothesis-violated", 0), 0u);
}
