#include <json.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out, err;
  json report() const { return json::parse(out); }
};

std::string env(const char* name) {
  const char* v = std::getenv(name);
  if (!v) throw std::runtime_error(std::string(name) + " is not set");
  return v;
}

std::string quiver(const std::string& name) { return env("QSHUF_DATA") + "/" + name + ".json"; }

fs::path scratch() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("qshuf_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run(const std::string& args) {
  fs::path err = scratch() / "stderr.txt";
  std::string cmd = env("QSHUF_BIN") + " " + args + " 2>" + err.string();
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

fs::path write_file(const std::string& name, const std::string& body) {
  fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, DimsSingleEdge) {
  auto r = run("dims --quiver " + quiver("a2") + " --slope \"0,0\" --upto \"1,1\"");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["dims"], json::parse(R"({"0,0":1,"0,1":1,"1,0":1,"1,1":2})"));
  EXPECT_EQ(j["seeds"], json::parse("[7,8,9]"));
  EXPECT_TRUE(j["seeds_agree"].get<bool>());
  for (auto& rec : j["records"]) EXPECT_EQ(rec["per_seed"].size(), 3u);
  EXPECT_NE(r.err.find("max rss"), std::string::npos);
}

TEST(Cli, CheckConjectureJordan) {
  auto r = run("check-conjecture --quiver " + quiver("jordan") + " --upto 5 --seed 7 --trials 3");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_TRUE(j["all_equal"].get<bool>());
  std::vector<long> dims;
  for (auto& row : j["rows"]) dims.push_back(row["lhs"].get<long>());
  EXPECT_EQ(dims, (std::vector<long>{1, 1, 2, 3, 5, 7}));
}

TEST(Cli, CheckConjecturePrimitives) {
  auto r = run("check-conjecture --quiver " + quiver("jordan") + " --upto 3 --primitives");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["primitives"], json::parse(R"({"1":1,"2":1,"3":1})"));
}

TEST(Cli, ExactRejectedForConjecture) {
  auto r = run("check-conjecture --quiver " + quiver("jordan") + " --upto 2 --exact");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--exact"), std::string::npos);
}

TEST(Cli, MalformedQuiver) {
  auto bad = write_file("bad.json", "{\"vertices\": 1, \"edges\": [[0, 0]");
  auto r = run("dims --quiver " + bad.string() + " --upto 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("parse error"), std::string::npos) << r.err;
  auto worse = write_file("worse.json", "{\"vertices\": 1, \"edges\": [[0, 3]]}");
  EXPECT_EQ(run("dims --quiver " + worse.string() + " --upto 2").code, 1);
  EXPECT_EQ(run("dims --quiver " + (scratch() / "missing.json").string() + " --upto 2").code, 1);
}

TEST(Cli, MalformedSlope) {
  auto r = run("dims --quiver " + quiver("a2") + " --slope \"0,1/x\" --upto 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("character 3"), std::string::npos) << r.err;
}

TEST(Cli, DeterministicAcrossJobs) {
  std::string base = "dims --quiver " + quiver("kronecker2") + " --upto 2,2 --jobs ";
  auto a = run(base + "1"), b = run(base + "4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, KacWithBruteForce) {
  auto r = run("kac --quiver " + quiver("kronecker2") + " --dim 1,1 --fields 2,3");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["poly"], json::parse(R"(["1","1"])"));
  EXPECT_TRUE(j["bruteforce_equal"].get<bool>());
}

TEST(Cli, Exp) {
  auto r = run("exp --quiver " + quiver("a2") + " --upto 2,2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["exp"]["2,2"], "3");
}

TEST(Cli, ShufflePairAndOut) {
  auto out = scratch() / "e1.json";
  auto r = run("shuffle --quiver " + quiver("jordan") + " --word 0:1 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  auto element = json::parse(slurp(out))["result"];
  auto f1 = write_file("f1.json", element.dump());
  auto sq = run("shuffle --quiver " + quiver("jordan") + " --input " + f1.string() + " --input " + f1.string());
  ASSERT_EQ(sq.code, 0) << sq.err;
  EXPECT_TRUE(sq.report()["wheel_ok"].get<bool>());
  auto p = run("pair --quiver " + quiver("jordan") + " --input " + f1.string() + " --word 0:-1");
  ASSERT_EQ(p.code, 0) << p.err;
  auto gamma = p.report()["value"].get<std::string>();
  element["side"] = "-";
  element["terms"][0]["exps"] = json::parse("[[-1]]");
  auto g1 = write_file("g1.json", element.dump());
  auto q = run("pair --quiver " + quiver("jordan") + " --input " + f1.string() + " --input " + g1.string());
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_EQ(q.report()["value"], gamma);
}

TEST(Cli, Pbw) {
  auto r = run("pbw --quiver " + quiver("jordan") + " --slope 0 --theta 1 --word 0:0,0:1");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_TRUE(j["roundtrip"].get<bool>());
  ASSERT_EQ(j["terms"].size(), 1u);
  EXPECT_EQ(j["terms"][0]["factors"].size(), 2u);
  EXPECT_EQ(j["terms"][0]["factors"][0]["r"], "0");
  EXPECT_EQ(j["terms"][0]["factors"][1]["r"], "1");
}

TEST(Cli, PbwExact) {
  auto r = run("pbw --quiver " + quiver("a2") + " --exact --word 0:1,1:0");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["params"]["mode"], "exact");
  EXPECT_TRUE(r.report()["roundtrip"].get<bool>());
}

TEST(Cli, RMatrixCheck) {
  auto r = run("rmatrix-check --quiver " + quiver("jordan") + " --slope 0 --theta 1 --hbound 2 --window 3");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["contraction"]["failures"], 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("dims --quiver " + quiver("jordan")).code, 1);
  EXPECT_EQ(run("pbw --quiver " + quiver("jordan") + " --theta 0 --word 0:1").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}
