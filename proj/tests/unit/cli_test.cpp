#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

namespace fs = std::filesystem;
using fredholm::io::json;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fredholm_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

  CliRun run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(CLI_PATH) + " " + args + " > " + out + " 2> " + path("stderr.txt");
    CliRun r;
    const int raw = std::system(cmd.c_str());
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    return r;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, DecideExitCodes) {
  CliRun r = run("decide --problem " + sample("shift_pair.json") + " --target fredholm");
  EXPECT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "Exists");
  EXPECT_EQ(j.at("condition_i"), true);

  EXPECT_EQ(run("decide --problem " + sample("raw_indeterminate.json")).status, 3);
  EXPECT_EQ(run("decide --problem " + sample("shift_pair.json") + " --target upper-weyl --lambda 2").status, 0);
  // FS(inf) - 1 has non-closed range
  EXPECT_EQ(run("decide --problem " + sample("shift_pair.json") + " --target upper-weyl --lambda 1").status, 2);
}

TEST_F(Cli, Errors) {
  EXPECT_EQ(run("decide --problem " + path("missing.json") + " --target fredholm").status, 1);
  std::ofstream(path("bad.json")) << "{ not json";
  EXPECT_EQ(run("decide --problem " + path("bad.json") + " --target fredholm").status, 1);
  EXPECT_EQ(run("decide --problem " + sample("shift_pair.json") + " --target sideways").status, 1);
  EXPECT_EQ(run("construct --problem " + sample("raw_indeterminate.json")).status, 1);
  EXPECT_EQ(run("construct --problem " + sample("shift_pair.json") + " --target lower-weyl --lambda 1").status, 1);
}

TEST_F(Cli, ConstructVerifyRoundTrip) {
  for (const char* name : {"shift_pair.json", "row_two.json", "fredholm_pair.json", "corner.json"}) {
    const std::string cert = path("cert.json");
    ASSERT_EQ(run("construct --problem " + sample(name) + " --out " + cert).status, 0) << name;
    const CliRun v = run("verify --problem " + sample(name) + " --certificate " + cert + " --sizes 32,64,128");
    EXPECT_EQ(v.status, 0) << name << "\n" << v.out;
    const json report = json::parse(v.out);
    EXPECT_TRUE(report.at("pass").get<bool>());

    // emitted certificates re-parse to the same object
    const json c = json::parse(slurp(cert));
    EXPECT_EQ(fredholm::io::to_json(fredholm::io::certificate_from_json(c)), c);
  }
}

TEST_F(Cli, OutputIsDeterministic) {
  const std::string a = run("construct --problem " + sample("fredholm_pair.json")).out;
  const std::string b = run("construct --problem " + sample("fredholm_pair.json")).out;
  EXPECT_EQ(a, b);
  const std::string grid = " --corollary e --grid -1:1:-1:1:1/4";
  const std::string s1 = run("spectra --problem " + sample("row_two.json") + grid).out;
  const std::string s2 = run("spectra --problem " + sample("row_two.json") + grid).out;
  EXPECT_EQ(s1, s2);
  EXPECT_FALSE(s1.empty());
}

TEST_F(Cli, SpectraCsv) {
  CliRun r = run("spectra --problem " + sample("shift_pair.json") + " --corollary e2 --grid 0:0:0:0:1");
  EXPECT_EQ(r.status, 0);
  std::istringstream lines(r.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].rfind("# fredholm ", 0), 0u);
  EXPECT_EQ(rows[1],
            "re,im,alpha_1,beta_1,closed_1,alpha_2,beta_2,closed_2,sf_plus_d1,sf_minus_dn,delta,in_lhs,in_rhs,cond_i,"
            "cond_iii,verdict");
  EXPECT_EQ(rows[2], "0,0,0,inf,1,inf,0,1,0,0,0,0,0,1,1,Exists");

  r = run("spectra --problem " + sample("shift_over_harmonic.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2 + 13 * 13);
}

TEST_F(Cli, ClassifyAndThreads) {
  const std::string cmd = "classify --problem " + sample("row_two.json") + " --lambda 0";
  const CliRun r = run(cmd);
  EXPECT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j.at("diagonals").size(), 3u);
  EXPECT_EQ(j.at("diagonals")[1].at("data").at("beta_star"), "inf");
  EXPECT_EQ(j.at("diagonals")[2].at("index"), "+inf");
  ::setenv("FREDHOLM_THREADS", "1", 1);
  const std::string single = run("spectra --problem " + sample("shift_over_harmonic.json")).out;
  ::unsetenv("FREDHOLM_THREADS");
  EXPECT_EQ(single, run("spectra --problem " + sample("shift_over_harmonic.json")).out);
}
