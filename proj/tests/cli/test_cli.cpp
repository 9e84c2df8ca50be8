#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GENENT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (const auto n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& rel) { return std::string(GENENT_SAMPLES) + "/" + rel; }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("genent_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::map<std::string, std::string> read_dir(const fs::path& dir, const std::string& skip_prefix) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.rfind(skip_prefix, 0) == 0) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[name] = ss.str();
  }
  return files;
}

}  // namespace

TEST(cli_purity, bell_is_locally_maximally_mixed) {
  const auto r = run("purity --state " + sample("states/bell.json") + " --set local");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(Json::parse(r.out).at("P_loc").get<double>(), 0.0, 1e-12);
}

TEST(cli_purity, basis_state_has_unit_diagonal_purity) {
  const auto r = run("purity --state " + sample("states/basis_0110.json") + " --set diag");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(Json::parse(r.out).at("P_h").get<double>(), 1.0, 1e-12);
}

TEST(cli_purity, w3_local_purity) {
  const auto r = run("purity --state " + sample("states/w3.json") + " --set local --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(Json::parse(r.out).at("P_loc").get<double>(), 1.0 / 9, 1e-12);
}

TEST(cli_errors, exit_codes) {
  EXPECT_EQ(run("purity --state does_not_exist.json --set local").code, 2);
  EXPECT_EQ(run("purity --state " + sample("states/bell.json") + " --set nonsense").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("purity --state " + sample("states/bell.json") + " --set local --format xml").code, 2);
  // three identical x values cannot determine a, b and c
  const auto dir = scratch("fit");
  std::ofstream(dir / "same.csv") << "x,y\n1,1\n1,2\n1,3\n1,4\n";
  EXPECT_EQ(run("fit --input " + (dir / "same.csv").string() + " --x x --y y").code, 3);
}

TEST(cli_config, flags_override_config) {
  const auto cfg = sample("configs/random_local.json");
  const auto from_config = Json::parse(run("--config " + cfg + " random-expect").out);
  const auto flagged = run("--config " + cfg + " random-expect --samples 250");
  ASSERT_EQ(flagged.code, 0);
  const auto j = Json::parse(flagged.out);
  EXPECT_NE(from_config.at("samples"), j.at("samples"));
  EXPECT_EQ(j.at("samples").get<int>(), 250);
}

TEST(cli_chain, smoke_run_is_fast_and_deterministic) {
  const auto a = scratch("chain_a"), b = scratch("chain_b");
  const auto cfg = sample("configs/chain_smoke.json");
  const auto t0 = std::chrono::steady_clock::now();
  ASSERT_EQ(run("--config " + cfg + " --jobs 1 --out-dir " + a.string() + " chain").code, 0);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(seconds, 10.0);
  ASSERT_EQ(run("--config " + cfg + " --jobs 3 --out-dir " + b.string() + " chain").code, 0);
  // the manifest records wall time and job count; everything else must match
  const auto fa = read_dir(a, "manifest_"), fb = read_dir(b, "manifest_");
  ASSERT_FALSE(fa.empty());
  EXPECT_EQ(fa, fb);
  bool csv = false;
  for (const auto& [name, contents] : fa) csv = csv || name.ends_with(".csv");
  EXPECT_TRUE(csv);
}
