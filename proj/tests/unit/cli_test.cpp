#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli_app.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mtsp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = mtsp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("mtsp_cli_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string instance_json(int points, const std::string& mass_capacity) {
  nlohmann::json doc;
  doc["points"] = points;
  doc["path_map"] = "canonical";
  std::vector<int> costs;
  for (int i = 0; i < points * (points - 1) / 2; ++i) costs.push_back(1 + (i * 7) % 11);
  doc["vehicles"] = {{{"id", 1}, {"mass_capacity", nlohmann::json::parse(mass_capacity)}, {"costs", costs}},
                     {{"id", 2}, {"mass_capacity", nlohmann::json::parse(mass_capacity)},
                      {"costs", {{"scale_of", 1}, {"factor", "1.5"}}}}};
  std::vector<int> mass(static_cast<std::size_t>(points), 2);
  mass[0] = 0;
  doc["demand_mass"] = mass;
  return doc.dump();
}

}  // namespace

TEST_CASE("fixtures list") {
  const Result r = run_cli({"fixtures", "list"});
  CHECK(r.code == mtsp::cli::kOk);
  for (const char* name : {"unconstrained", "mass", "mass_volume"}) CHECK(r.out.find(name) != std::string::npos);
  CHECK(r.out.find("published total 63.95") != std::string::npos);
}

TEST_CASE("solve on the bundled and on-disk fixture") {
  const Result bundled = run_cli({"solve", "--scenario", "mass", "--format", "json"});
  REQUIRE(bundled.code == mtsp::cli::kOk);
  const auto doc = nlohmann::json::parse(bundled.out);
  CHECK(doc["scenario"] == "mass");
  CHECK(doc["objective"]["total"]["decimal"] == "75.4");

  const Result on_disk = run_cli({"solve", "--instance", MTSP_FIXTURE_PATH, "--scenario", "mass", "--format", "json"});
  CHECK(on_disk.code == mtsp::cli::kOk);
  CHECK(on_disk.out == bundled.out);

  const Result printed = run_cli({"solve", "--scenario", "mass", "--m-source", "paper_override"});
  CHECK(printed.code == mtsp::cli::kOk);
  CHECK(printed.out.find("vehicle 3: 1-3-9-8-4-1") != std::string::npos);
}

TEST_CASE("solve with oracles and the oracle subcommand") {
  const Result r = run_cli({"solve", "--scenario", "mass_volume", "--oracle", "--format", "json"});
  REQUIRE(r.code == mtsp::cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["oracle"]["monolithic"]["total"]["decimal"] == "60.5");
  CHECK(doc["oracle"]["assignment"]["agrees"] == true);

  const Result o = run_cli({"oracle", "--scenario", "mass", "--format", "json"});
  REQUIRE(o.code == mtsp::cli::kOk);
  CHECK(nlohmann::json::parse(o.out)["objective"]["total"]["decimal"] == "61.8");
}

TEST_CASE("exit codes") {
  TempDir dir;
  const std::string ok = dir.write("ok.json", instance_json(5, "null"));
  CHECK(run_cli({"solve", "--instance", ok}).code == mtsp::cli::kOk);

  const Result infeasible = run_cli({"solve", "--instance", dir.write("tight.json", instance_json(5, "3"))});
  CHECK(infeasible.code == mtsp::cli::kInfeasible);
  CHECK(infeasible.err.find("infeasible") != std::string::npos);

  const Result limit = run_cli({"oracle", "--instance", dir.write("big.json", instance_json(13, "null"))});
  CHECK(limit.code == mtsp::cli::kOracleLimit);

  CHECK(run_cli({"solve", "--instance", dir.write("bad.json", "{\"points\": 3")}).code == mtsp::cli::kSchemaError);
  CHECK(run_cli({"solve", "--instance", (fs::path(MTSP_FIXTURE_PATH).parent_path() / "missing.json").string()}).code ==
        mtsp::cli::kSchemaError);
  CHECK(run_cli({"solve", "--scenario", "nonexistent"}).code == mtsp::cli::kSchemaError);
  CHECK(run_cli({"solve", "--format", "yaml"}).code == mtsp::cli::kSchemaError);
  CHECK(run_cli({"solve", "--instance", ok, "--m-source", "paper_override"}).code == mtsp::cli::kSchemaError);
  CHECK(run_cli({}).code == mtsp::cli::kSchemaError);
  CHECK(run_cli({"--help"}).code == mtsp::cli::kOk);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const char* scenario : {"unconstrained", "mass", "mass_volume"}) {
    const Result a = run_cli({"solve", "--scenario", scenario, "--format", "json", "--dump-partition"});
    const Result b = run_cli({"solve", "--scenario", scenario, "--format", "json", "--dump-partition"});
    CHECK(a.code == mtsp::cli::kOk);
    CHECK(a.out == b.out);
  }
}
