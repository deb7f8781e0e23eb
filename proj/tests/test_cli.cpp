// Copyright 2026 The Isene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

#ifndef ISENE_CLI
#error "ISENE_CLI must point at the isene executable"
#endif
#ifndef ISENE_CONFIG_DIR
#error "ISENE_CONFIG_DIR must point at the example configs"
#endif

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("isene_cli_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

int run(const std::string& args, const fs::path& err = scratch() / "stderr.txt") {
  const std::string cmd = std::string(ISENE_CLI) + " " + args + " > /dev/null 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path write(const std::string& name, const nlohmann::json& j) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p;
}

nlohmann::json example(const std::string& name) {
  return nlohmann::json::parse(slurp(fs::path(ISENE_CONFIG_DIR) / name));
}

}  // namespace

TEST(Cli, FastTasksAreByteDeterministic) {
  for (const std::string name : {"solve", "extract", "scan", "spectrum", "gates", "check"}) {
    const fs::path cfg = fs::path(ISENE_CONFIG_DIR) / (name + ".json");
    const std::string task = example(name + ".json")["task"];
    const fs::path a = scratch() / (name + "_a"), b = scratch() / (name + "_b");
    ASSERT_EQ(run(task + " -c " + cfg.string() + " -o " + a.string()), 0) << slurp(scratch() / "stderr.txt");
    ASSERT_EQ(run(task + " -c " + cfg.string() + " -o " + b.string() + " -j 3"), 0);
    const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
    ASSERT_FALSE(manifest["files"].empty());
    for (const auto& f : manifest["files"]) {
      const std::string file = f;
      EXPECT_EQ(slurp(a / file), slurp(b / file)) << name << "/" << file;
    }
    EXPECT_EQ(manifest["config_hash"], nlohmann::json::parse(slurp(b / "manifest.json"))["config_hash"]);
  }
}

TEST(Cli, SchemaViolationExitsTwoWithPointer) {
  auto doc = example("extract.json");
  doc["circuit"]["L_vertcal_nH"] = 3.0;
  doc["circuit"]["L_vertical_nH"] = -2.0;
  const fs::path cfg = write("bad.json", doc);
  const fs::path err = scratch() / "bad_err.txt";
  EXPECT_EQ(run("extract -c " + cfg.string(), err), 2);
  const auto e = nlohmann::json::parse(slurp(err));
  EXPECT_EQ(e["error"], "SchemaViolation");
  EXPECT_EQ(e["issues"].size(), 2u);
}

TEST(Cli, TaskMismatchAndUsageErrors) {
  const fs::path cfg = fs::path(ISENE_CONFIG_DIR) / "solve.json";
  EXPECT_EQ(run("extract -c " + cfg.string()), 2);
  EXPECT_EQ(run("launch -c " + cfg.string()), 2);
  EXPECT_EQ(run("solve"), 2);
  EXPECT_EQ(run("solve -c " + (scratch() / "missing.json").string()), 2);
}

TEST(Cli, NumericFailureExitsThreeWithErrorFile) {
  auto doc = example("extract.json");
  doc["circuit"]["flux_rad"] = {0.1, 0.0, 0.0};
  const fs::path out = scratch() / "not_kramers";
  const fs::path cfg = write("not_kramers.json", doc);
  EXPECT_EQ(run("extract -c " + cfg.string() + " -o " + out.string()), 3);
  const auto e = nlohmann::json::parse(slurp(out / "error.json"));
  EXPECT_EQ(e["error"], "NotKramersPoint");
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

TEST(Cli, MissingTaskIsTakenFromCommandLine) {
  auto doc = example("solve.json");
  doc.erase("task");
  const fs::path out = scratch() / "no_task";
  EXPECT_EQ(run("solve -c " + write("no_task.json", doc).string() + " -o " + out.string()), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(out / "manifest.json"))["task"], "solve");
}
