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

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "isene/config.hpp"
#include "isene/errors.hpp"
#include "isene/tasks.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spin-qubit circuit workbench"};
  app.set_version_flag("--version", isene::kVersion);
  std::string task;
  std::string config_path;
  isene::RunOptions options;
  app.add_option("task", task, "Task to run; must match the config's task if it sets one")
      ->required()
      ->check(CLI::IsMember(isene::task_names()));
  app.add_option("-c,--config", config_path, "JSON config file")->required();
  app.add_option("-o,--out", options.out_dir, "Output directory (overrides output.dir)");
  app.add_option("-j,--threads", options.threads, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed", options.seed, "Reserved; every task is deterministic");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& message, const nlohmann::json& extra) {
    nlohmann::json err = {{"error", kind}, {"message", message}, {"task", task}};
    if (!extra.is_null()) err["issues"] = extra;
    std::cerr << err.dump() << '\n';
    return code;
  };

  isene::RunConfig config;
  try {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(isene::read_text_file(config_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw isene::ConfigError("", std::string("not valid JSON: ") + e.what());
    }
    if (doc.is_object() && !doc.contains("task")) doc["task"] = task;
    config = isene::parse_config(doc);
    if (isene::task_name(config.task) != task) {
      throw isene::ConfigError("/task", "config task '" + std::string(isene::task_name(config.task)) +
                                             "' differs from the command-line task '" + task + "'");
    }
  } catch (const isene::ConfigError& e) {
    nlohmann::json issues = nlohmann::json::array();
    for (const auto& i : e.issues()) issues.push_back({{"pointer", i.pointer}, {"message", i.message}});
    return fail(2, e.kind(), e.what(), issues);
  } catch (const isene::Error& e) {
    return fail(2, "SchemaViolation", e.what(), nullptr);
  }

  const isene::RunOutcome out = isene::run_task(config, options);
  if (out.exit_code != 0) return fail(out.exit_code, out.error_kind, out.error_message, nullptr);
  std::cout << nlohmann::json{{"task", task}, {"out_dir", out.out_dir}, {"files", out.files}, {"summary", out.summary}}.dump(2)
            << '\n';
  return 0;
}
