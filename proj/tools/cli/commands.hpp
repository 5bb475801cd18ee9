#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace chaoscode::cli {

using ojson = nlohmann::ordered_json;

struct Emission {
  std::string body;
  ojson params = ojson::object();
  ojson seeds = ojson::object();
  std::vector<std::filesystem::path> inputs;
};

struct Command {
  CLI::App* app = nullptr;
  std::shared_ptr<std::string> out_path;
  std::function<Emission()> run;
  // Flags whose values are input files; made absolute in the manifest so a
  // replay works from any directory.
  std::vector<std::string> input_flags;
};

std::vector<Command> register_commands(CLI::App& app);

}  // namespace chaoscode::cli
