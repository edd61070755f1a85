#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gasald/io/cli.hpp"

namespace gasald::testing {

struct CommandResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CommandResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = io::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory per call site.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("gasald_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

struct PipelineOutputs {
  std::vector<CommandResult> steps;
  std::string compare_report;
  bool ok = true;
};

// simulate -> fit -> forecast -> backtest -> compare on the pinned seed.
inline PipelineOutputs run_pinned_pipeline(const std::filesystem::path& dir) {
  PipelineOutputs o;
  const std::string data = (dir / "data.csv").string();
  const std::string fc = (dir / "gas_ald.csv").string();
  const std::vector<std::string> rolling = {"--train", "1000", "--refit", "50", "--seed", "11"};
  auto step = [&](std::vector<std::string> args, bool add_rolling) {
    if (add_rolling) args.insert(args.end(), rolling.begin(), rolling.end());
    o.steps.push_back(run(args));
    o.ok = o.ok && o.steps.back().code == 0;
    return o.steps.back();
  };
  step({"simulate", "--length", "1300", "--seed", "11", "-o", data}, false);
  step({"fit", data, "--seed", "11"}, false);
  step({"forecast", data, "--model", "gas-ald", "-o", fc}, true);
  step({"backtest", data, fc, "--name", "gas-ald", "--seed", "11"}, false);
  o.compare_report = step({"compare", data}, true).out;
  return o;
}

}  // namespace gasald::testing
