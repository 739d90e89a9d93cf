#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace jcq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Human-readable summary printed to stdout after every command.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> outputs;
  std::vector<std::string> artifacts;
  bool passed = true;

  void input(std::string key, std::string value) { inputs.emplace_back(std::move(key), std::move(value)); }
  void output(std::string key, std::string value) { outputs.emplace_back(std::move(key), std::move(value)); }
  void print(std::ostream& out) const;
};

/// Start/stop/step grid, inclusive of both ends within 1e-9 steps.
std::vector<double> parse_grid(const std::string& spec);
/// "1-2,2-3" -> {(1,2),(2,3)}
std::vector<std::pair<int, int>> parse_order(const std::string& spec);

/// Runs one CLI invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jcq::cli
