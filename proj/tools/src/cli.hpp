#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace kht::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitIndeterminate = 2;
inline constexpr int kExitUsage = 64;

enum class Outcome { Pass, Fail, Indeterminate };

struct CheckResult {
  std::string name;
  Outcome outcome = Outcome::Pass;
  std::string detail;
  std::vector<std::string> violations;
};

struct RunReport {
  std::string command;
  nlohmann::ordered_json configuration = nlohmann::ordered_json::object();
  std::vector<CheckResult> checks;
  std::string output;  // serialized structure for compute
  double wall_ms = 0;

  Outcome overall() const;
  int exit_code() const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kht::cli
