#ifndef COXCALC_TOOLS_COMMANDS_HPP
#define COXCALC_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxcalc/dsl.hpp"
#include "coxcalc/error.hpp"

namespace coxcalc::cli {

struct CommandOptions {
  std::string command;
  std::string target;
  std::optional<DegreeWindow> window;
  std::string via;
  std::size_t cap = 8;
  std::size_t margin = 2;
  bool tangent = false;
  bool cotangent = false;
  bool theorem_grade = false;
  std::optional<std::vector<std::int64_t>> expect;
  unsigned threads = 1;
};

struct Report {
  std::string command;  // echo, e.g. "hilbert P --window -4..4"
  nlohmann::ordered_json result;
  std::vector<std::string> lines;
};

// "a..b" or "a..b,c..d". Throws UsageError.
DegreeWindow parse_window(const std::string& text);
// "k1,k2,..." Throws UsageError.
std::vector<std::int64_t> parse_int_list(const std::string& text);

// Throws coxcalc::Error (UsageError for bad flag combinations).
Report run_command(const Workspace& ws, const CommandOptions& opts);

std::string render_text(const Report& r);
std::string render_json(const Report& r);
std::string render_error_json(const std::string& command, const Error& e);

// Full driver; returns the process exit code (0 ok, 1 computation error,
// 2 usage or input error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coxcalc::cli

#endif  // COXCALC_TOOLS_COMMANDS_HPP
