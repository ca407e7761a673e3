#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace surfcensus {

struct RunConfig {
  std::string command;
  std::optional<std::uint64_t> p;
  std::optional<std::uint32_t> d;
  std::optional<std::string> form_text;
  std::optional<std::string> form_file;
  std::optional<std::string> family;
  std::optional<std::int64_t> m;
  std::optional<std::uint32_t> k;
  int ext = 1;
  unsigned threads = 0;
  std::string format = "table";
  std::optional<std::string> out_path;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Report schema identifier carried by every structured document.
inline constexpr const char* kReportSchema = "surfcensus-report/1";

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace surfcensus
