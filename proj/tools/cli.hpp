#pragma once

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <thetadiv/config.hpp>
#include <thetadiv/siegel.hpp>

namespace thetadiv::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kConfigError = 2, kAmbiguity = 3 };

/// A complete, serializable description of one run.
struct JobConfig {
  std::string command;
  /// Command options by long name, as given on the command line.
  std::map<std::string, std::string> parameters;
  Config config;
};

std::string job_to_json(const JobConfig& job);
JobConfig job_from_json(std::string_view text);

/// Accepts "i", "2i", "-0.37+1.21i", "1.5", "(1+3i)/2".
Complex parse_complex(std::string_view text);
std::vector<Complex> parse_complex_list(std::string_view text);

/// Executes a job, writing the primary JSON document to `out` and
/// diagnostics to `err`; artifact files are written atomically.
int run(const JobConfig& job, std::ostream& out, std::ostream& err);

/// argv front end: parses into a JobConfig (or loads one with --job) and runs it.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thetadiv::cli
