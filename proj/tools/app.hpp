#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace loqc::cli {

struct RunConfig {
  std::string command;
  int na = 3;
  int nr = 2;
  int nt = 1;
  int w = 4;
  double ptot = 0.95;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string out;            // empty: stdout
  std::string format = "csv"; // csv | json
};

/// Exit codes: 0 success, 1 verification failure, 2 configuration error.
enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2 };

/// Merges a JSON config file into cfg (file values only fill fields the
/// command line did not set; `explicit_keys` lists the flags the user set).
/// Throws std::runtime_error naming the offending key on unknown keys or
/// type mismatches.
void merge_config_file(RunConfig& cfg, const std::string& path,
                       const std::vector<std::string>& explicit_keys);

/// Serialised resolved config, embedded into every artifact.
std::string config_json(const RunConfig& cfg);

int run_figscale(const RunConfig& cfg, std::ostream& os);
int run_resources(const RunConfig& cfg, std::ostream& os);
int run_factory(const RunConfig& cfg, std::ostream& os);
int run_mc(const RunConfig& cfg, std::ostream& os);
int run_verify(const RunConfig& cfg, std::ostream& os);
int run_klm_compare(const RunConfig& cfg, std::ostream& os);

/// Full command-line entry point (parses argv, dispatches, writes the
/// artifact to cfg.out or stdout).
int run_command(int argc, const char* const* argv);

}  // namespace loqc::cli
