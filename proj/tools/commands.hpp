#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace kgf::cli {

enum ExitCode { kOk = 0, kValidation = 1, kAccuracy = 2, kVerification = 3 };

struct CommandOptions {
  std::string out;  // overrides output.csv
  int threads = 1;
  std::optional<double> tolerance;
};

int cmd_solve(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_operators(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_convergence(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);

// probe selection shared by verify and convergence
std::vector<Probe> select_probes(const RunConfig& cfg, int count, double min_t);

}  // namespace kgf::cli
