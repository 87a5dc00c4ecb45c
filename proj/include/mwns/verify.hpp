#pragma once

#include <string>
#include <vector>

#include "mwns/kernel_probe.hpp"
#include "mwns/run_config.hpp"

namespace mwns {

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool passed() const;
};

const std::vector<std::string>& suite_names();

// Runs one invariant suite. Unknown names and parameters outside a suite's
// hypotheses raise ConfigError; numerical failures are reported as failed
// checks.
SuiteReport run_suite(const std::string& name, const RunConfig& rc);

// Kernel probes for N = 2n + 2 on a torus enlarged so the distance sweep
// reaches the tail; wavelets use the transition of decay order N.
// ConfigError unless 0 < gamma <= 1/2.
ProbeSummary run_kernel_probes(const RunConfig& rc);

}  // namespace mwns
