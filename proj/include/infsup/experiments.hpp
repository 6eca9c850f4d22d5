#pragma once

// Experiment drivers behind the command-line tool. Each returns a CSV table whose
// footer carries the pass/fail state of the assertions the experiment makes.

#include <optional>
#include <string>

#include "infsup/config.hpp"
#include "infsup/report.hpp"

namespace infsup::experiments {

struct Result {
  report::CsvTable table;
  std::optional<std::string> json;  ///< JSON report, where the experiment has one
};

Result run_spectral(const config::ExperimentConfig& cfg);
Result run_fourier(const config::ExperimentConfig& cfg);
Result run_fem(const config::ExperimentConfig& cfg);
Result run_saddle(const config::ExperimentConfig& cfg);
Result run_diagnose(const config::ExperimentConfig& cfg);
Result run_counterexample(const config::ExperimentConfig& cfg);

/// Dispatches on cfg.kind.
Result run(const config::ExperimentConfig& cfg);

}  // namespace infsup::experiments
