#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcflux/report.hpp"

namespace arcflux::run {

struct RunConfig {
  std::string problem_path;
  std::string backend = "classical";  // classical | hhl | both
  int clock_qubits = 0;               // required for the quantum backends
  std::optional<int> truncation_override;
  std::optional<int> collocation_override;
  std::vector<double> probe_times;  // empty: spread over the horizon
  std::optional<double> tolerance_override;
};

/// Residual acceptance threshold: explicit override, then ARCFLUX_TOL,
/// then 1e-8.
double residual_tolerance(const std::optional<double>& override_value);

report::SolveReport execute(const RunConfig& cfg);

/// Serialized report (format "json" or "csv").
std::string render(const report::SolveReport& r, const std::string& format);

}  // namespace arcflux::run
