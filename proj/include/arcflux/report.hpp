#pragma once

#include <string>
#include <vector>

#include "arcflux/problems.hpp"

namespace arcflux::report {

/// Everything a solve run exposes; serialized with a versioned schema.
/// elapsed_seconds is the only field excluded from determinism comparisons.
struct SolveReport {
  std::string problem_kind;
  std::string backend;
  int truncation = 0;
  std::vector<std::string> unknown_labels;
  std::vector<double> classical_values;
  std::vector<double> hhl_values;
  double condition_number = 0.0;
  double residual_tolerance = 0.0;
  double residual_max = 0.0;
  bool residual_ok = true;
  std::vector<problems::BoundaryResidualEntry> residuals;
  std::vector<double> probe_times;
  std::vector<double> flux_at_probes;  // model problem only
  std::vector<std::string> notes;

  bool hhl_ran = false;
  int solution_qubits = 0;
  int clock_qubits = 0;
  double evolution_time = 0.0;
  double inversion_constant = 0.0;
  double fidelity = 0.0;
  double success_probability = 0.0;
  double inversion_leakage = 0.0;
  double clock_residual = 0.0;

  double elapsed_seconds = 0.0;
};

inline constexpr int kSchemaVersion = 1;

std::string to_json(const SolveReport& r);
std::string to_csv(const SolveReport& r);

}  // namespace arcflux::report
