#include "arcflux/report.hpp"

#include <sstream>

#include "json.hpp"

namespace arcflux::report {

namespace {
using ordered_json = nlohmann::ordered_json;
}

std::string to_json(const SolveReport& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["problem"] = {{"kind", r.problem_kind}, {"truncation", r.truncation}};
  j["backend"] = r.backend;

  ordered_json solution;
  solution["labels"] = r.unknown_labels;
  solution["classical"] = r.classical_values;
  if (r.hhl_ran) solution["hhl"] = r.hhl_values;
  j["solution"] = solution;

  j["conditioning"] = {{"condition_number", r.condition_number}};

  ordered_json residuals;
  residuals["tolerance"] = r.residual_tolerance;
  residuals["max"] = r.residual_max;
  residuals["ok"] = r.residual_ok;
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.residuals) {
    entries.push_back(
        {{"condition", e.condition}, {"t", e.t}, {"value", e.residual}});
  }
  residuals["entries"] = entries;
  j["residuals"] = residuals;

  if (!r.probe_times.empty()) j["probe_times"] = r.probe_times;
  if (!r.flux_at_probes.empty()) j["flux_at_probes"] = r.flux_at_probes;

  if (r.hhl_ran) {
    j["quantum"] = {{"solution_qubits", r.solution_qubits},
                    {"clock_qubits", r.clock_qubits},
                    {"evolution_time", r.evolution_time},
                    {"inversion_constant", r.inversion_constant},
                    {"fidelity", r.fidelity},
                    {"success_probability", r.success_probability},
                    {"inversion_leakage", r.inversion_leakage},
                    {"clock_residual", r.clock_residual}};
  }

  j["notes"] = r.notes;
  j["timings"] = {{"elapsed_seconds", r.elapsed_seconds}};
  return j.dump(2) + "\n";
}

std::string to_csv(const SolveReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "section,key,value\n";
  os << "meta,schema_version," << kSchemaVersion << '\n';
  os << "meta,kind," << r.problem_kind << '\n';
  os << "meta,backend," << r.backend << '\n';
  os << "meta,truncation," << r.truncation << '\n';
  for (std::size_t i = 0; i < r.unknown_labels.size(); ++i) {
    os << "classical," << r.unknown_labels[i] << ',' << r.classical_values[i]
       << '\n';
  }
  if (r.hhl_ran) {
    for (std::size_t i = 0; i < r.unknown_labels.size(); ++i)
      os << "hhl," << r.unknown_labels[i] << ',' << r.hhl_values[i] << '\n';
  }
  os << "conditioning,condition_number," << r.condition_number << '\n';
  os << "residuals,tolerance," << r.residual_tolerance << '\n';
  os << "residuals,max," << r.residual_max << '\n';
  os << "residuals,ok," << (r.residual_ok ? "true" : "false") << '\n';
  for (const auto& e : r.residuals) {
    os << "residual," << e.condition << "@t=" << e.t << ',' << e.residual
       << '\n';
  }
  for (std::size_t i = 0; i < r.flux_at_probes.size(); ++i) {
    os << "flux,t=" << r.probe_times[i] << ',' << r.flux_at_probes[i] << '\n';
  }
  if (r.hhl_ran) {
    os << "quantum,solution_qubits," << r.solution_qubits << '\n';
    os << "quantum,clock_qubits," << r.clock_qubits << '\n';
    os << "quantum,evolution_time," << r.evolution_time << '\n';
    os << "quantum,inversion_constant," << r.inversion_constant << '\n';
    os << "quantum,fidelity," << r.fidelity << '\n';
    os << "quantum,success_probability," << r.success_probability << '\n';
    os << "quantum,inversion_leakage," << r.inversion_leakage << '\n';
    os << "quantum,clock_residual," << r.clock_residual << '\n';
  }
  for (const auto& note : r.notes) {
    std::string clean = note;
    for (char& c : clean)
      if (c == ',') c = ';';
    os << "note,," << clean << '\n';
  }
  os << "timing,elapsed_seconds," << r.elapsed_seconds << '\n';
  return os.str();
}

}  // namespace arcflux::report
