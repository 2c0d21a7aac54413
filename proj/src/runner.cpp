#include "arcflux/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "arcflux/hhl.hpp"
#include "arcflux/problem_file.hpp"

namespace arcflux::run {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

std::vector<double> default_probes(double horizon) {
  return {0.2 * horizon, 0.4 * horizon, 0.6 * horizon, 0.8 * horizon};
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

std::vector<double> real_parts(const Eigen::VectorXcd& v, double* max_imag) {
  std::vector<double> out(v.size());
  double imag = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[static_cast<std::size_t>(i)] = v(i).real();
    imag = std::max(imag, std::abs(v(i).imag()));
  }
  if (max_imag) *max_imag = imag;
  return out;
}

}  // namespace

double residual_tolerance(const std::optional<double>& override_value) {
  double tol = 1e-8;
  if (override_value) {
    tol = *override_value;
  } else if (const char* env = std::getenv("ARCFLUX_TOL")) {
    char* end = nullptr;
    tol = std::strtod(env, &end);
    if (end == env || *end != '\0')
      throw problems::ValidationError(
          "ARCFLUX_TOL must be a number, got '" + std::string(env) + "'");
  }
  if (!(tol > 0.0))
    throw problems::ValidationError("residual tolerance must be positive");
  return tol;
}

report::SolveReport execute(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.backend != "classical" && cfg.backend != "hhl" &&
      cfg.backend != "both")
    throw problems::ValidationError("backend must be classical, hhl, or both");

  problems::ProblemSpec spec = io::load_problem(cfg.problem_path);

  report::SolveReport rep;
  rep.backend = cfg.backend;
  rep.residual_tolerance = residual_tolerance(cfg.tolerance_override);

  double horizon = 1.0;
  std::visit(Overload{
                 [&](problems::OnePhaseISP& p) {
                   rep.problem_kind = "one_phase";
                   if (cfg.truncation_override)
                     p.truncation = *cfg.truncation_override;
                   if (cfg.collocation_override)
                     throw problems::ValidationError(
                         "collocation override applies to two-phase problems "
                         "only");
                   rep.truncation = p.truncation;
                 },
                 [&](problems::ModelProblemD0& p) {
                   rep.problem_kind = "model_problem";
                   if (cfg.truncation_override)
                     p.truncation = *cfg.truncation_override;
                   if (cfg.collocation_override)
                     throw problems::ValidationError(
                         "collocation override applies to two-phase problems "
                         "only");
                   rep.truncation =
                       p.truncation < 0
                           ? static_cast<int>(p.f_taylor.size()) - 1
                           : p.truncation;
                 },
                 [&](problems::TwoPhaseISP& p) {
                   rep.problem_kind = "two_phase";
                   if (cfg.truncation_override)
                     p.truncation = *cfg.truncation_override;
                   if (cfg.collocation_override)
                     p.collocation_count = *cfg.collocation_override;
                   rep.truncation = p.truncation;
                   horizon = p.horizon;
                 },
             },
             spec);

  std::vector<double> probes =
      cfg.probe_times.empty() ? default_probes(horizon) : cfg.probe_times;
  for (double t : probes)
    if (!(t > 0.0))
      throw problems::ValidationError("probe times must be positive");
  rep.probe_times = probes;

  const problems::AssembledSystem assembled = std::visit(
      Overload{[](const problems::OnePhaseISP& p) {
                 return problems::assemble_one_phase(p);
               },
               [](const problems::ModelProblemD0& p) {
                 return problems::assemble_model_problem(p);
               },
               [](const problems::TwoPhaseISP& p) {
                 return problems::assemble_two_phase(p);
               }},
      spec);

  rep.unknown_labels = assembled.unknown_labels;
  rep.notes = assembled.notes;

  const linsys::LinearSystem lin = problems::to_linear_system(assembled);
  linsys::SolveInfo info;
  const Eigen::VectorXcd x_classical = linsys::classical_solve(lin, &info);
  rep.condition_number = info.condition_number;
  rep.classical_values = real_parts(x_classical, nullptr);

  if (cfg.backend != "classical") {
    if (cfg.clock_qubits < 1)
      throw problems::ValidationError(
          "quantum backend needs a clock register size (--clock-qubits)");
    const linsys::PreparedSystem prepared = linsys::prepare_for_quantum(lin);
    hhl::RegisterLayout layout;
    layout.n_b = prepared.solution_qubits();
    layout.n_l = cfg.clock_qubits;
    const hhl::HHLResult result =
        hhl::hhl_solve(prepared.system, layout, hhl::HHLConfig{});

    double spill = 0.0;
    const Eigen::VectorXcd x_quantum = prepared.extract_values(
        result.solution * result.norm_estimate, &spill);
    double max_imag = 0.0;
    rep.hhl_values = real_parts(x_quantum, &max_imag);
    if (max_imag > 1e-8) {
      std::ostringstream os;
      os.precision(3);
      os << "quantum solution carried imaginary residue " << max_imag;
      rep.notes.push_back(os.str());
    }
    if (spill > 1e-6) {
      std::ostringstream os;
      os.precision(3);
      os << "norm fraction " << spill
         << " of the quantum solution fell outside the extracted block";
      rep.notes.push_back(os.str());
    }

    rep.hhl_ran = true;
    rep.solution_qubits = layout.n_b;
    rep.clock_qubits = layout.n_l;
    rep.evolution_time = result.resolved_config.evolution_time;
    rep.inversion_constant = result.resolved_config.inversion_constant;
    rep.fidelity = result.fidelity_vs_classical;
    rep.success_probability = result.success_probability;
    rep.inversion_leakage = result.inversion_leakage;
    rep.clock_residual = result.clock_residual;
  }

  // residuals follow the backend the run is about
  const std::vector<double>& chosen =
      cfg.backend == "hhl" ? rep.hhl_values : rep.classical_values;
  const Eigen::VectorXd solution = to_vector(chosen);

  problems::BoundaryResidualReport res;
  std::visit(
      Overload{[&](const problems::OnePhaseISP& p) {
                 const auto sol = problems::split_solution(p, solution);
                 res = problems::boundary_residuals(p, sol, probes);
               },
               [&](const problems::ModelProblemD0& p) {
                 const auto theta = problems::split_solution(p, solution);
                 res = problems::boundary_residuals(p, theta, probes);
                 rep.flux_at_probes =
                     problems::reconstruct_flux(p, theta, probes);
               },
               [&](const problems::TwoPhaseISP& p) {
                 const auto sol = problems::split_solution(p, solution);
                 res = problems::boundary_residuals(p, sol, probes);
                 for (double tc : problems::collocation_times(
                          p.collocation_count, p.horizon)) {
                   for (double tp : probes) {
                     if (std::abs(tc - tp) < 1e-9) {
                       std::ostringstream os;
                       os.precision(12);
                       os << "probe time " << tp
                          << " coincides with a collocation point";
                       rep.notes.push_back(os.str());
                     }
                   }
                 }
               }},
      spec);

  rep.residuals = res.entries;
  rep.residual_max = res.max_residual;
  rep.residual_ok = res.max_residual <= rep.residual_tolerance;
  for (const auto& n : res.notes) rep.notes.push_back(n);

  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

std::string render(const report::SolveReport& r, const std::string& format) {
  if (format == "json") return report::to_json(r);
  if (format == "csv") return report::to_csv(r);
  throw problems::ValidationError("unknown report format '" + format + "'");
}

}  // namespace arcflux::run
