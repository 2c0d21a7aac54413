#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "arcflux/heat_series.hpp"
#include "arcflux/linear_system.hpp"

namespace arcflux::problems {

class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Overdetermined collocation rows retained next to their least-squares
/// closure.
struct CollocationBlock {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<linsys::RowInfo> rows;
};

struct AssembledSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<std::string> unknown_labels;
  std::vector<linsys::RowInfo> rows;
  std::vector<std::string> notes;
  double condition_estimate = 0.0;
  std::optional<CollocationBlock> collocation;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

linsys::LinearSystem to_linear_system(const AssembledSystem& sys);

/// Single-phase inverse Stefan problem on 0 < x < alpha(t) with
/// alpha(t) = boundary_coeff * sqrt(t). The axis flux P(t) is the unknown
/// when flux_taylor is absent; otherwise it is data and only the series
/// coefficients are solved for.
struct OnePhaseISP {
  double nu = 0.0;
  double diffusivity = 1.0;
  double melt_temp = 0.0;
  double robin_beta = 1.0;
  double robin_gamma = 0.0;
  double conductivity = 1.0;
  double latent_heat = 0.0;
  double density = 1.0;
  double boundary_coeff = 1.0;
  int truncation = 0;
  bool use_second_family = true;
  std::optional<std::vector<double>> flux_taylor;  // data when present

  /// Taylor data overrides (coefficients of t^n); empty selects the
  /// physical defaults: constant melt temperature on the front and the
  /// sqrt(t)-scaled latent-heat balance.
  std::vector<double> front_temp_data;
  std::vector<double> front_balance_data;
};

struct OnePhaseMode {
  bool flux_unknown = true;
  bool second_family = true;  // after degeneracy handling
  bool balance_in_system = true;
  std::vector<std::string> notes;
};

OnePhaseMode one_phase_mode(const OnePhaseISP& p);
AssembledSystem assemble_one_phase(const OnePhaseISP& p);

struct OnePhaseSolution {
  series::HeatSeries theta;
  std::vector<double> flux_taylor;  // solved or given
};
OnePhaseSolution split_solution(const OnePhaseISP& p, const Eigen::VectorXd& x);

/// Diagonal model problem: axially symmetric phase with prescribed front
/// temperature f(t) = sum f_n t^n, f(0) = 0; the flux is reconstructed
/// afterwards rather than solved for.
struct ModelProblemD0 {
  double nu = 1.0;
  double diffusivity = 1.0;
  double boundary_coeff = 1.0;
  double conductivity = 1.0;
  double latent_heat = 0.0;
  double density = 1.0;
  int truncation = -1;  // negative: infer from f_taylor
  std::vector<double> f_taylor;
};

AssembledSystem assemble_model_problem(const ModelProblemD0& p);
series::HeatSeries split_solution(const ModelProblemD0& p,
                                  const Eigen::VectorXd& x);

/// Axis flux reconstructed from a solved model-problem series:
/// P(t) = conductivity * d(theta)/dx on the front minus the latent-heat
/// pull of the moving boundary.
std::vector<double> reconstruct_flux(const ModelProblemD0& p,
                                     const series::HeatSeries& theta,
                                     const std::vector<double>& times);

/// Two-phase problem: solid 0 < x < alpha(t) (phase 1), liquid x > alpha(t)
/// (phase 2), unknown axis flux. Time conditions are collocated and closed
/// in least squares.
struct TwoPhaseISP {
  double nu = 0.0;
  double diffusivity1 = 1.0;
  double diffusivity2 = 1.0;
  double melt_temp = 0.0;
  double robin_beta = 1.0;
  double robin_gamma = 0.0;
  double conductivity1 = 1.0;
  double conductivity2 = 1.0;
  double latent_heat = 0.0;
  double density = 1.0;
  double boundary_coeff = 1.0;
  int truncation = 0;
  int collocation_count = 3;
  double horizon = 1.0;
  bool use_second_family = true;
  std::vector<double> initial_profile_taylor;  // [0] must equal melt_temp
  std::optional<double> far_field_cutoff;

  /// Data overrides as functions of t; null selects physical defaults.
  std::function<double(double)> front_temp1_data;
  std::function<double(double)> front_temp2_data;
  std::function<double(double)> front_balance_data;
  std::function<double(double)> far_field_data;
};

std::vector<double> collocation_times(int count, double horizon);
AssembledSystem assemble_two_phase(const TwoPhaseISP& p);

struct TwoPhaseSolution {
  series::HeatSeries theta1;
  series::HeatSeries theta2;
  std::vector<double> flux_taylor;
};
TwoPhaseSolution split_solution(const TwoPhaseISP& p, const Eigen::VectorXd& x);

struct BoundaryResidualEntry {
  std::string condition;
  double t = 0.0;
  double residual = 0.0;
};

struct BoundaryResidualReport {
  double max_residual = 0.0;
  std::vector<BoundaryResidualEntry> entries;
  std::vector<std::string> notes;
};

BoundaryResidualReport boundary_residuals(const OnePhaseISP& p,
                                          const OnePhaseSolution& sol,
                                          const std::vector<double>& probe_times);
BoundaryResidualReport boundary_residuals(const ModelProblemD0& p,
                                          const series::HeatSeries& theta,
                                          const std::vector<double>& probe_times);
BoundaryResidualReport boundary_residuals(const TwoPhaseISP& p,
                                          const TwoPhaseSolution& sol,
                                          const std::vector<double>& probe_times);

using ProblemSpec = std::variant<OnePhaseISP, ModelProblemD0, TwoPhaseISP>;

}  // namespace arcflux::problems
