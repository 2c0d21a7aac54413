#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "arcflux/linear_system.hpp"

namespace arcflux::hhl {

class SimulationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// clock register (n_l qubits) | solution register (n_b qubits) | ancilla.
/// Basis index = (clock << (n_b + 1)) | (sol << 1) | ancilla.
struct RegisterLayout {
  int n_b = 1;
  int n_l = 4;

  int total_qubits() const { return n_b + n_l + 1; }
  int solution_dim() const { return 1 << n_b; }
  int clock_dim() const { return 1 << n_l; }
  std::size_t state_dim() const { return std::size_t{1} << total_qubits(); }
};

void validate(const RegisterLayout& layout);

struct StateVector {
  RegisterLayout layout;
  Eigen::VectorXcd amplitudes;

  std::size_t index(int clock, int sol, int anc) const {
    return (static_cast<std::size_t>(clock) << (layout.n_b + 1)) |
           (static_cast<std::size_t>(sol) << 1) | static_cast<std::size_t>(anc);
  }
  std::complex<double>& at(int clock, int sol, int anc) {
    return amplitudes(static_cast<Eigen::Index>(index(clock, sol, anc)));
  }
  std::complex<double> at(int clock, int sol, int anc) const {
    return amplitudes(static_cast<Eigen::Index>(index(clock, sol, anc)));
  }
  double norm() const { return amplitudes.norm(); }

  /// One line per basis state with |amplitude| > threshold:
  /// "<index> <re> <im>".
  void dump(std::ostream& os, double threshold = 1e-12) const;
};

struct HHLConfig {
  /// Hamiltonian evolution time; 0 selects the default that places the
  /// upper band edge on the top representable clock value.
  double evolution_time = 0.0;
  /// Rotation constant C; 0 selects the smallest nonzero |lambda| on the
  /// clock grid.
  double inversion_constant = 0.0;
  enum class Mode { ExactPostselect, Sampled };
  Mode mode = Mode::ExactPostselect;
  int shots = 1024;
  unsigned seed = 0x5eedbeefu;
};

double default_evolution_time(const RegisterLayout& layout,
                              double band_edge = 0.5);
double default_inversion_constant(const RegisterLayout& layout,
                                  double evolution_time);
/// Fills in zero-valued defaults and validates against the layout.
HHLConfig resolve(const HHLConfig& cfg, const RegisterLayout& layout);

/// Clock value -> two's-complement signed integer in [-N/2, N/2).
int signed_clock(int value, int clock_dim);

/// |b> on the solution register, clock and ancilla cleared.
StateVector prepare_state(const Eigen::VectorXcd& b, const RegisterLayout& layout);

/// Phase estimation of exp(i M t) against the clock register. The matrix
/// must be hermitian with spectrum inside the band for the resolved time.
void qpe(StateVector& state, const Eigen::MatrixXcd& m, const HHLConfig& cfg);
void qpe_adjoint(StateVector& state, const Eigen::MatrixXcd& m, const HHLConfig& cfg);

/// Ancilla rotation by C/lambda(clock). Returns the probability mass of the
/// clock-zero branch that the rotation necessarily skips.
double eigenvalue_inversion(StateVector& state, const HHLConfig& cfg);

struct PostselectOutcome {
  Eigen::VectorXcd solution;          // normalized, solution register only
  double success_probability = 0.0;   // ancilla-1 mass (exact or sampled)
  double raw_success_probability = 0.0;  // always the exact mass
  double clock_residual = 0.0;  // ancilla-1 mass left outside clock 0
};

/// Runs the inverse phase estimation, post-selects ancilla = 1 and reads the
/// solution register off the clock-0 block.
PostselectOutcome uncompute_and_postselect(StateVector& state,
                                           const Eigen::MatrixXcd& m,
                                           const HHLConfig& cfg);

/// |<u,v>|^2 for normalized copies of u and v.
double fidelity(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

/// <x|M|x> for a hermitian observable; the imaginary part is checked
/// against round-off and discarded.
double observable_expectation(const Eigen::VectorXcd& x, const Eigen::MatrixXcd& m);

struct HHLResult {
  Eigen::VectorXcd solution;  // normalized
  double success_probability = 0.0;
  double raw_success_probability = 0.0;
  double fidelity_vs_classical = 0.0;
  double inversion_leakage = 0.0;
  double clock_residual = 0.0;
  double observable_value = 0.0;
  /// |x| estimate recovered from the success probability: |b| sqrt(p) / C.
  double norm_estimate = 0.0;
  HHLConfig resolved_config;
};

/// Full pipeline on an already prepared (hermitian, power-of-two, in-band)
/// system.
HHLResult hhl_solve(const linsys::LinearSystem& sys, const RegisterLayout& layout,
                    const HHLConfig& cfg = {});

}  // namespace arcflux::hhl
