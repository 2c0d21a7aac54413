#include "arcflux/hhl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <vector>

namespace arcflux::hhl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Spectral {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;
};

Spectral decompose(const Eigen::MatrixXcd& m) {
  if (!linsys::is_hermitian(m))
    throw SimulationError("evolution matrix must be hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw SimulationError("eigendecomposition failed");
  return {es.eigenvectors(), es.eigenvalues()};
}

void check_band(const Spectral& spec, double t) {
  const double max_phase = spec.values.cwiseAbs().maxCoeff() * t / kTwoPi;
  if (max_phase > 0.5 + 1e-12)
    throw SimulationError(
        "spectrum out of band: max |lambda| t / 2pi = " +
        std::to_string(max_phase) + " exceeds 1/2");
}

void check_resolved(const HHLConfig& cfg) {
  if (!(cfg.evolution_time > 0.0) || !(cfg.inversion_constant > 0.0))
    throw SimulationError("config must be resolved against a register layout");
}

// in-place single-qubit Hadamard on the given global bit
void apply_hadamard(StateVector& state, int bit) {
  const std::size_t mask = std::size_t{1} << bit;
  const std::size_t dim = state.layout.state_dim();
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const auto j = static_cast<Eigen::Index>(i);
    const auto k = static_cast<Eigen::Index>(i | mask);
    const std::complex<double> a = state.amplitudes(j);
    const std::complex<double> b = state.amplitudes(k);
    state.amplitudes(j) = inv_sqrt2 * (a + b);
    state.amplitudes(k) = inv_sqrt2 * (a - b);
  }
}

// applies U to the solution register on every basis state whose clock bit
// `clock_bit` is set
void apply_controlled_solution_unitary(StateVector& state,
                                       const Eigen::MatrixXcd& u,
                                       int clock_bit) {
  const int sol_dim = state.layout.solution_dim();
  const int clock_dim = state.layout.clock_dim();
  Eigen::VectorXcd v(sol_dim);
  for (int clock = 0; clock < clock_dim; ++clock) {
    if (!((clock >> clock_bit) & 1)) continue;
    for (int anc = 0; anc < 2; ++anc) {
      for (int s = 0; s < sol_dim; ++s) v(s) = state.at(clock, s, anc);
      v = u * v;
      for (int s = 0; s < sol_dim; ++s) state.at(clock, s, anc) = v(s);
    }
  }
}

// c'_y = (1/sqrt N) sum_x exp(sign * 2 pi i x y / N) c_x on the clock axis
void clock_fourier(StateVector& state, int sign) {
  const int n = state.layout.clock_dim();
  const int sol_dim = state.layout.solution_dim();
  std::vector<std::complex<double>> twiddle(n);
  for (int j = 0; j < n; ++j) {
    const double angle = sign * kTwoPi * j / n;
    twiddle[j] = {std::cos(angle), std::sin(angle)};
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::VectorXcd in(n), out(n);
  for (int s = 0; s < sol_dim; ++s) {
    for (int anc = 0; anc < 2; ++anc) {
      for (int y = 0; y < n; ++y) in(y) = state.at(y, s, anc);
      for (int y = 0; y < n; ++y) {
        std::complex<double> acc = 0.0;
        for (int x = 0; x < n; ++x)
          acc += twiddle[static_cast<int>((static_cast<long long>(x) * y) % n)] *
                 in(x);
        out(y) = scale * acc;
      }
      for (int y = 0; y < n; ++y) state.at(y, s, anc) = out(y);
    }
  }
}

Eigen::MatrixXcd evolution_power(const Spectral& spec, double t, int k) {
  const Eigen::Index m = spec.values.size();
  Eigen::VectorXcd phases(m);
  const double step = t * static_cast<double>(1LL << k);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double angle = spec.values(j) * step;
    phases(j) = {std::cos(angle), std::sin(angle)};
  }
  return spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
}
}  // namespace

void validate(const RegisterLayout& layout) {
  if (layout.n_b < 1) throw SimulationError("need at least one solution qubit");
  if (layout.n_l < 1) throw SimulationError("need at least one clock qubit");
  if (layout.total_qubits() > 24)
    throw SimulationError("register layout exceeds the 24-qubit budget");
}

double default_evolution_time(const RegisterLayout& layout, double band_edge) {
  const int n = layout.clock_dim();
  if (n < 4)
    throw SimulationError(
        "clock register too small for the default evolution time");
  if (!(band_edge > 0.0)) throw SimulationError("band edge must be positive");
  // the band edge lands on the largest positive clock value, N/2 - 1
  return kTwoPi * (n / 2 - 1) / (n * band_edge);
}

double default_inversion_constant(const RegisterLayout& layout,
                                  double evolution_time) {
  return kTwoPi / (layout.clock_dim() * evolution_time);
}

HHLConfig resolve(const HHLConfig& cfg, const RegisterLayout& layout) {
  validate(layout);
  HHLConfig out = cfg;
  if (out.evolution_time == 0.0)
    out.evolution_time = default_evolution_time(layout);
  if (!(out.evolution_time > 0.0))
    throw SimulationError("evolution time must be positive");
  const double grid_min = default_inversion_constant(layout, out.evolution_time);
  if (out.inversion_constant == 0.0) out.inversion_constant = grid_min;
  if (!(out.inversion_constant > 0.0))
    throw SimulationError("inversion constant must be positive");
  if (out.inversion_constant > grid_min * (1.0 + 1e-9))
    throw SimulationError(
        "inversion constant exceeds the smallest clock eigenvalue");
  if (out.mode == HHLConfig::Mode::Sampled && out.shots < 1)
    throw SimulationError("sampled mode needs at least one shot");
  return out;
}

int signed_clock(int value, int clock_dim) {
  return value >= clock_dim / 2 ? value - clock_dim : value;
}

StateVector prepare_state(const Eigen::VectorXcd& b,
                          const RegisterLayout& layout) {
  validate(layout);
  if (b.size() != layout.solution_dim())
    throw SimulationError("rhs length does not match the solution register");
  const double norm = b.norm();
  if (norm <= 0.0) throw SimulationError("cannot prepare a zero state");
  StateVector state;
  state.layout = layout;
  state.amplitudes =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.state_dim()));
  for (int s = 0; s < layout.solution_dim(); ++s)
    state.at(0, s, 0) = b(s) / norm;
  return state;
}

void StateVector::dump(std::ostream& os, double threshold) const {
  const auto prec = os.precision();
  os.precision(17);
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    if (std::abs(amplitudes(i)) <= threshold) continue;
    os << i << ' ' << amplitudes(i).real() << ' ' << amplitudes(i).imag()
       << '\n';
  }
  os.precision(prec);
}

void qpe(StateVector& state, const Eigen::MatrixXcd& m, const HHLConfig& cfg) {
  check_resolved(cfg);
  if (m.rows() != state.layout.solution_dim())
    throw SimulationError("matrix does not match the solution register");
  const Spectral spec = decompose(m);
  check_band(spec, cfg.evolution_time);
  for (int k = 0; k < state.layout.n_l; ++k)
    apply_hadamard(state, state.layout.n_b + 1 + k);
  for (int k = 0; k < state.layout.n_l; ++k)
    apply_controlled_solution_unitary(
        state, evolution_power(spec, cfg.evolution_time, k), k);
  clock_fourier(state, -1);
}

void qpe_adjoint(StateVector& state, const Eigen::MatrixXcd& m,
                 const HHLConfig& cfg) {
  check_resolved(cfg);
  if (m.rows() != state.layout.solution_dim())
    throw SimulationError("matrix does not match the solution register");
  const Spectral spec = decompose(m);
  check_band(spec, cfg.evolution_time);
  clock_fourier(state, +1);
  for (int k = state.layout.n_l - 1; k >= 0; --k)
    apply_controlled_solution_unitary(
        state, evolution_power(spec, -cfg.evolution_time, k), k);
  for (int k = 0; k < state.layout.n_l; ++k)
    apply_hadamard(state, state.layout.n_b + 1 + k);
}

double eigenvalue_inversion(StateVector& state, const HHLConfig& cfg) {
  check_resolved(cfg);
  const int clock_dim = state.layout.clock_dim();
  const int sol_dim = state.layout.solution_dim();
  const double t = cfg.evolution_time;

  double leakage = 0.0;
  for (int s = 0; s < sol_dim; ++s)
    for (int anc = 0; anc < 2; ++anc)
      leakage += std::norm(state.at(0, s, anc));

  for (int clock = 1; clock < clock_dim; ++clock) {
    const double lambda = kTwoPi * signed_clock(clock, clock_dim) / (clock_dim * t);
    double ratio = cfg.inversion_constant / lambda;
    if (std::abs(ratio) > 1.0 + 1e-12)
      throw SimulationError(
          "rotation constant exceeds a populated clock eigenvalue");
    ratio = std::clamp(ratio, -1.0, 1.0);
    const double keep = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    for (int s = 0; s < sol_dim; ++s) {
      const std::complex<double> a0 = state.at(clock, s, 0);
      const std::complex<double> a1 = state.at(clock, s, 1);
      state.at(clock, s, 0) = keep * a0 - ratio * a1;
      state.at(clock, s, 1) = ratio * a0 + keep * a1;
    }
  }
  return leakage;
}

PostselectOutcome uncompute_and_postselect(StateVector& state,
                                           const Eigen::MatrixXcd& m,
                                           const HHLConfig& cfg) {
  qpe_adjoint(state, m, cfg);

  const int clock_dim = state.layout.clock_dim();
  const int sol_dim = state.layout.solution_dim();
  double p1 = 0.0;
  double p1_clock0 = 0.0;
  for (int clock = 0; clock < clock_dim; ++clock) {
    for (int s = 0; s < sol_dim; ++s) {
      const double w = std::norm(state.at(clock, s, 1));
      p1 += w;
      if (clock == 0) p1_clock0 += w;
    }
  }
  if (p1 <= 1e-300)
    throw SimulationError("zero success probability: nothing to post-select");

  PostselectOutcome out;
  out.raw_success_probability = p1;
  out.clock_residual = 1.0 - p1_clock0 / p1;

  Eigen::VectorXcd sol(sol_dim);
  for (int s = 0; s < sol_dim; ++s) sol(s) = state.at(0, s, 1);
  const double sol_norm = sol.norm();
  if (sol_norm <= 0.0)
    throw SimulationError("post-selected state carries no clock-0 component");
  out.solution = sol / sol_norm;

  if (cfg.mode == HHLConfig::Mode::Sampled) {
    std::mt19937 rng(cfg.seed);
    std::binomial_distribution<int> dist(cfg.shots, std::min(1.0, p1));
    const int hits = dist(rng);
    if (hits == 0)
      throw SimulationError("no successful shots observed in sampled mode");
    out.success_probability = static_cast<double>(hits) / cfg.shots;
  } else {
    out.success_probability = p1;
  }
  return out;
}

double fidelity(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  if (u.size() != v.size())
    throw SimulationError("fidelity needs vectors of equal length");
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu <= 0.0 || nv <= 0.0)
    throw SimulationError("fidelity of a zero vector is undefined");
  const double overlap = std::abs(u.dot(v)) / (nu * nv);
  return overlap * overlap;
}

double observable_expectation(const Eigen::VectorXcd& x,
                              const Eigen::MatrixXcd& m) {
  if (!linsys::is_hermitian(m))
    throw SimulationError("observable must be hermitian");
  if (x.size() != m.rows())
    throw SimulationError("observable dimension mismatch");
  const std::complex<double> val = x.dot(m * x);
  if (std::abs(val.imag()) > 1e-10 * std::max(1.0, std::abs(val)))
    throw std::logic_error("hermitian expectation came out complex");
  return val.real();
}

HHLResult hhl_solve(const linsys::LinearSystem& sys,
                    const RegisterLayout& layout, const HHLConfig& cfg) {
  validate(layout);
  if (!sys.hermitian)
    throw SimulationError("system must be hermitian; embed it first");
  if (sys.dim() != layout.solution_dim())
    throw SimulationError(
        "solution register does not match the system dimension");

  const HHLConfig rc = resolve(cfg, layout);
  const double b_norm = sys.rhs.norm();

  StateVector state = prepare_state(sys.rhs, layout);
  qpe(state, sys.matrix, rc);
  const double leakage = eigenvalue_inversion(state, rc);
  PostselectOutcome outcome = uncompute_and_postselect(state, sys.matrix, rc);

  HHLResult result;
  result.solution = outcome.solution;
  result.success_probability = outcome.success_probability;
  result.raw_success_probability = outcome.raw_success_probability;
  result.inversion_leakage = leakage;
  result.clock_residual = outcome.clock_residual;
  result.norm_estimate =
      b_norm * std::sqrt(outcome.raw_success_probability) / rc.inversion_constant;
  result.observable_value = observable_expectation(result.solution, sys.matrix);
  result.resolved_config = rc;

  const Eigen::VectorXcd classical = linsys::classical_solve(sys);
  result.fidelity_vs_classical = fidelity(result.solution, classical);
  return result;
}

}  // namespace arcflux::hhl
