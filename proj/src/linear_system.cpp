#include "arcflux/linear_system.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <utility>

namespace arcflux::linsys {

namespace {
constexpr double kPivotRelTol = 1e-13;

int next_power_of_two(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}
}  // namespace

bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol) {
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= rel_tol * scale;
}

LinearSystem make_system(Eigen::MatrixXcd matrix, Eigen::VectorXcd rhs,
                         Provenance provenance) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("system matrix must be square");
  if (rhs.size() != matrix.rows())
    throw std::invalid_argument("rhs length must match matrix dimension");
  if (matrix.rows() == 0)
    throw std::invalid_argument("system must have positive dimension");
  LinearSystem sys;
  sys.matrix = std::move(matrix);
  sys.rhs = std::move(rhs);
  sys.hermitian = is_hermitian(sys.matrix);
  sys.provenance = std::move(provenance);
  return sys;
}

LinearSystem make_system(const Eigen::MatrixXd& matrix,
                         const Eigen::VectorXd& rhs, Provenance provenance) {
  Eigen::MatrixXcd mc = matrix.cast<std::complex<double>>();
  Eigen::VectorXcd vc = rhs.cast<std::complex<double>>();
  return make_system(std::move(mc), std::move(vc), std::move(provenance));
}

LinearSystem hermitian_embed(const LinearSystem& sys) {
  const int m = sys.dim();
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  big.topRightCorner(m, m) = sys.matrix;
  big.bottomLeftCorner(m, m) = sys.matrix.adjoint();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * m);
  rhs.head(m) = sys.rhs;

  Provenance prov = sys.provenance;
  std::vector<std::string> labels;
  labels.reserve(2 * m);
  for (int i = 0; i < m; ++i) {
    labels.push_back(prov.unknown_labels.empty()
                         ? "dual" + std::to_string(i)
                         : "dual:" + prov.unknown_labels[i]);
  }
  for (int i = 0; i < m; ++i) {
    labels.push_back(prov.unknown_labels.empty() ? "x" + std::to_string(i)
                                                 : prov.unknown_labels[i]);
  }
  prov.unknown_labels = std::move(labels);
  prov.notes.push_back(
      "hermitian embedding applied; original solution is the lower half");

  LinearSystem out = make_system(std::move(big), std::move(rhs), std::move(prov));
  return out;
}

LinearSystem pad_to_power_of_two(const LinearSystem& sys) {
  const int m = sys.dim();
  const int target = next_power_of_two(m);
  if (target == m) return sys;

  Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(target, target);
  big.topLeftCorner(m, m) = sys.matrix;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(target);
  rhs.head(m) = sys.rhs;

  Provenance prov = sys.provenance;
  if (!prov.unknown_labels.empty()) {
    for (int i = m; i < target; ++i)
      prov.unknown_labels.push_back("pad" + std::to_string(i - m));
  }
  prov.notes.push_back("padded from dimension " + std::to_string(m) + " to " +
                       std::to_string(target));
  return make_system(std::move(big), std::move(rhs), std::move(prov));
}

LinearSystem scale_spectrum(const LinearSystem& sys, SpectralScaling* out) {
  if (!sys.hermitian)
    throw std::invalid_argument("spectral scaling expects a hermitian system");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sys.matrix,
                                                     Eigen::EigenvaluesOnly);
  const double radius = es.eigenvalues().cwiseAbs().maxCoeff();

  SpectralScaling scaling;
  scaling.spectral_radius = radius;
  scaling.scale = radius > 0.0 ? 0.5 / radius : 1.0;
  if (out) *out = scaling;

  LinearSystem scaled = sys;
  scaled.matrix *= scaling.scale;
  scaled.provenance.notes.push_back("spectrum scaled into [-1/2, 1/2]");
  return scaled;
}

Eigen::VectorXcd classical_solve(const LinearSystem& sys, SolveInfo* info) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(sys.matrix);
  lu.setThreshold(kPivotRelTol);
  const int rank = static_cast<int>(lu.rank());
  if (rank < sys.dim()) {
    throw SingularMatrixError(
        "matrix is singular to working precision (pivot " +
            std::to_string(rank) + " below threshold)",
        rank);
  }
  Eigen::VectorXcd x = lu.solve(sys.rhs);
  if (info) {
    info->condition_number = condition_number(sys.matrix);
    const double bnorm = sys.rhs.norm();
    info->residual_norm =
        (sys.matrix * x - sys.rhs).norm() / (bnorm > 0.0 ? bnorm : 1.0);
  }
  return x;
}

double condition_number(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

int PreparedSystem::solution_qubits() const {
  int n = 0;
  while ((1 << n) < system.dim()) ++n;
  return n;
}

namespace {
Eigen::VectorXcd slice_original(const PreparedSystem& prep,
                                const Eigen::VectorXcd& sol, double* spill) {
  if (sol.size() != prep.system.dim())
    throw std::invalid_argument("solution length does not match prepared system");
  const int m = prep.original_dim;
  const int offset = prep.embedded ? m : 0;
  Eigen::VectorXcd x = sol.segment(offset, m);
  if (spill) {
    const double total = sol.squaredNorm();
    *spill = total > 0.0 ? 1.0 - x.squaredNorm() / total : 0.0;
  }
  return x;
}
}  // namespace

Eigen::VectorXcd PreparedSystem::extract_values(
    const Eigen::VectorXcd& prepared_solution, double* spill) const {
  // prepared matrix = scale * (padded embed), so the prepared solution is the
  // original one divided by scale
  return scaling.scale * slice_original(*this, prepared_solution, spill);
}

Eigen::VectorXcd PreparedSystem::extract_direction(
    const Eigen::VectorXcd& prepared_solution, double* spill) const {
  return slice_original(*this, prepared_solution, spill);
}

PreparedSystem prepare_for_quantum(const LinearSystem& sys) {
  PreparedSystem prep;
  prep.original_dim = sys.dim();
  LinearSystem work = sys;
  if (!work.hermitian) {
    work = hermitian_embed(work);
    prep.embedded = true;
  }
  if (work.dim() < 2) {
    // a single amplitude cannot host a solution register
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(2, 2);
    big(0, 0) = work.matrix(0, 0);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2);
    rhs(0) = work.rhs(0);
    Provenance prov = work.provenance;
    if (!prov.unknown_labels.empty()) prov.unknown_labels.push_back("pad0");
    prov.notes.push_back("padded from dimension 1 to 2");
    work = make_system(std::move(big), std::move(rhs), std::move(prov));
  } else {
    work = pad_to_power_of_two(work);
  }
  prep.system = scale_spectrum(work, &prep.scaling);
  return prep;
}

void dump_matrix(const Eigen::MatrixXcd& m, std::ostream& os) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os.precision(17);
  os << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j).real() << ' ' << m(i, j).imag();
    }
    os << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

Eigen::MatrixXcd read_matrix(std::istream& is) {
  int n = 0;
  if (!(is >> n) || n <= 0)
    throw std::runtime_error("matrix dump: bad dimension header");
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double re = 0.0, im = 0.0;
      if (!(is >> re >> im))
        throw std::runtime_error("matrix dump: truncated entry data");
      m(i, j) = {re, im};
    }
  }
  return m;
}

}  // namespace arcflux::linsys
