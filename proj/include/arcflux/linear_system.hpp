#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcflux::linsys {

/// Where a matrix row came from: the condition it discretizes and the
/// power of t (or collocation time) it was matched at.
struct RowInfo {
  std::string condition;
  std::string at;
};

struct Provenance {
  std::vector<std::string> unknown_labels;
  std::vector<RowInfo> rows;
  std::vector<std::string> notes;
};

class SingularMatrixError : public std::runtime_error {
public:
  SingularMatrixError(const std::string& what, int pivot_index)
      : std::runtime_error(what), pivot_index_(pivot_index) {}
  /// Index of the first pivot below threshold (column order of the
  /// factorization), -1 if not attributable.
  int pivot_index() const { return pivot_index_; }

private:
  int pivot_index_;
};

struct LinearSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  bool hermitian = false;
  Provenance provenance;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol = 1e-12);

/// Validates shapes and detects hermiticity.
LinearSystem make_system(Eigen::MatrixXcd matrix, Eigen::VectorXcd rhs,
                         Provenance provenance = {});

/// Real-valued convenience overload.
LinearSystem make_system(const Eigen::MatrixXd& matrix,
                         const Eigen::VectorXd& rhs,
                         Provenance provenance = {});

/// [[0, M], [M^H, 0]] with rhs [b; 0]; the solution of the original system
/// sits in the lower half of the embedded solution.
LinearSystem hermitian_embed(const LinearSystem& sys);

/// Extends the system with an identity block (zero coupling, zero rhs)
/// up to the next power of two.
LinearSystem pad_to_power_of_two(const LinearSystem& sys);

struct SpectralScaling {
  double scale = 1.0;            // multiplier applied to the matrix
  double spectral_radius = 0.0;  // max |lambda| before scaling
};

/// Rescales a hermitian system so its spectrum lies in [-1/2, 1/2].
LinearSystem scale_spectrum(const LinearSystem& sys, SpectralScaling* out = nullptr);

struct SolveInfo {
  double condition_number = 0.0;  // 2-norm, via SVD
  double residual_norm = 0.0;     // |Mx - b| / |b|
};

/// Full-pivot LU solve; throws SingularMatrixError when rank-deficient.
Eigen::VectorXcd classical_solve(const LinearSystem& sys, SolveInfo* info = nullptr);

double condition_number(const Eigen::MatrixXcd& m);

/// Tracks the embed/pad/scale pipeline so solution values in the original
/// coordinates can be recovered from a solution of the prepared system.
struct PreparedSystem {
  LinearSystem system;  // hermitian, power-of-two dim, spectrum in band
  int original_dim = 0;
  bool embedded = false;
  SpectralScaling scaling;

  /// Number of solution qubits needed by the prepared system.
  int solution_qubits() const;

  /// Maps a value-scale solution of `system` back to original coordinates.
  /// `spill` (optional) receives the norm fraction that fell outside the
  /// extracted block (embedding upper half plus padding).
  Eigen::VectorXcd extract_values(const Eigen::VectorXcd& prepared_solution,
                                  double* spill = nullptr) const;

  /// Same slice without the value rescaling; for direction-only comparisons.
  Eigen::VectorXcd extract_direction(const Eigen::VectorXcd& prepared_solution,
                                     double* spill = nullptr) const;
};

PreparedSystem prepare_for_quantum(const LinearSystem& sys);

/// Plain-text dump: header line with the dimension, then one line per row
/// of "re im" pairs.
void dump_matrix(const Eigen::MatrixXcd& m, std::ostream& os);
Eigen::MatrixXcd read_matrix(std::istream& is);

}  // namespace arcflux::linsys
