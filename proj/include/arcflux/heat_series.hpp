#pragma once

#include <vector>

#include "arcflux/special_functions.hpp"

namespace arcflux::series {

using specfun::EvalPoint;

/// Per-term basis of the truncated solution series for one phase: term n of
/// the first family is (4 a^2 t)^n L_n^{mu-1}(-x^2/4a^2t), term n of the
/// second family carries the (x^2/4a^2t)^{1-mu} prefactor. mu = (nu+1)/2.
class TermBasis {
public:
  TermBasis(double diffusivity, double nu);

  double diffusivity() const { return diffusivity_; }
  double nu() const { return nu_; }
  double mu() const { return mu_; }

  double first_value(int n, const EvalPoint& pt) const;
  double first_ddx(int n, const EvalPoint& pt) const;
  double first_ddxx(int n, const EvalPoint& pt) const;
  double first_ddt(int n, const EvalPoint& pt) const;

  double second_value(int n, const EvalPoint& pt) const;
  double second_ddx(int n, const EvalPoint& pt) const;
  double second_ddxx(int n, const EvalPoint& pt) const;
  double second_ddt(int n, const EvalPoint& pt) const;

  /// Trace of term n at x = 0: (4 a^2 t)^n (mu)_n / n! for the first family.
  double first_trace_origin(int n, double t) const;
  /// Second-family trace at x = 0: 0 for mu < 1, (4 a^2 t)^n at mu = 1,
  /// DomainError for mu > 1 (the prefactor diverges).
  double second_trace_origin(int n, double t) const;

private:
  specfun::detail::KummerTerm first_term(int n) const;
  specfun::detail::KummerTerm second_term(int n) const;

  double diffusivity_;
  double nu_;
  double mu_;
};

/// Truncated two-family solution series with fixed coefficients.
class HeatSeries {
public:
  HeatSeries(double diffusivity, double nu, std::vector<double> first_family,
             std::vector<double> second_family);

  /// Series with only the bounded family populated.
  static HeatSeries first_family_only(double diffusivity, double nu,
                                      std::vector<double> coeffs);

  const TermBasis& basis() const { return basis_; }
  double diffusivity() const { return basis_.diffusivity(); }
  double nu() const { return basis_.nu(); }
  double mu() const { return basis_.mu(); }
  int truncation() const { return static_cast<int>(coeffs_a_.size()) - 1; }
  const std::vector<double>& first_family() const { return coeffs_a_; }
  const std::vector<double>& second_family() const { return coeffs_b_; }

  double value(const EvalPoint& pt) const;
  double ddx(const EvalPoint& pt) const;
  double ddxx(const EvalPoint& pt) const;
  double ddt(const EvalPoint& pt) const;

  /// Trace at x = 0 (uses the analytic limits of both families).
  double value_origin(double t) const;

private:
  TermBasis basis_;
  std::vector<double> coeffs_a_;
  std::vector<double> coeffs_b_;
};

struct ResidualReport {
  double pde_max_residual = 0.0;
  std::vector<EvalPoint> eval_grid;
  std::vector<double> per_point;
};

/// Pointwise residual of d(theta)/dt - a^2 (d2/dx2 + nu/x d/dx) theta,
/// normalized by max(1, |theta|). All derivatives are analytic.
ResidualReport pde_residual(const HeatSeries& s, const std::vector<EvalPoint>& grid);

}  // namespace arcflux::series
