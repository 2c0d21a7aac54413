#include "arcflux/heat_series.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace arcflux::series {

using specfun::BasisKind;
using specfun::BasisParams;
using specfun::DomainError;
using specfun::detail::KummerTerm;
using specfun::detail::make_term;

TermBasis::TermBasis(double diffusivity, double nu)
    : diffusivity_(diffusivity), nu_(nu), mu_(0.5 * (nu + 1.0)) {
  if (!(diffusivity > 0.0))
    throw DomainError("diffusivity must be positive");
  if (!(nu > -1.0))
    throw DomainError("nu must exceed -1 (confluent parameter pole)");
}

KummerTerm TermBasis::first_term(int n) const {
  return make_term(BasisKind::FirstKind,
                   BasisParams{2.0 * n, nu_, diffusivity_});
}

KummerTerm TermBasis::second_term(int n) const {
  return make_term(BasisKind::SecondKind,
                   BasisParams{2.0 * n, nu_, diffusivity_});
}

namespace {
void check_index(int n) {
  if (n < 0) throw DomainError("series term index must be nonnegative");
}
}  // namespace

double TermBasis::first_value(int n, const EvalPoint& pt) const {
  check_index(n);
  const double scale = specfun::pochhammer(mu_, n) / std::tgamma(n + 1.0);
  return scale * first_term(n).value(pt);
}

double TermBasis::first_ddx(int n, const EvalPoint& pt) const {
  check_index(n);
  const double scale = specfun::pochhammer(mu_, n) / std::tgamma(n + 1.0);
  return scale * first_term(n).ddx(pt);
}

double TermBasis::first_ddxx(int n, const EvalPoint& pt) const {
  check_index(n);
  const double scale = specfun::pochhammer(mu_, n) / std::tgamma(n + 1.0);
  return scale * first_term(n).ddxx(pt);
}

double TermBasis::first_ddt(int n, const EvalPoint& pt) const {
  check_index(n);
  const double scale = specfun::pochhammer(mu_, n) / std::tgamma(n + 1.0);
  return scale * first_term(n).ddt(pt);
}

double TermBasis::second_value(int n, const EvalPoint& pt) const {
  check_index(n);
  return second_term(n).value(pt);
}

double TermBasis::second_ddx(int n, const EvalPoint& pt) const {
  check_index(n);
  return second_term(n).ddx(pt);
}

double TermBasis::second_ddxx(int n, const EvalPoint& pt) const {
  check_index(n);
  return second_term(n).ddxx(pt);
}

double TermBasis::second_ddt(int n, const EvalPoint& pt) const {
  check_index(n);
  return second_term(n).ddt(pt);
}

double TermBasis::first_trace_origin(int n, double t) const {
  check_index(n);
  if (!(t > 0.0)) throw DomainError("trace requires t > 0");
  const double scale = specfun::pochhammer(mu_, n) / std::tgamma(n + 1.0);
  return scale * std::pow(4.0 * diffusivity_ * diffusivity_ * t, n);
}

double TermBasis::second_trace_origin(int n, double t) const {
  check_index(n);
  if (!(t > 0.0)) throw DomainError("trace requires t > 0");
  if (mu_ < 1.0) return 0.0;
  if (mu_ == 1.0)
    return std::pow(4.0 * diffusivity_ * diffusivity_ * t, n);
  throw DomainError("second-kind basis is singular at x = 0 for this nu");
}

HeatSeries::HeatSeries(double diffusivity, double nu,
                       std::vector<double> first_family,
                       std::vector<double> second_family)
    : basis_(diffusivity, nu),
      coeffs_a_(std::move(first_family)),
      coeffs_b_(std::move(second_family)) {
  if (coeffs_a_.empty())
    throw DomainError("series needs at least one coefficient");
  if (coeffs_b_.empty())
    coeffs_b_.assign(coeffs_a_.size(), 0.0);
  if (coeffs_b_.size() != coeffs_a_.size())
    throw DomainError("family coefficient lists must have equal length");
}

HeatSeries HeatSeries::first_family_only(double diffusivity, double nu,
                                         std::vector<double> coeffs) {
  return HeatSeries(diffusivity, nu, std::move(coeffs), {});
}

double HeatSeries::value(const EvalPoint& pt) const {
  double acc = 0.0;
  for (int n = 0; n <= truncation(); ++n) {
    if (coeffs_a_[n] != 0.0) acc += coeffs_a_[n] * basis_.first_value(n, pt);
    if (coeffs_b_[n] != 0.0) acc += coeffs_b_[n] * basis_.second_value(n, pt);
  }
  return acc;
}

double HeatSeries::ddx(const EvalPoint& pt) const {
  double acc = 0.0;
  for (int n = 0; n <= truncation(); ++n) {
    if (coeffs_a_[n] != 0.0) acc += coeffs_a_[n] * basis_.first_ddx(n, pt);
    if (coeffs_b_[n] != 0.0) acc += coeffs_b_[n] * basis_.second_ddx(n, pt);
  }
  return acc;
}

double HeatSeries::ddxx(const EvalPoint& pt) const {
  double acc = 0.0;
  for (int n = 0; n <= truncation(); ++n) {
    if (coeffs_a_[n] != 0.0) acc += coeffs_a_[n] * basis_.first_ddxx(n, pt);
    if (coeffs_b_[n] != 0.0) acc += coeffs_b_[n] * basis_.second_ddxx(n, pt);
  }
  return acc;
}

double HeatSeries::ddt(const EvalPoint& pt) const {
  double acc = 0.0;
  for (int n = 0; n <= truncation(); ++n) {
    if (coeffs_a_[n] != 0.0) acc += coeffs_a_[n] * basis_.first_ddt(n, pt);
    if (coeffs_b_[n] != 0.0) acc += coeffs_b_[n] * basis_.second_ddt(n, pt);
  }
  return acc;
}

double HeatSeries::value_origin(double t) const {
  double acc = 0.0;
  for (int n = 0; n <= truncation(); ++n) {
    if (coeffs_a_[n] != 0.0)
      acc += coeffs_a_[n] * basis_.first_trace_origin(n, t);
    if (coeffs_b_[n] != 0.0)
      acc += coeffs_b_[n] * basis_.second_trace_origin(n, t);
  }
  return acc;
}

ResidualReport pde_residual(const HeatSeries& s,
                            const std::vector<EvalPoint>& grid) {
  ResidualReport report;
  report.eval_grid = grid;
  report.per_point.reserve(grid.size());
  const double a2 = s.diffusivity() * s.diffusivity();
  for (const auto& pt : grid) {
    if (!(pt.x > 0.0) || !(pt.t > 0.0))
      throw DomainError("pde residual requires x > 0 and t > 0");
    const double theta = s.value(pt);
    const double lhs = s.ddt(pt);
    const double rhs = a2 * (s.ddxx(pt) + s.nu() / pt.x * s.ddx(pt));
    const double r = std::abs(lhs - rhs) / std::max(1.0, std::abs(theta));
    report.per_point.push_back(r);
    report.pde_max_residual = std::max(report.pde_max_residual, r);
  }
  return report;
}

}  // namespace arcflux::series
