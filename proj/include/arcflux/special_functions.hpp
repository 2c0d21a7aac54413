#pragma once

#include <stdexcept>
#include <string>

namespace arcflux::specfun {

/// Thrown when an evaluation hits a pole or leaves the supported domain.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when the Kummer series fails to converge within the iteration cap.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// log|Gamma(z)| together with the sign of Gamma(z).
struct SignedLogGamma {
  double log_abs;
  int sign;  // +1 or -1
};

/// Signed log-gamma. Throws DomainError at the poles z = 0, -1, -2, ...
SignedLogGamma ln_gamma(double z);

/// Ratio Gamma(p)/Gamma(q) computed in log space, sign included.
double gamma_ratio(double p, double q);

/// Rising factorial (beta)_n = beta (beta+1) ... (beta+n-1), as a running
/// product so that zeros at negative-integer factors come out exact.
double pochhammer(double beta, int n);

/// Confluent hypergeometric function Phi(a,b,z) = sum_k (a)_k z^k / ((b)_k k!).
///
/// If a is a non-positive integer the series terminates and is evaluated
/// exactly term-by-term. Otherwise the series is summed until three
/// consecutive terms fall below 1e-16 of the partial sum; for z < 0 the
/// evaluation goes through exp(z) * Phi(b-a, b, -z) so every summed term is
/// positive and no cancellation occurs. Intended envelope |z| <= 50.
double kummer_phi(double a, double b, double z);

/// Generalized Laguerre polynomial L_n^alpha(x). Returns 0 for n < 0, which
/// is the value the termwise derivative formulas rely on.
double laguerre(int n, double alpha, double x);

/// Parameters of the two confluent-hypergeometric solution families of
///   d(theta)/dt = a^2 (d2(theta)/dx2 + (nu/x) d(theta)/dx).
struct BasisParams {
  double order;        // exponent of the (2 a sqrt(t)) prefactor
  double nu;           // geometry parameter of the equation
  double diffusivity;  // a > 0
};

struct EvalPoint {
  double x;  // >= 0
  double t;  // > 0
};

enum class BasisKind {
  FirstKind,   // bounded at x = 0
  SecondKind,  // carries the (x^2 / 4 a^2 t)^{(1-nu)/2} factor
};

/// Value of the selected basis solution at (x, t).
double basis_value(BasisKind kind, const BasisParams& p, const EvalPoint& pt);

/// Analytic d/dx of the selected basis, via termwise differentiation of the
/// underlying Kummer series.
double basis_ddx(BasisKind kind, const BasisParams& p, const EvalPoint& pt);

/// Analytic d2/dx2.
double basis_ddxx(BasisKind kind, const BasisParams& p, const EvalPoint& pt);

/// Analytic d/dt.
double basis_ddt(BasisKind kind, const BasisParams& p, const EvalPoint& pt);

/// Normalization constant Gamma(mu)/Gamma(mu + beta/2) associated with the
/// small-argument behaviour of the second-family prefactor. The pointwise
/// limit of z^{-beta} Phi(-beta/2, mu; -z^2) itself diverges for beta > 0;
/// what is returned is the finite ratio that multiplies the leading power.
double small_argument_limit(double beta, double mu);

namespace detail {

/// One generic term (2a)^g t^{g/2} u^sigma Phi(a1, b1, -u), u = x^2/(4 a^2 t).
/// Both basis families and every series term reduce to this shape, so the
/// derivative algebra lives here once.
struct KummerTerm {
  double order;        // g
  double sigma;        // exponent on u
  double a1, b1;       // Kummer parameters
  double diffusivity;  // a

  double value(const EvalPoint& pt) const;
  double ddx(const EvalPoint& pt) const;
  double ddxx(const EvalPoint& pt) const;
  double ddt(const EvalPoint& pt) const;
};

KummerTerm make_term(BasisKind kind, const BasisParams& p);

}  // namespace detail

}  // namespace arcflux::specfun
