#include "arcflux/special_functions.hpp"

#include <cmath>
#include <limits>

namespace arcflux::specfun {

namespace {

constexpr int kSeriesCap = 500;
constexpr double kSeriesTol = 1e-16;

bool is_nonpositive_integer(double v) {
  return v <= 0.0 && v == std::floor(v) && std::abs(v) < 1e15;
}

// Plain ascending series, assumed cancellation-free by the caller.
double kummer_series(double a, double b, double z) {
  double term = 1.0;
  double sum = 1.0;
  int below = 0;
  for (int k = 0; k < kSeriesCap; ++k) {
    term *= (a + k) * z / ((b + k) * (k + 1));
    sum += term;
    if (std::abs(term) <= kSeriesTol * std::abs(sum)) {
      if (++below >= 3) return sum;
    } else {
      below = 0;
    }
  }
  throw ConvergenceError("kummer_phi: series did not converge within " +
                         std::to_string(kSeriesCap) + " terms (a=" + std::to_string(a) +
                         ", b=" + std::to_string(b) + ", z=" + std::to_string(z) + ")");
}

double kummer_terminating(int n, double a, double b, double z) {
  // a = -n; all factors in (b)_k are nonzero for k <= n by the caller's check.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= (a + k) * z / ((b + k) * (k + 1));
    sum += term;
  }
  return sum;
}

}  // namespace

SignedLogGamma ln_gamma(double z) {
  if (is_nonpositive_integer(z)) {
    throw DomainError("ln_gamma: pole at non-positive integer z=" + std::to_string(z));
  }
  int sign = 1;
  if (z < 0.0) {
    // Gamma alternates sign between consecutive negative integers.
    sign = (static_cast<long long>(std::floor(z)) % 2 == 0) ? 1 : -1;
  }
  return {std::lgamma(z), sign};
}

double gamma_ratio(double p, double q) {
  const auto lp = ln_gamma(p);
  const auto lq = ln_gamma(q);
  return lp.sign * lq.sign * std::exp(lp.log_abs - lq.log_abs);
}

double pochhammer(double beta, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be non-negative");
  double prod = 1.0;
  for (int k = 0; k < n; ++k) prod *= beta + k;
  return prod;
}

double kummer_phi(double a, double b, double z) {
  if (a == 0.0 || z == 0.0) return 1.0;
  if (is_nonpositive_integer(a)) {
    const int n = static_cast<int>(-a);
    if (is_nonpositive_integer(b) && -b < n) {
      throw DomainError("kummer_phi: parameter pole, b=" + std::to_string(b) +
                        " hits zero before the series terminates (a=" + std::to_string(a) + ")");
    }
    return kummer_terminating(n, a, b, z);
  }
  if (is_nonpositive_integer(b)) {
    throw DomainError("kummer_phi: b=" + std::to_string(b) +
                      " is a non-positive integer in a non-terminating series");
  }
  if (z < 0.0) {
    // Alternating series; route through the reflected positive-term series.
    if (is_nonpositive_integer(b - a)) {
      const int n = static_cast<int>(-(b - a));
      return std::exp(z) * kummer_terminating(n, b - a, b, -z);
    }
    return std::exp(z) * kummer_series(b - a, b, -z);
  }
  return kummer_series(a, b, z);
}

double laguerre(int n, double alpha, double x) {
  if (n < 0) return 0.0;
  double norm = 1.0;  // (alpha+1)_n / n!
  for (int k = 0; k < n; ++k) norm *= (alpha + 1 + k) / (k + 1);
  return norm * kummer_phi(-static_cast<double>(n), alpha + 1.0, x);
}

double small_argument_limit(double beta, double mu) {
  return gamma_ratio(mu, mu + beta / 2.0);
}

namespace detail {

namespace {

struct RadialState {
  double u;       // x^2 / (4 a^2 t)
  double u_x;     // x / (2 a^2 t)
  double u_xx;    // 1 / (2 a^2 t)
  double prefac;  // (2 a sqrt(t))^g
};

RadialState radial_state(const KummerTerm& term, const EvalPoint& pt) {
  if (pt.t <= 0.0) throw DomainError("basis evaluation requires t > 0");
  if (pt.x < 0.0) throw DomainError("basis evaluation requires x >= 0");
  const double a = term.diffusivity;
  if (a <= 0.0) throw DomainError("diffusivity must be positive");
  RadialState s;
  const double a2t = a * a * pt.t;
  s.u = pt.x * pt.x / (4.0 * a2t);
  s.u_x = pt.x / (2.0 * a2t);
  s.u_xx = 1.0 / (2.0 * a2t);
  s.prefac = std::pow(2.0 * a * std::sqrt(pt.t), term.order);
  return s;
}

double upow(double u, double e) {
  if (u == 0.0) {
    if (e > 0.0) return 0.0;
    if (e == 0.0) return 1.0;
    throw DomainError("second-kind basis is singular at x = 0 for this nu");
  }
  return std::pow(u, e);
}

}  // namespace

// H(u) = u^sigma Phi(a1, b1, -u) and its u-derivatives; everything below is
// termwise differentiation via Phi'(a,b,z) = (a/b) Phi(a+1,b+1,z).
double KummerTerm::value(const EvalPoint& pt) const {
  const auto s = radial_state(*this, pt);
  return s.prefac * upow(s.u, sigma) * kummer_phi(a1, b1, -s.u);
}

double KummerTerm::ddx(const EvalPoint& pt) const {
  const auto s = radial_state(*this, pt);
  if (s.u == 0.0) {
    if (sigma == 0.0) return 0.0;  // H'(0) finite, u_x = 0
    throw DomainError("basis x-derivative undefined at x = 0 for sigma != 0");
  }
  const double h1 = sigma * upow(s.u, sigma - 1.0) * kummer_phi(a1, b1, -s.u) -
                    upow(s.u, sigma) * (a1 / b1) * kummer_phi(a1 + 1, b1 + 1, -s.u);
  return s.prefac * h1 * s.u_x;
}

double KummerTerm::ddxx(const EvalPoint& pt) const {
  const auto s = radial_state(*this, pt);
  if (s.u == 0.0) {
    if (sigma == 0.0) {
      // H''(0) u_x^2 vanishes; remaining piece is H'(0) u_xx.
      return s.prefac * (-(a1 / b1)) * s.u_xx;
    }
    throw DomainError("basis xx-derivative undefined at x = 0 for sigma != 0");
  }
  const double phi0 = kummer_phi(a1, b1, -s.u);
  const double phi1 = kummer_phi(a1 + 1, b1 + 1, -s.u);
  const double h1 = sigma * upow(s.u, sigma - 1.0) * phi0 -
                    upow(s.u, sigma) * (a1 / b1) * phi1;
  const double h2 = sigma * (sigma - 1.0) * upow(s.u, sigma - 2.0) * phi0 -
                    2.0 * sigma * upow(s.u, sigma - 1.0) * (a1 / b1) * phi1 +
                    upow(s.u, sigma) * (a1 * (a1 + 1.0)) / (b1 * (b1 + 1.0)) *
                        kummer_phi(a1 + 2, b1 + 2, -s.u);
  return s.prefac * (h2 * s.u_x * s.u_x + h1 * s.u_xx);
}

double KummerTerm::ddt(const EvalPoint& pt) const {
  const auto s = radial_state(*this, pt);
  const double h0 = upow(s.u, sigma) * kummer_phi(a1, b1, -s.u);
  if (s.u == 0.0) {
    return s.prefac * (order / (2.0 * pt.t)) * h0;
  }
  const double h1 = sigma * upow(s.u, sigma - 1.0) * kummer_phi(a1, b1, -s.u) -
                    upow(s.u, sigma) * (a1 / b1) * kummer_phi(a1 + 1, b1 + 1, -s.u);
  return s.prefac * ((order / (2.0 * pt.t)) * h0 - (s.u / pt.t) * h1);
}

KummerTerm make_term(BasisKind kind, const BasisParams& p) {
  KummerTerm term;
  term.order = p.order;
  term.diffusivity = p.diffusivity;
  if (kind == BasisKind::FirstKind) {
    term.sigma = 0.0;
    term.a1 = -p.order / 2.0;
    term.b1 = (p.nu + 1.0) / 2.0;
  } else {
    term.sigma = (1.0 - p.nu) / 2.0;
    term.a1 = (1.0 - p.nu - p.order) / 2.0;
    term.b1 = (3.0 - p.nu) / 2.0;
  }
  return term;
}

}  // namespace detail

double basis_value(BasisKind kind, const BasisParams& p, const EvalPoint& pt) {
  return detail::make_term(kind, p).value(pt);
}

double basis_ddx(BasisKind kind, const BasisParams& p, const EvalPoint& pt) {
  return detail::make_term(kind, p).ddx(pt);
}

double basis_ddxx(BasisKind kind, const BasisParams& p, const EvalPoint& pt) {
  return detail::make_term(kind, p).ddxx(pt);
}

double basis_ddt(BasisKind kind, const BasisParams& p, const EvalPoint& pt) {
  return detail::make_term(kind, p).ddt(pt);
}

}  // namespace arcflux::specfun
