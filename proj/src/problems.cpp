#include "arcflux/problems.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace arcflux::problems {

namespace {

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

double poly_eval(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string time_tag(double t) {
  std::ostringstream os;
  os.precision(12);
  os << "t=" << t;
  return os.str();
}

std::string power_tag(int n) { return "t^" + std::to_string(n); }

/// Pads `given` to n_terms entries; empty selects `fallback`. Trailing
/// entries beyond the truncation order must be zero.
std::vector<double> resolve_taylor(const std::vector<double>& given,
                                   std::vector<double> fallback, int n_terms,
                                   const std::string& what) {
  std::vector<double> out = given.empty() ? std::move(fallback) : given;
  if (static_cast<int>(out.size()) > n_terms) {
    for (std::size_t i = n_terms; i < out.size(); ++i) {
      if (out[i] != 0.0)
        throw ValidationError(what + " carries a nonzero coefficient beyond "
                                     "the truncation order");
    }
    out.resize(n_terms);
  }
  out.resize(n_terms, 0.0);
  return out;
}

void check_truncation(int n) {
  if (n < 0) throw ValidationError("truncation order must be nonnegative");
  if (n > 16)
    throw ValidationError("truncation order above 16 is not supported");
}

/// Closed-form row coefficients on the similarity front x = c sqrt(t),
/// where every term contributes a pure power of t. w = c^2 / (4 a^2).
struct FrontForms {
  double a;   // diffusivity
  double mu;
  double q;   // 4 a^2
  double w;

  FrontForms(double diffusivity, double nu, double front_coeff)
      : a(diffusivity),
        mu(0.5 * (nu + 1.0)),
        q(4.0 * diffusivity * diffusivity),
        w(front_coeff * front_coeff / (4.0 * diffusivity * diffusivity)) {}

  // theta(0, t): coefficient of A_n per t^n
  double origin_first(int n) const {
    return std::pow(q, n) * specfun::pochhammer(mu, n) / std::tgamma(n + 1.0);
  }
  // theta on the front: coefficient per t^n
  double front_first_value(int n) const {
    return std::pow(q, n) * specfun::laguerre(n, mu - 1.0, -w);
  }
  double front_second_value(int n) const {
    return std::pow(q, n) * std::pow(w, 1.0 - mu) *
           specfun::kummer_phi(1.0 - mu - n, 2.0 - mu, -w);
  }
  // sqrt(t) * d(theta)/dx on the front: coefficient per t^n, up to the
  // shared factor c / (2 a^2)
  double front_first_slope(int n) const {
    return std::pow(q, n) * specfun::laguerre(n - 1, mu, -w);
  }
  double front_second_slope(int n) const {
    const double phi1 = specfun::kummer_phi(1.0 - mu - n, 2.0 - mu, -w);
    const double phi2 = specfun::kummer_phi(2.0 - mu - n, 3.0 - mu, -w);
    return std::pow(q, n) *
           ((1.0 - mu) * std::pow(w, -mu) * phi1 -
            std::pow(w, 1.0 - mu) * (1.0 - mu - n) / (2.0 - mu) * phi2);
  }
};

void common_validate(double diffusivity, double boundary_coeff, double nu) {
  if (!(diffusivity > 0.0))
    throw ValidationError("diffusivity must be positive");
  if (!(boundary_coeff > 0.0))
    throw ValidationError("front coefficient must be positive (singular data)");
  if (!(nu >= 0.0)) throw ValidationError("nu must be nonnegative");
}

void finalize(AssembledSystem& sys) {
  sys.condition_estimate =
      linsys::condition_number(sys.matrix.cast<std::complex<double>>());
  if (!(sys.condition_estimate < 1e12)) {
    std::ostringstream os;
    os.precision(3);
    os << "condition number " << sys.condition_estimate
       << " exceeds 1e12; treat the solve as rank-deficient";
    sys.notes.push_back(os.str());
  }
}

}  // namespace

linsys::LinearSystem to_linear_system(const AssembledSystem& sys) {
  linsys::Provenance prov;
  prov.unknown_labels = sys.unknown_labels;
  prov.rows = sys.rows;
  prov.notes = sys.notes;
  return linsys::make_system(sys.matrix, sys.rhs, std::move(prov));
}

OnePhaseMode one_phase_mode(const OnePhaseISP& p) {
  OnePhaseMode mode;
  mode.flux_unknown = !p.flux_taylor.has_value();
  const double mu = 0.5 * (p.nu + 1.0);
  bool second = p.use_second_family;
  if (second && mu == 1.0) {
    second = false;
    mode.notes.push_back(
        "second family coincides with the first at nu = 1; dropped");
  }
  if (second && is_nonpositive_integer(2.0 - mu)) {
    second = false;
    mode.notes.push_back(
        "second family hits a parameter pole at this nu; dropped");
  }
  if (second && mode.flux_unknown && mu > 1.0) {
    second = false;
    mode.notes.push_back(
        "second family is unbounded on the axis for nu > 1; dropped");
  }
  mode.second_family = second;
  mode.balance_in_system = second;
  if (!mode.balance_in_system)
    mode.notes.push_back(
        "front balance left out of the square system; check it as a residual");
  return mode;
}

AssembledSystem assemble_one_phase(const OnePhaseISP& p) {
  common_validate(p.diffusivity, p.boundary_coeff, p.nu);
  check_truncation(p.truncation);
  if (!(p.conductivity > 0.0))
    throw ValidationError("conductivity must be positive");
  if (!(p.density > 0.0)) throw ValidationError("density must be positive");

  const OnePhaseMode mode = one_phase_mode(p);
  const double mu = 0.5 * (p.nu + 1.0);
  if (mode.flux_unknown && mode.second_family && p.robin_gamma != 0.0 &&
      mu >= 0.5) {
    throw ValidationError(
        "robin slope data is incompatible with the second family; "
        "set use_second_family=false");
  }

  const int n_terms = p.truncation + 1;
  const FrontForms forms(p.diffusivity, p.nu, p.boundary_coeff);
  const double slope_scale =
      p.conductivity * p.boundary_coeff / (2.0 * forms.a * forms.a);

  const std::vector<double> temp_data = resolve_taylor(
      p.front_temp_data, {p.melt_temp}, n_terms, "front temperature data");
  const std::vector<double> balance_data = resolve_taylor(
      p.front_balance_data,
      {p.latent_heat * p.density * p.boundary_coeff / 2.0}, n_terms,
      "front balance data");

  const int col_a = 0;
  const int col_b = mode.second_family ? n_terms : -1;
  const int col_p =
      mode.flux_unknown ? n_terms * (mode.second_family ? 2 : 1) : -1;
  const int n_cols = n_terms * (1 + (mode.second_family ? 1 : 0) +
                                (mode.flux_unknown ? 1 : 0));

  AssembledSystem sys;
  sys.matrix = Eigen::MatrixXd::Zero(n_cols, n_cols);
  sys.rhs = Eigen::VectorXd::Zero(n_cols);
  sys.notes = mode.notes;
  for (int n = 0; n < n_terms; ++n)
    sys.unknown_labels.push_back("A" + std::to_string(n));
  if (mode.second_family)
    for (int n = 0; n < n_terms; ++n)
      sys.unknown_labels.push_back("B" + std::to_string(n));
  if (mode.flux_unknown)
    for (int n = 0; n < n_terms; ++n)
      sys.unknown_labels.push_back("P" + std::to_string(n));

  int row = 0;
  if (mode.flux_unknown) {
    // beta * theta(0, t) - P(t) = 0, matched per power of t; the slope term
    // of the robin data vanishes on the axis for every retained family
    for (int n = 0; n < n_terms; ++n, ++row) {
      sys.matrix(row, col_a + n) = p.robin_beta * forms.origin_first(n);
      sys.matrix(row, col_p + n) = -1.0;
      sys.rows.push_back({"robin-flux", power_tag(n)});
    }
  }
  for (int n = 0; n < n_terms; ++n, ++row) {
    sys.matrix(row, col_a + n) = forms.front_first_value(n);
    if (mode.second_family)
      sys.matrix(row, col_b + n) = forms.front_second_value(n);
    sys.rhs(row) = temp_data[n];
    sys.rows.push_back({"front-temperature", power_tag(n)});
  }
  if (mode.balance_in_system) {
    for (int n = 0; n < n_terms; ++n, ++row) {
      sys.matrix(row, col_a + n) = slope_scale * forms.front_first_slope(n);
      sys.matrix(row, col_b + n) = slope_scale * forms.front_second_slope(n);
      sys.rhs(row) = balance_data[n];
      sys.rows.push_back({"front-balance", power_tag(n)});
    }
  }

  finalize(sys);
  return sys;
}

OnePhaseSolution split_solution(const OnePhaseISP& p, const Eigen::VectorXd& x) {
  const OnePhaseMode mode = one_phase_mode(p);
  const int n_terms = p.truncation + 1;
  const int expected = n_terms * (1 + (mode.second_family ? 1 : 0) +
                                  (mode.flux_unknown ? 1 : 0));
  if (x.size() != expected)
    throw ValidationError("solution vector does not match the assembly layout");

  std::vector<double> a(x.data(), x.data() + n_terms);
  std::vector<double> b;
  if (mode.second_family)
    b.assign(x.data() + n_terms, x.data() + 2 * n_terms);
  std::vector<double> flux;
  if (mode.flux_unknown) {
    const int off = n_terms * (mode.second_family ? 2 : 1);
    flux.assign(x.data() + off, x.data() + off + n_terms);
  } else {
    flux = resolve_taylor(*p.flux_taylor, {}, n_terms, "flux data");
  }
  return {series::HeatSeries(p.diffusivity, p.nu, std::move(a), std::move(b)),
          std::move(flux)};
}

AssembledSystem assemble_model_problem(const ModelProblemD0& p) {
  common_validate(p.diffusivity, p.boundary_coeff, p.nu);
  if (p.f_taylor.empty())
    throw ValidationError("front temperature data is required");
  if (p.f_taylor[0] != 0.0)
    throw ValidationError("front temperature data must vanish at t = 0");
  const int n_from_data = static_cast<int>(p.f_taylor.size()) - 1;
  const int n_order = p.truncation < 0 ? n_from_data : p.truncation;
  check_truncation(n_order);
  const int n_terms = n_order + 1;
  const std::vector<double> data =
      resolve_taylor(p.f_taylor, {}, n_terms, "front temperature data");

  const FrontForms forms(p.diffusivity, p.nu, p.boundary_coeff);
  AssembledSystem sys;
  sys.matrix = Eigen::MatrixXd::Zero(n_terms, n_terms);
  sys.rhs = Eigen::VectorXd::Zero(n_terms);
  for (int n = 0; n < n_terms; ++n) {
    sys.unknown_labels.push_back("A" + std::to_string(n));
    sys.matrix(n, n) = forms.front_first_value(n);
    sys.rhs(n) = data[n];
    sys.rows.push_back({"front-temperature", power_tag(n)});
  }
  sys.notes.push_back("diagonal model system; one unknown per power of t");
  finalize(sys);
  return sys;
}

series::HeatSeries split_solution(const ModelProblemD0& p,
                                  const Eigen::VectorXd& x) {
  std::vector<double> a(x.data(), x.data() + x.size());
  return series::HeatSeries::first_family_only(p.diffusivity, p.nu,
                                               std::move(a));
}

std::vector<double> reconstruct_flux(const ModelProblemD0& p,
                                     const series::HeatSeries& theta,
                                     const std::vector<double>& times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!(t > 0.0))
      throw ValidationError("flux reconstruction needs t > 0");
    const double front = p.boundary_coeff * std::sqrt(t);
    const double slope = theta.ddx({front, t});
    const double pull =
        p.latent_heat * p.density * p.boundary_coeff / (2.0 * std::sqrt(t));
    out.push_back(p.conductivity * slope - pull);
  }
  return out;
}

std::vector<double> collocation_times(int count, double horizon) {
  if (count < 1)
    throw ValidationError("need at least one collocation time");
  if (!(horizon > 0.0)) throw ValidationError("horizon must be positive");
  std::vector<double> times(count);
  for (int i = 1; i <= count; ++i) {
    const double angle = (2.0 * i - 1.0) * std::numbers::pi / (2.0 * count);
    times[count - i] = 0.5 * horizon * (1.0 + std::cos(angle));
  }
  return times;  // ascending, all strictly inside (0, horizon)
}

namespace {
struct TwoPhaseMode {
  bool b_family = true;  // phase-1 second family
  bool d_family = true;  // phase-2 second family
  std::vector<std::string> notes;
};

TwoPhaseMode two_phase_mode(const TwoPhaseISP& p) {
  TwoPhaseMode mode;
  const double mu = 0.5 * (p.nu + 1.0);
  bool second = p.use_second_family;
  if (second && (mu == 1.0 || is_nonpositive_integer(2.0 - mu))) {
    second = false;
    mode.notes.push_back(
        "second family degenerates at this nu; dropped in both phases");
  }
  mode.b_family = second;
  mode.d_family = second;
  if (second && mu > 1.0) {
    mode.b_family = false;
    mode.notes.push_back(
        "phase-1 second family is unbounded on the axis for nu > 1; dropped");
  }
  return mode;
}
}  // namespace

AssembledSystem assemble_two_phase(const TwoPhaseISP& p) {
  common_validate(p.diffusivity1, p.boundary_coeff, p.nu);
  if (!(p.diffusivity2 > 0.0))
    throw ValidationError("diffusivity must be positive");
  if (!(p.conductivity1 > 0.0) || !(p.conductivity2 > 0.0))
    throw ValidationError("conductivity must be positive");
  if (!(p.density > 0.0)) throw ValidationError("density must be positive");
  check_truncation(p.truncation);
  if (p.initial_profile_taylor.empty())
    throw ValidationError("initial profile data is required");
  if (std::abs(p.initial_profile_taylor[0] - p.melt_temp) >
      1e-12 * std::max(1.0, std::abs(p.melt_temp)))
    throw ValidationError(
        "initial profile must start at the melt temperature");
  if (p.far_field_cutoff &&
      !(*p.far_field_cutoff > p.boundary_coeff * std::sqrt(p.horizon)))
    throw ValidationError(
        "far-field cutoff must stay beyond the front over the horizon");

  const TwoPhaseMode mode = two_phase_mode(p);
  const double mu = 0.5 * (p.nu + 1.0);
  if (mode.b_family && p.robin_gamma != 0.0 && mu >= 0.5)
    throw ValidationError(
        "robin slope data is incompatible with the phase-1 second family; "
        "set use_second_family=false");

  const int n_terms = p.truncation + 1;
  const std::vector<double> init = resolve_taylor(
      p.initial_profile_taylor, {}, n_terms, "initial profile data");

  const auto temp1 = p.front_temp1_data
                         ? p.front_temp1_data
                         : [m = p.melt_temp](double) { return m; };
  const auto temp2 = p.front_temp2_data
                         ? p.front_temp2_data
                         : [m = p.melt_temp](double) { return m; };
  const auto balance =
      p.front_balance_data
          ? p.front_balance_data
          : [s = p.latent_heat * p.density * p.boundary_coeff / 2.0](double t) {
              return s / std::sqrt(t);
            };
  const auto far = p.far_field_data ? p.far_field_data
                                    : [](double) { return 0.0; };

  // column layout: A [B] C [D] P
  const int col_a = 0;
  const int col_b = mode.b_family ? n_terms : -1;
  const int col_c = n_terms * (1 + (mode.b_family ? 1 : 0));
  const int col_d = mode.d_family ? col_c + n_terms : -1;
  const int col_p = col_c + n_terms * (1 + (mode.d_family ? 1 : 0));
  const int n_cols = col_p + n_terms;

  const std::vector<double> times =
      collocation_times(p.collocation_count, p.horizon);
  const int n_rows = n_terms + static_cast<int>(times.size()) *
                                   (4 + (p.far_field_cutoff ? 1 : 0));

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n_rows, n_cols);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(n_rows);
  std::vector<linsys::RowInfo> raw_rows;
  raw_rows.reserve(n_rows);

  const series::TermBasis basis1(p.diffusivity1, p.nu);
  const series::TermBasis basis2(p.diffusivity2, p.nu);
  const FrontForms forms1(p.diffusivity1, p.nu, p.boundary_coeff);

  int row = 0;
  // initial profile of the liquid phase, matched per even derivative order
  for (int n = 0; n < n_terms; ++n, ++row) {
    g(row, col_c + n) = std::pow(-1.0, n) / std::tgamma(n + 1.0);
    if (mode.d_family) g(row, col_d + n) = 1.0;
    h(row) = init[n];
    raw_rows.push_back({"initial-profile", "n=" + std::to_string(n)});
  }
  for (double t : times) {
    const double front = p.boundary_coeff * std::sqrt(t);
    const std::string tag = time_tag(t);
    // robin data on the axis; slope contributions vanish for the retained
    // families
    for (int n = 0; n < n_terms; ++n) {
      g(row, col_a + n) =
          p.robin_beta * forms1.origin_first(n) * std::pow(t, n);
      g(row, col_p + n) = -std::pow(t, n);
    }
    h(row) = 0.0;
    raw_rows.push_back({"robin-flux", tag});
    ++row;

    for (int n = 0; n < n_terms; ++n) {
      g(row, col_a + n) = basis1.first_value(n, {front, t});
      if (mode.b_family) g(row, col_b + n) = basis1.second_value(n, {front, t});
    }
    h(row) = temp1(t);
    raw_rows.push_back({"front-temperature-1", tag});
    ++row;

    for (int n = 0; n < n_terms; ++n) {
      g(row, col_c + n) = basis2.first_value(n, {front, t});
      if (mode.d_family) g(row, col_d + n) = basis2.second_value(n, {front, t});
    }
    h(row) = temp2(t);
    raw_rows.push_back({"front-temperature-2", tag});
    ++row;

    for (int n = 0; n < n_terms; ++n) {
      g(row, col_a + n) = -p.conductivity1 * basis1.first_ddx(n, {front, t});
      if (mode.b_family)
        g(row, col_b + n) = -p.conductivity1 * basis1.second_ddx(n, {front, t});
      g(row, col_c + n) = p.conductivity2 * basis2.first_ddx(n, {front, t});
      if (mode.d_family)
        g(row, col_d + n) = p.conductivity2 * basis2.second_ddx(n, {front, t});
    }
    h(row) = balance(t);
    raw_rows.push_back({"front-balance", tag});
    ++row;

    if (p.far_field_cutoff) {
      const double cutoff = *p.far_field_cutoff;
      for (int n = 0; n < n_terms; ++n) {
        g(row, col_c + n) = basis2.first_value(n, {cutoff, t});
        if (mode.d_family)
          g(row, col_d + n) = basis2.second_value(n, {cutoff, t});
      }
      h(row) = far(t);
      raw_rows.push_back({"far-field", tag});
      ++row;
    }
  }

  AssembledSystem sys;
  sys.notes = mode.notes;
  for (int n = 0; n < n_terms; ++n)
    sys.unknown_labels.push_back("A" + std::to_string(n));
  if (mode.b_family)
    for (int n = 0; n < n_terms; ++n)
      sys.unknown_labels.push_back("B" + std::to_string(n));
  for (int n = 0; n < n_terms; ++n)
    sys.unknown_labels.push_back("C" + std::to_string(n));
  if (mode.d_family)
    for (int n = 0; n < n_terms; ++n)
      sys.unknown_labels.push_back("D" + std::to_string(n));
  for (int n = 0; n < n_terms; ++n)
    sys.unknown_labels.push_back("P" + std::to_string(n));

  // least-squares closure: the collocation block is rectangular by design
  sys.matrix = g.transpose() * g;
  sys.rhs = g.transpose() * h;
  for (const auto& label : sys.unknown_labels)
    sys.rows.push_back({"normal-equation", label});
  sys.notes.push_back(
      "closed in least squares via normal equations; raw collocation rows "
      "attached");
  sys.collocation = CollocationBlock{std::move(g), std::move(h),
                                     std::move(raw_rows)};
  finalize(sys);
  return sys;
}

TwoPhaseSolution split_solution(const TwoPhaseISP& p, const Eigen::VectorXd& x) {
  const TwoPhaseMode mode = two_phase_mode(p);
  const int n_terms = p.truncation + 1;
  const int expected = n_terms * (3 + (mode.b_family ? 1 : 0) +
                                  (mode.d_family ? 1 : 0));
  if (x.size() != expected)
    throw ValidationError("solution vector does not match the assembly layout");

  int off = 0;
  auto take = [&](bool present) {
    std::vector<double> v;
    if (present) {
      v.assign(x.data() + off, x.data() + off + n_terms);
      off += n_terms;
    }
    return v;
  };
  std::vector<double> a = take(true);
  std::vector<double> b = take(mode.b_family);
  std::vector<double> c = take(true);
  std::vector<double> d = take(mode.d_family);
  std::vector<double> flux = take(true);
  return {series::HeatSeries(p.diffusivity1, p.nu, std::move(a), std::move(b)),
          series::HeatSeries(p.diffusivity2, p.nu, std::move(c), std::move(d)),
          std::move(flux)};
}

namespace {
void push_entry(BoundaryResidualReport& report, std::string condition, double t,
                double residual) {
  report.entries.push_back({std::move(condition), t, residual});
  report.max_residual = std::max(report.max_residual, std::abs(residual));
}

/// beta * theta(0, t) against the flux polynomial; skipped (with a note)
/// when the axis trace does not exist for the active families.
bool axis_trace_available(const series::HeatSeries& theta, double robin_gamma) {
  const double mu = theta.mu();
  bool second_live = false;
  for (double b : theta.second_family())
    if (b != 0.0) second_live = true;
  if (!second_live) return true;
  if (mu > 1.0) return false;
  if (robin_gamma != 0.0 && mu >= 0.5) return false;
  return true;
}
}  // namespace

BoundaryResidualReport boundary_residuals(const OnePhaseISP& p,
                                          const OnePhaseSolution& sol,
                                          const std::vector<double>& probe_times) {
  const int n_terms = p.truncation + 1;
  const std::vector<double> temp_data = resolve_taylor(
      p.front_temp_data, {p.melt_temp}, n_terms, "front temperature data");
  const std::vector<double> balance_data = resolve_taylor(
      p.front_balance_data,
      {p.latent_heat * p.density * p.boundary_coeff / 2.0}, n_terms,
      "front balance data");

  BoundaryResidualReport report;
  const bool axis_ok = axis_trace_available(sol.theta, p.robin_gamma);
  if (!axis_ok)
    report.notes.push_back(
        "robin residual skipped: no axis trace for the second family here");
  for (double t : probe_times) {
    if (!(t > 0.0)) throw ValidationError("probe times must be positive");
    const double front = p.boundary_coeff * std::sqrt(t);
    push_entry(report, "front-temperature", t,
               sol.theta.value({front, t}) - poly_eval(temp_data, t));
    push_entry(report, "front-balance", t,
               p.conductivity * std::sqrt(t) * sol.theta.ddx({front, t}) -
                   poly_eval(balance_data, t));
    if (axis_ok) {
      push_entry(report, "robin-flux", t,
                 p.robin_beta * sol.theta.value_origin(t) -
                     poly_eval(sol.flux_taylor, t));
    }
  }
  return report;
}

BoundaryResidualReport boundary_residuals(const ModelProblemD0& p,
                                          const series::HeatSeries& theta,
                                          const std::vector<double>& probe_times) {
  const int n_terms = theta.truncation() + 1;
  const std::vector<double> data =
      resolve_taylor(p.f_taylor, {}, n_terms, "front temperature data");
  BoundaryResidualReport report;
  for (double t : probe_times) {
    if (!(t > 0.0)) throw ValidationError("probe times must be positive");
    const double front = p.boundary_coeff * std::sqrt(t);
    push_entry(report, "front-temperature", t,
               theta.value({front, t}) - poly_eval(data, t));
  }
  return report;
}

BoundaryResidualReport boundary_residuals(const TwoPhaseISP& p,
                                          const TwoPhaseSolution& sol,
                                          const std::vector<double>& probe_times) {
  const auto temp1 = p.front_temp1_data
                         ? p.front_temp1_data
                         : [m = p.melt_temp](double) { return m; };
  const auto temp2 = p.front_temp2_data
                         ? p.front_temp2_data
                         : [m = p.melt_temp](double) { return m; };
  const auto balance =
      p.front_balance_data
          ? p.front_balance_data
          : [s = p.latent_heat * p.density * p.boundary_coeff / 2.0](double t) {
              return s / std::sqrt(t);
            };
  const auto far = p.far_field_data ? p.far_field_data
                                    : [](double) { return 0.0; };

  const int n_terms = p.truncation + 1;
  const std::vector<double> init = resolve_taylor(
      p.initial_profile_taylor, {}, n_terms, "initial profile data");

  BoundaryResidualReport report;
  const bool axis_ok = axis_trace_available(sol.theta1, p.robin_gamma);
  if (!axis_ok)
    report.notes.push_back(
        "robin residual skipped: no axis trace for the second family here");

  for (int n = 0; n < n_terms; ++n) {
    const double cn = sol.theta2.first_family()[n];
    const double dn = n < static_cast<int>(sol.theta2.second_family().size())
                          ? sol.theta2.second_family()[n]
                          : 0.0;
    push_entry(report, "initial-profile", 0.0,
               std::pow(-1.0, n) / std::tgamma(n + 1.0) * cn + dn - init[n]);
  }

  for (double t : probe_times) {
    if (!(t > 0.0)) throw ValidationError("probe times must be positive");
    const double front = p.boundary_coeff * std::sqrt(t);
    push_entry(report, "front-temperature-1", t,
               sol.theta1.value({front, t}) - temp1(t));
    push_entry(report, "front-temperature-2", t,
               sol.theta2.value({front, t}) - temp2(t));
    push_entry(report, "front-balance", t,
               -p.conductivity1 * sol.theta1.ddx({front, t}) +
                   p.conductivity2 * sol.theta2.ddx({front, t}) - balance(t));
    if (axis_ok) {
      push_entry(report, "robin-flux", t,
                 p.robin_beta * sol.theta1.value_origin(t) -
                     poly_eval(sol.flux_taylor, t));
    }
    if (p.far_field_cutoff) {
      push_entry(report, "far-field", t,
                 sol.theta2.value({*p.far_field_cutoff, t}) - far(t));
    }
  }
  return report;
}

}  // namespace arcflux::problems
