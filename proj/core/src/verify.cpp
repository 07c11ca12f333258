#include "pbgl/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "pbgl/discretize.hpp"
#include "pbgl/dynamics.hpp"
#include "pbgl/errors.hpp"
#include "pbgl/oracle.hpp"

namespace pbgl {

namespace {

// Analytic tail integral of the band-edge spectral response,
//   Int_{xu}^{inf} (C/pi) / (sqrt(x) (delta - x)) dx,
// used as the independent reference for the adaptive quadrature.
double closed_form_edge_shift(double coupling, double delta, double xu) {
  const double front = coupling / M_PI;
  if (delta < 0) {
    return -2.0 * front / std::sqrt(-delta) *
           std::atan(std::sqrt(-delta / xu));
  }
  if (delta == 0) {
    return -2.0 * front / std::sqrt(xu);
  }
  const double r = std::sqrt(delta);
  const double s = std::sqrt(xu);
  return front / r * std::log((s - r) / (s + r));
}

DiscretizedReservoir reference_reservoir(std::size_t n, double spacing,
                                         const TransitionFrequencies& atom) {
  IsotropicBandEdge model;
  model.edge_frequency = 0.0;
  model.coupling_upper = 1.0;
  model.coupling_lower = 1.5;
  model = with_rho0_from_spacing(model, spacing);
  return build_quadratic_grid(model, QuadraticGridParams{n, spacing}, atom);
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::conj(u[i]) * v[i];
  return sum;
}

ComplexVector random_unit_vector(std::size_t dim, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexVector v(dim);
  double n2 = 0.0;
  for (auto& z : v) {
    z = Complex(dist(rng), dist(rng));
    n2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : v) z *= inv;
  return v;
}

VerifyCheck check_grid_identity() {
  VerifyCheck check{"grid-identity", false, 0.0, 1e-12, ""};
  const TransitionFrequencies atom{-1.0, 0.0};
  const double spacing = 4.4e-4;
  const auto quadratic = reference_reservoir(150, spacing, atom);
  const DosModel model = quadratic.source;
  RecurrenceGridParams params;
  params.start = 0.0;
  params.count = 150;
  const auto recurrence = build_recurrence_grid(model, params, atom);
  double worst = 0.0;
  for (std::size_t j = 0; j < quadratic.size(); ++j) {
    const double q = quadratic.mode_frequencies[j];
    const double r = recurrence.mode_frequencies[j];
    worst = std::max(worst, std::abs(r - q) / std::abs(q));
  }
  check.residual = worst;
  check.passed = worst < check.threshold;
  check.detail = "recurrence vs quadratic mode frequencies, N=150";
  return check;
}

VerifyCheck check_shift_closed_form() {
  VerifyCheck check{"shift-closed-form", false, 0.0, 1e-10, ""};
  IsotropicBandEdge model;
  model.coupling_upper = 1.0;
  model.coupling_lower = 1.0;
  const double xu = 9.9;
  double worst = 0.0;
  for (double delta : {0.0, -0.25, -1.0, -2.6207413942088964, -6.0}) {
    const double numeric =
        compute_shift(DosModel{model}, Transition::upper, delta, 0.0, xu);
    const double exact = closed_form_edge_shift(1.0, delta, xu);
    worst = std::max(worst, std::abs(numeric - exact) / std::abs(exact));
  }
  check.residual = worst;
  check.passed = worst < check.threshold;
  check.detail = "adaptive quadrature vs antiderivative, 5 in-gap detunings";
  return check;
}

VerifyCheck check_anti_hermiticity(bool inject_fault) {
  VerifyCheck check{"rhs-anti-hermiticity", false, 0.0, 1e-13, ""};
  const TransitionFrequencies atom{-1.0, 0.5};
  auto reservoir = reference_reservoir(8, 0.15, atom);
  const LadderConfig config(reservoir, -1.0, 0.5);
  if (inject_fault) {
    reservoir.couplings_upper[0] = -reservoir.couplings_upper[0];
    check.detail = "fault injected: one coupling sign corrupted";
  } else {
    check.detail = "random-state inner products, N=8";
  }
  const LadderConfig partner(reservoir, -1.0, 0.5);

  std::mt19937 rng(20240811u);
  const std::size_t dim = config.layout().dimension();
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    AmplitudeState u = make_state(config, random_unit_vector(dim, rng));
    AmplitudeState v = make_state(config, random_unit_vector(dim, rng));
    const ComplexVector fu = rhs(u, config);
    const ComplexVector fv = rhs(v, partner);
    const Complex defect =
        inner(u.amplitudes, fv) + std::conj(inner(v.amplitudes, fu));
    worst = std::max(worst, std::abs(defect));
  }
  check.residual = worst;
  check.passed = worst < check.threshold;
  return check;
}

VerifyCheck check_rhs_matches_generator() {
  VerifyCheck check{"rhs-vs-dense-generator", false, 0.0, 1e-13, ""};
  const TransitionFrequencies atom{-1.3103706971044482, 0.0};
  const auto reservoir = reference_reservoir(6, 0.275, atom);
  const LadderConfig config(reservoir, -1.3103706971044482, 0.0);
  const std::size_t dim = config.layout().dimension();
  const ComplexVector h = dense_generator(config);

  std::mt19937 rng(7u);
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    AmplitudeState v = make_state(config, random_unit_vector(dim, rng));
    const ComplexVector f = rhs(v, config);
    for (std::size_t r = 0; r < dim; ++r) {
      Complex hv(0.0, 0.0);
      for (std::size_t c = 0; c < dim; ++c) {
        hv += h[r * dim + c] * v.amplitudes[c];
      }
      worst = std::max(worst, std::abs(f[r] - Complex(0.0, -1.0) * hv));
    }
  }
  check.residual = worst;
  check.passed = worst < check.threshold;
  check.detail = "loop right-hand side vs assembled matrix, N=6";
  return check;
}

VerifyCheck check_dense_equivalence() {
  VerifyCheck check{"dense-oracle-equivalence", false, 0.0, 1e-8, ""};
  double worst = 0.0;

  auto compare = [&](const LadderConfig& config) {
    PropagateOptions options;
    options.t_end = 5.0;
    options.samples = 11;
    options.rel_tol = 1e-12;
    options.abs_tol = 1e-14;
    const auto prop = propagate(config, options);
    const auto exact = dense_propagate(config, 5.0);
    for (std::size_t i = 0; i < exact.amplitudes.size(); ++i) {
      worst = std::max(worst, std::abs(prop.final_state.amplitudes[i] -
                                       exact.amplitudes[i]));
    }
  };

  {
    const double d12 = -1.3103706971044482;
    const TransitionFrequencies atom{d12, 0.0};
    compare(LadderConfig(reference_reservoir(6, 0.275, atom), d12, 0.0));
  }
  {
    GeneralizedLorentzian model;
    model.center_frequency = 100.0;
    model.half_width = 1.0;
    model.order = 6;
    model.rate_upper = 0.5;
    model.rate_lower = 1.0;
    const TransitionFrequencies atom{100.1, 100.3};
    const auto reservoir = build_uniform_grid(
        model, UniformGridParams{80.0, 120.0, 6}, atom);
    compare(LadderConfig(reservoir, 0.1, 0.3));
  }
  check.residual = worst;
  check.passed = worst < check.threshold;
  check.detail = "propagate vs matrix exponential at N=6, t=5, both models";
  return check;
}

VerifyCheck check_rabi_closed_form() {
  VerifyCheck check{"rabi-closed-form", false, 0.0, 1e-12, ""};
  double worst = 0.0;
  for (const auto& [o1, o2] :
       {std::pair{1.0, 2.0}, std::pair{3.0, 4.0}, std::pair{2.5, 0.7}}) {
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(0, 1) = h(1, 0) = 0.5 * o1;
    h(0, 2) = h(2, 0) = 0.5 * o2;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(h);
    const RabiModel model{o1, o2};
    for (int i = 1; i <= 20; ++i) {
      const double t = 0.35 * i;
      Eigen::Vector3cd psi = Eigen::Vector3cd::Zero();
      psi(0) = 1.0;
      Eigen::Vector3cd coeff = solver.eigenvectors().adjoint() * psi;
      for (int k = 0; k < 3; ++k) {
        coeff(k) *= std::polar(1.0, -solver.eigenvalues()(k) * t);
      }
      psi = solver.eigenvectors() * coeff;
      const auto p = rabi_populations(model, t);
      for (int k = 0; k < 3; ++k) {
        worst = std::max(worst, std::abs(std::norm(psi(k)) - p[k]));
      }
    }
  }
  check.residual = worst;
  check.passed = worst < check.threshold;
  check.detail = "closed form vs three-level matrix exponential";
  return check;
}

VerifyCheck guarded(VerifyCheck (*fn)(), const char* name) {
  try {
    return fn();
  } catch (const std::exception& e) {
    VerifyCheck check{name, false, 0.0, 0.0, ""};
    check.detail = std::string("exception: ") + e.what();
    return check;
  }
}

}  // namespace

bool VerifyReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  report.checks.push_back(guarded(check_grid_identity, "grid-identity"));
  report.checks.push_back(
      guarded(check_shift_closed_form, "shift-closed-form"));
  try {
    report.checks.push_back(
        check_anti_hermiticity(options.inject_coupling_sign_fault));
  } catch (const std::exception& e) {
    report.checks.push_back(
        {"rhs-anti-hermiticity", false, 0.0, 0.0,
         std::string("exception: ") + e.what()});
  }
  report.checks.push_back(
      guarded(check_rhs_matches_generator, "rhs-vs-dense-generator"));
  report.checks.push_back(
      guarded(check_dense_equivalence, "dense-oracle-equivalence"));
  report.checks.push_back(
      guarded(check_rabi_closed_form, "rabi-closed-form"));
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  residual="
        << c.residual << " (threshold " << c.threshold << ")";
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << '\n';
  }
  out << (report.all_passed() ? "all checks passed" : "CHECKS FAILED")
      << '\n';
  return out.str();
}

}  // namespace pbgl
