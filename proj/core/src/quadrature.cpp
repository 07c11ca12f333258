#include "pbgl/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pbgl/errors.hpp"

namespace pbgl::quad {

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (a == b) return {0.0, 0.0};
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double whole = Rule::integrate(f, a, b, /*max_depth=*/15, 1e-14);
  // A-posteriori convergence check against an independent partition; the
  // built-in estimator is far too conservative near end-of-domain poles.
  const double mid = 0.5 * (a + b);
  const double split = Rule::integrate(f, a, mid, 15, 1e-14) +
                       Rule::integrate(f, mid, b, 15, 1e-14);
  Result r;
  r.value = split;
  r.error = std::abs(whole - split);
  if (!std::isfinite(r.value) || r.error > abs_tol) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "adaptive quadrature did not converge: defect %.3e above "
                  "tolerance %.3e",
                  r.error, abs_tol);
    throw QuadratureError(msg);
  }
  return r;
}

Result integrate_singular(const std::function<double(double)>& f, double a,
                          double b, double abs_tol) {
  if (a == b) return {0.0, 0.0};
  boost::math::quadrature::tanh_sinh<double> rule;
  Result r;
  double l1 = 0.0;
  r.value = rule.integrate(f, a, b, 1e-12, &r.error, &l1);
  // tanh_sinh reports a relative error estimate; convert to absolute.
  r.error *= std::max(l1, 1.0);
  if (!std::isfinite(r.value) || r.error > abs_tol) {
    throw QuadratureError("singular-endpoint quadrature did not converge");
  }
  return r;
}

double find_root(const std::function<double(double)>& f, double a, double b) {
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa < 0) == (fb < 0)) {
    throw ValidationError("find_root: endpoints do not bracket a root");
  }
  boost::math::tools::eps_tolerance<double> tol(
      std::numeric_limits<double>::digits - 2);
  std::uintmax_t max_iter = 200;
  auto range = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, max_iter);
  return 0.5 * (range.first + range.second);
}

}  // namespace pbgl::quad
