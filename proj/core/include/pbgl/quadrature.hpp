#pragma once

#include <functional>

namespace pbgl::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
};

// Adaptive Gauss-Kronrod on a finite interval [a, b]. Throws QuadratureError
// when the error estimate stays above abs_tol.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

// Tanh-sinh rule; tolerates integrable endpoint singularities.
Result integrate_singular(const std::function<double(double)>& f, double a,
                          double b, double abs_tol);

// Root of f on [a, b] by TOMS 748 bracketing; f(a) and f(b) must differ in
// sign. Converges to machine precision.
double find_root(const std::function<double(double)>& f, double a, double b);

}  // namespace pbgl::quad
