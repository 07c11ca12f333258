#include "pbgl/rk.hpp"

#include <algorithm>
#include <cmath>

#include "pbgl/errors.hpp"

namespace pbgl {

namespace {

// Dormand-Prince 5(4) tableau. B holds the fifth-order weights, E the
// difference against the embedded fourth-order solution.
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;

constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;

constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

double scaled_rms(const ComplexVector& err, const ComplexVector& y0,
                  const ComplexVector& y1, double atol, double rtol) {
  double sum = 0.0;
  const std::size_t n = err.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double scale =
        atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double e = std::abs(err[i]) / scale;
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(n));
}

double weighted_norm(const ComplexVector& v, const ComplexVector& ref,
                     double atol, double rtol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double scale = atol + rtol * std::abs(ref[i]);
    const double e = std::abs(v[i]) / scale;
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(v.size()));
}

// Hairer-style automatic initial step selection.
double initial_step(const RkRhs& f, double t0, const ComplexVector& y0,
                    const ComplexVector& f0, double max_step,
                    const RkOptions& opt, RkStats& stats) {
  const double d0 = weighted_norm(y0, y0, opt.abs_tol, opt.rel_tol);
  const double d1 = weighted_norm(f0, y0, opt.abs_tol, opt.rel_tol);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, max_step);

  ComplexVector y1(y0.size()), f1(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) y1[i] = y0[i] + h0 * f0[i];
  f(t0 + h0, y1, f1);
  ++stats.rhs_evaluations;
  for (std::size_t i = 0; i < y0.size(); ++i) f1[i] -= f0[i];
  const double d2 = weighted_norm(f1, y0, opt.abs_tol, opt.rel_tol) / h0;

  double h1;
  if (d1 <= 1e-15 && d2 <= 1e-15) {
    h1 = std::max(1e-6, h0 * 1e-3);
  } else {
    h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
  }
  return std::min({100.0 * h0, h1, max_step});
}

}  // namespace

RkStats integrate_sampled(const RkRhs& f, ComplexVector& y, double t0,
                          const std::vector<double>& sample_times,
                          const RkSampleSink& on_sample,
                          const RkOptions& options) {
  RkStats stats;
  const std::size_t n = y.size();
  if (n == 0) throw ValidationError("empty state vector");
  for (std::size_t i = 1; i < sample_times.size(); ++i) {
    if (sample_times[i] < sample_times[i - 1]) {
      throw ValidationError("sample times must be ascending");
    }
  }

  ComplexVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  ComplexVector ytmp(n), ynew(n), yerr(n);

  double t = t0;
  f(t, y, k1);
  ++stats.rhs_evaluations;

  double h_ctrl = options.initial_step > 0
                      ? std::min(options.initial_step, options.max_step)
                      : initial_step(f, t0, y, k1, options.max_step, options,
                                     stats);

  for (double ts : sample_times) {
    if (ts < t0) throw ValidationError("sample time precedes start time");
    while (t < ts) {
      const double remaining = ts - t;
      if (remaining <= 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(t), std::abs(ts))) {
        t = ts;  // snap over roundoff-sized gaps
        break;
      }
      const bool clamped = h_ctrl >= remaining;
      double h = clamped ? remaining : h_ctrl;
      if (!(h > std::abs(t) * 1e2 * std::numeric_limits<double>::epsilon()) &&
          !(t == 0.0 && h > 0.0)) {
        throw IntegratorError("step size underflow");
      }
      if (stats.steps_accepted + stats.steps_rejected >= options.max_steps) {
        throw IntegratorError("step budget exhausted");
      }

      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (A21 * k1[i]);
      f(t + C2 * h, ytmp, k2);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
      f(t + C3 * h, ytmp, k3);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
      f(t + C4 * h, ytmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] +
                              A54 * k4[i]);
      f(t + C5 * h, ytmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] +
                              A64 * k4[i] + A65 * k5[i]);
      f(t + h, ytmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] +
                              B5 * k5[i] + B6 * k6[i]);
      f(t + h, ynew, k7);
      stats.rhs_evaluations += 6;

      for (std::size_t i = 0; i < n; ++i)
        yerr[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                       E6 * k6[i] + E7 * k7[i]);
      double err = scaled_rms(yerr, y, ynew, options.abs_tol, options.rel_tol);
      if (!std::isfinite(err)) err = 1e10;  // force rejection and shrink

      if (err <= 1.0) {
        t = clamped ? ts : t + h;
        y.swap(ynew);
        k1.swap(k7);
        ++stats.steps_accepted;
        if (!clamped) {
          const double factor =
              err == 0.0 ? kMaxFactor
                         : std::clamp(kSafety * std::pow(err, -0.2),
                                      kMinFactor, kMaxFactor);
          h_ctrl = std::min(h * factor, options.max_step);
        }
        // A clamped step keeps the controller's estimate: its tiny error
        // says nothing about the error at full step size.
      } else {
        ++stats.steps_rejected;
        const double factor =
            std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, 1.0);
        h_ctrl = h * factor;
      }
    }
    on_sample(ts, y);
  }
  return stats;
}

}  // namespace pbgl
