#include "szegolab/dopri5.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace szegolab {

namespace {

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// y5 - y4 = h * sum e_i k_i
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller constants as in Hairer's dopri5.
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2, kFacMax = 10.0;

using Vec = std::vector<Complex>;

double error_norm(const Vec& err, const Vec& y0, const Vec& y1, double atol, double rtol) {
  double sum = 0;
  const std::size_t n = err.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = std::abs(err[i]) / sc;
    sum += q * q;
  }
  return std::sqrt(sum / std::max<std::size_t>(1, n));
}

double scaled_rms(const Vec& v, const Vec& ref, double atol, double rtol) {
  double sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double sc = atol + rtol * std::abs(ref[i]);
    const double q = std::abs(v[i]) / sc;
    sum += q * q;
  }
  return std::sqrt(sum / std::max<std::size_t>(1, v.size()));
}

// Standard starting-step heuristic: scale estimate plus one Euler probe.
double initial_step(const OdeRhs& f, const Vec& y, const Vec& f0, double t0,
                    double t1, double atol, double rtol) {
  const double d0 = scaled_rms(y, y, atol, rtol);
  const double d1 = scaled_rms(f0, y, atol, rtol);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, t1 - t0);
  Vec y1(y.size()), f1(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y1[i] = y[i] + h0 * f0[i];
  f(t0 + h0, y1, f1);
  double d2 = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double sc = atol + rtol * std::abs(y[i]);
    const double q = std::abs(f1[i] - f0[i]) / sc;
    d2 += q * q;
  }
  d2 = std::sqrt(d2 / std::max<std::size_t>(1, y.size())) / h0;
  double h1;
  if (std::max(d1, d2) <= 1e-15)
    h1 = std::max(1e-6, h0 * 1e-3);
  else
    h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
  return std::min({100 * h0, h1, t1 - t0});
}

}  // namespace

Dopri5Result dopri5_integrate(const OdeRhs& f, Vec& y, double t0, double t1,
                              const Dopri5Options& opts, const StepObserver& observer) {
  Dopri5Result res;
  res.t = t0;
  if (t1 <= t0) {
    res.suggested_h = opts.initial_step;
    return res;
  }
  const std::size_t n = y.size();
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);

  f(t0, y, k1);
  double h = opts.initial_step > 0
                 ? opts.initial_step
                 : initial_step(f, y, k1, t0, t1, opts.abs_tol, opts.rel_tol);
  h = std::min(h, opts.max_step);
  double t = t0;
  double err_old = 1e-4;

  while (t < t1) {
    const double sliver = 16.0 * std::numeric_limits<double>::epsilon() *
                          std::max(1.0, std::abs(t1));
    if (t1 - t < sliver) {
      t = t1;
      break;
    }
    bool clipped = false;
    double h_use = h;
    if (h_use >= t1 - t) {
      h_use = t1 - t;
      clipped = true;
    }
    if (h_use < sliver) {
      res.underflow = true;
      res.t = t;
      res.suggested_h = h;
      return res;
    }

    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h_use * a21 * k1[i];
    f(t + c2 * h_use, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h_use * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h_use, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h_use * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h_use, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h_use * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h_use, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h_use * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                a65 * k5[i]);
    f(t + h_use, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h_use * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                b6 * k6[i]);
    f(t + h_use, ynew, k7);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h_use * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * k7[i]);

    const double en = error_norm(err, y, ynew, opts.abs_tol, opts.rel_tol);
    if (en <= 1.0) {
      t = clipped ? t1 : t + h_use;
      y.swap(ynew);
      k1.swap(k7);  // FSAL
      ++res.n_accepted;
      double fac = kSafety * std::pow(std::max(en, 1e-16), -kExpo) * std::pow(err_old, kBeta);
      fac = std::clamp(fac, kFacMin, kFacMax);
      err_old = std::max(en, 1e-4);
      // grow the controller step from the unclipped value so a checkpoint clip
      // does not shrink subsequent segments
      h = std::min((clipped ? std::max(h, h_use) : h_use) * fac, opts.max_step);
      if (observer && observer(t, y) == StepControl::Stop) {
        res.t = t;
        res.suggested_h = h;
        return res;
      }
    } else {
      double fac = kSafety * std::pow(en, -kExpo);
      h = h_use * std::clamp(fac, kFacMin, 1.0);
      ++res.n_rejected;
      // k1 still holds f(t, y) after a rejection
    }
  }
  res.t = t;
  res.suggested_h = h;
  return res;
}

}  // namespace szegolab
