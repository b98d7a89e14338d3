#include "szegolab/analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "szegolab/io.hpp"

namespace szegolab {

namespace {

// least-squares polynomial fit y ~ sum_k c_k x^k
Eigen::VectorXd polyfit(const std::vector<double>& x, const std::vector<double>& y,
                        int degree) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    double p = 1;
    for (int k = 0; k <= degree; ++k) {
      A(i, k) = p;
      p *= x[static_cast<std::size_t>(i)];
    }
    b(i) = y[static_cast<std::size_t>(i)];
  }
  return A.colPivHouseholderQr().solve(b);
}

}  // namespace

TailFit tail_fit(const ModeState& s, double floor) {
  const int N = s.nmax();
  const int lo = std::max(1, N / 4);
  const int hi = N / 2;
  std::vector<double> ln, lln, nn;
  for (int n = lo; n <= hi && n < N; ++n) {
    const double a = std::abs(s[n]);
    if (a <= floor) continue;
    ln.push_back(std::log(a));
    lln.push_back(std::log(static_cast<double>(n)));
    nn.push_back(static_cast<double>(n));
  }
  if (ln.size() < 8) throw DiagnosticError("tail not resolved");

  // log|a_n| = log c - gamma log n - rho n
  const int m = static_cast<int>(ln.size());
  Eigen::MatrixXd A(m, 3);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = lln[static_cast<std::size_t>(i)];
    A(i, 2) = nn[static_cast<std::size_t>(i)];
    b(i) = ln[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);

  TailFit fit;
  fit.c = std::exp(sol(0));
  fit.gamma = -sol(1);
  fit.rho = -sol(2);
  fit.n_lo = static_cast<int>(nn.front());
  fit.n_hi = static_cast<int>(nn.back());
  const Eigen::VectorXd res = A * sol - b;
  fit.rms_log_residual = std::sqrt(res.squaredNorm() / m);
  return fit;
}

BlowupExtrapolation blowup_extrapolate(std::span<const double> times,
                                       std::span<const double> rhos) {
  if (times.size() != rhos.size()) throw std::invalid_argument("length mismatch");
  const std::size_t n = times.size();
  const std::size_t window = std::max<std::size_t>(5, n / 4);
  if (n < window) throw std::invalid_argument("need at least 5 samples");
  const std::size_t start = n - window;

  for (std::size_t i = start + 1; i < n; ++i)
    if (rhos[i] >= rhos[i - 1]) throw DiagnosticError("no blow-up trend");

  std::vector<double> t(times.begin() + static_cast<long>(start), times.end());
  std::vector<double> r(rhos.begin() + static_cast<long>(start), rhos.end());

  BlowupExtrapolation ex;
  {
    const Eigen::VectorXd c = polyfit(t, r, 1);
    ex.t_star_linear = -c(0) / c(1);
  }
  {
    const Eigen::VectorXd c = polyfit(t, r, std::min<int>(2, static_cast<int>(t.size()) - 1));
    // smallest real root beyond the window
    double root = ex.t_star_linear;
    if (c.size() == 3 && std::abs(c(2)) > 1e-300) {
      const double disc = c(1) * c(1) - 4 * c(2) * c(0);
      if (disc >= 0) {
        const double r1 = (-c(1) - std::sqrt(disc)) / (2 * c(2));
        const double r2 = (-c(1) + std::sqrt(disc)) / (2 * c(2));
        root = std::numeric_limits<double>::quiet_NaN();
        for (double cand : {std::min(r1, r2), std::max(r1, r2)})
          if (cand > t.back() && std::isnan(root)) root = cand;
        if (std::isnan(root)) root = ex.t_star_linear;
      }
    }
    ex.t_star_quadratic = root;
  }
  ex.lo = std::min(ex.t_star_linear, ex.t_star_quadratic);
  ex.hi = std::max(ex.t_star_linear, ex.t_star_quadratic);
  ex.t_star = 0.5 * (ex.lo + ex.hi);
  return ex;
}

double growth_rate_fit(const Trajectory& traj, double s, double t_lo, double t_hi,
                       GrowthLaw law) {
  if (s <= 0.5) throw std::invalid_argument("no growth predicted");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t_lo || t > t_hi) continue;
    const double norm = sobolev_norm(traj.states[i], s);
    if (norm <= 0) continue;
    if (law == GrowthLaw::PowerLaw) {
      if (t <= 0) continue;
      x.push_back(std::log(t));
    } else {
      x.push_back(t);
    }
    y.push_back(std::log(norm));
  }
  if (x.size() < 5) throw DiagnosticError("insufficient checkpoints in window");
  return polyfit(x, y, 1)(1);
}

double asymptotic_rate(std::span<const double> t, std::span<const double> logf,
                       std::span<const double> eps, int degree) {
  if (t.size() != logf.size() || t.size() != eps.size())
    throw std::invalid_argument("length mismatch");
  std::vector<double> em, slope;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double dt = t[i] - t[i - 1];
    if (dt <= 0) throw std::invalid_argument("times must increase");
    slope.push_back((logf[i] - logf[i - 1]) / dt);
    em.push_back(0.5 * (eps[i] + eps[i - 1]));
  }
  if (static_cast<int>(slope.size()) < degree + 2)
    throw std::invalid_argument("not enough samples for the requested degree");
  return polyfit(em, slope, degree)(0);
}

}  // namespace szegolab
