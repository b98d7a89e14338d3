#pragma once

#include <span>

#include "szegolab/flow.hpp"
#include "szegolab/state.hpp"

namespace szegolab {

/// Spectrum-tail model |a_n| ~ c n^{-gamma} e^{-rho n} fitted by least squares
/// of log|a_n| against (1, log n, n) over the window [n_lo, n_hi].
struct TailFit {
  double c = 0;
  double gamma = 0;
  double rho = 0;
  int n_lo = 0;
  int n_hi = 0;
  double rms_log_residual = 0;
};

/// Fit window defaults to modes in [Nmax/4, Nmax/2] above the floor; throws
/// "tail not resolved" when fewer than 8 such modes exist.
TailFit tail_fit(const ModeState& s, double floor = 1e-13);

struct BlowupExtrapolation {
  double t_star = 0;            // midpoint of the bracket
  double t_star_linear = 0;     // zero crossing of the linear fit
  double t_star_quadratic = 0;  // zero crossing of the quadratic fit
  double lo = 0, hi = 0;        // bracket; disagreement of the two fits
};

/// Extrapolates rho(t) to zero over the last 25% of the samples (at least 5).
/// Throws "no blow-up trend" unless rho is decreasing over the final window.
BlowupExtrapolation blowup_extrapolate(std::span<const double> times,
                                       std::span<const double> rhos);

enum class GrowthLaw { Exponential, PowerLaw };

/// Least-squares slope of log||u||_{H^s} against t (Exponential) or log t
/// (PowerLaw) over checkpoints with t in [t_lo, t_hi].  Needs >= 5 checkpoints.
double growth_rate_fit(const Trajectory& traj, double s, double t_lo, double t_hi,
                       GrowthLaw law = GrowthLaw::Exponential);

/// Richardson-style asymptote of a measured rate: local slopes
/// dlogf/dt between consecutive samples are regressed on eps (a small
/// parameter that tends to 0, e.g. 1-x) with a degree-`degree` polynomial;
/// returns the eps -> 0 intercept.
double asymptotic_rate(std::span<const double> t, std::span<const double> logf,
                       std::span<const double> eps, int degree = 3);

}  // namespace szegolab
