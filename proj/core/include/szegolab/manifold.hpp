#pragma once

#include <array>
#include <vector>

#include "szegolab/state.hpp"

namespace szegolab {

/// Point of the rank-one invariant manifold L(1):
///   a_0 = b,  a_n = (b p + a) p^{n-1}  for n >= 1,  |p| < 1.
struct ManifoldState {
  Complex b{};
  Complex a{};
  Complex p{};
};

struct PoleTerm {
  Complex c{};
  Complex p{};
};

/// Simple-pole parametrization of L(D):
///   a_0 = b + sum_k c_k,  a_n = sum_k c_k p_k^n  for n >= 1.
struct LDParams {
  Complex b{};
  std::vector<PoleTerm> poles;
};

ModeState lift_l1(const ManifoldState& ms, int nmax);
ModeState lift_ld(const LDParams& params, int nmax);

struct ReducedRates {
  Complex db{}, da{}, dp{};
};

/// Reduced beta-family equations of motion on L(1):
///   i p' = (N - beta(1-|p|^2)E) p + a conj(b)
///   i b' = (N+E) b + E a conj(p)
///   i a' = (N - beta E) a - beta E |p|^2 b p
ReducedRates reduced_rhs(double beta, const ManifoldState& ms);

struct ReducedCharges {
  double N = 0, E = 0, S = 0, H = 0;
};

/// E = |bp+a|^2/(1-x)^2, N = |b|^2 + (1-x)E, x = |p|^2,
/// S = (N+E)x + (beta/2)E x^2 + (a conj(b p) + conj(a) b p),
/// H = (N^2 + 2NE - (2+beta)E^2 + 2ES)/4.
ReducedCharges reduced_charges(double beta, const ManifoldState& ms);

enum class Regime { Stationary, Periodic, InfiniteTimeBlowup, Invalid };

std::string to_string(Regime r);

struct EffectivePotential {
  std::array<double, 5> c{};  // xdot^2 + c0 + c1 x + ... + c4 x^4 = 0
  double beta = 0, N = 0, E = 0, S = 0;
  std::vector<Complex> roots;       // quartic roots, companion + Newton polish
  Regime regime = Regime::Invalid;  // assigned by classify()

  double value(double x) const;
  double derivative(double x) const;
  /// Number of roots within the coincidence tolerance of x.
  int multiplicity(double x) const;
  double coefficient_scale() const;
};

/// Root-coincidence tolerance, relative to the coefficient scale.
inline constexpr double kRootTolerance = 1e-9;

EffectivePotential veff(double beta, double N, double E, double S);

/// Determines the dynamical regime of the zero-energy motion started at x0.
/// Throws "dynamically inaccessible" when V_eff(x0) is significantly positive.
Regime classify(EffectivePotential& pot, double x0);

/// Blow-up family: the a completing (b, p, lambda) so that V_eff(1) = 0,
/// i.e. (2+beta)E - 2(N+S) = 0.  Requires beta > 0, 0 < |p| < 1, b != 0.
Complex blowup_family(double beta, Complex b, Complex p, double lambda);

/// The same formula continued to beta <= 0 through the principal complex
/// square root; used by phase-diagram sweeps (no V_eff(1)=0 root there).
Complex family_seed(double beta, Complex b, Complex p, double lambda);

enum class LambdaBranch { Zero, Pi };

/// Polynomial-growth threshold x0 = (sqrt(beta)-4)^2/(beta-8);
/// valid beta >= 16 on the Zero branch, beta in (9, 16] on the Pi branch.
double threshold_x0(double beta, LambdaBranch branch);

/// Closed-form x(t) for family potentials (double root at x=1): cosh branch
/// in the blow-up regime, cos branch in the periodic regime, rational branch
/// at the polynomial threshold.  x(0) = x0; interior x0 takes the phase with
/// xdot(0) >= 0.  classify() must have run on pot.
double analytic_x(const EffectivePotential& pot, double x0, double t);

/// omega = sqrt(-c4 (1-c)(1-x_min)) of the cosh branch.
double blowup_rate(const EffectivePotential& pot);

/// ctilde = c4 (1-x0)^2 / 4 of the rational branch x = (ct^2+x0)/(ct^2+1).
double threshold_curvature(const EffectivePotential& pot, double x0);

/// Sobolev growth exponent (2s-1) * omega / 2; requires s > 1/2.
double growth_rate(double s, double omega);

/// Stationary cubic-Szego solution u = e^{-it} (conj(p) - z)/(1 - p z):
///   a_0 = e^{-it} conj(p),  a_n = e^{-it} (|p|^2 - 1) p^{n-1}.
ModeState stationary_szego(Complex p, double t, int nmax);

}  // namespace szegolab
