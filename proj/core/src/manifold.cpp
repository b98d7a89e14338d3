#include "szegolab/manifold.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace szegolab {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Stationary: return "Stationary";
    case Regime::Periodic: return "Periodic";
    case Regime::InfiniteTimeBlowup: return "InfiniteTimeBlowup";
    case Regime::Invalid: return "Invalid";
  }
  throw std::logic_error("unknown regime");
}

ModeState lift_l1(const ManifoldState& ms, int nmax) {
  if (std::abs(ms.p) >= 1.0) throw std::invalid_argument("|p| must be < 1");
  if (nmax < 2) throw std::invalid_argument("nmax must be >= 2");
  ModeState s(nmax);
  s[0] = ms.b;
  const Complex B = ms.b * ms.p + ms.a;
  Complex pw{1.0, 0.0};
  for (int n = 1; n < nmax; ++n) {
    s[n] = B * pw;
    pw *= ms.p;
  }
  return s;
}

ModeState lift_ld(const LDParams& params, int nmax) {
  if (nmax < 2) throw std::invalid_argument("nmax must be >= 2");
  for (std::size_t i = 0; i < params.poles.size(); ++i) {
    if (std::abs(params.poles[i].p) >= 1.0) throw std::invalid_argument("|p_k| must be < 1");
    for (std::size_t j = i + 1; j < params.poles.size(); ++j)
      if (params.poles[i].p == params.poles[j].p)
        throw std::invalid_argument("coincident poles");
  }
  ModeState s(nmax);
  s[0] = params.b;
  for (const PoleTerm& pt : params.poles) {
    s[0] += pt.c;
    Complex pw = pt.p;
    for (int n = 1; n < nmax; ++n) {
      s[n] += pt.c * pw;
      pw *= pt.p;
    }
  }
  return s;
}

ReducedRates reduced_rhs(double beta, const ManifoldState& ms) {
  const ReducedCharges rc = reduced_charges(beta, ms);
  const double x = std::norm(ms.p);
  const Complex mi{0, -1};
  ReducedRates r;
  r.dp = mi * ((rc.N - beta * (1.0 - x) * rc.E) * ms.p + ms.a * std::conj(ms.b));
  r.db = mi * ((rc.N + rc.E) * ms.b + rc.E * ms.a * std::conj(ms.p));
  r.da = mi * ((rc.N - beta * rc.E) * ms.a - beta * rc.E * x * ms.b * ms.p);
  return r;
}

ReducedCharges reduced_charges(double beta, const ManifoldState& ms) {
  const double x = std::norm(ms.p);
  if (x >= 1.0) throw std::invalid_argument("|p| must be < 1");
  ReducedCharges rc;
  const Complex B = ms.b * ms.p + ms.a;
  rc.E = std::norm(B) / ((1.0 - x) * (1.0 - x));
  rc.N = std::norm(ms.b) + (1.0 - x) * rc.E;
  const double P = 2.0 * std::real(ms.a * std::conj(ms.b) * std::conj(ms.p));
  rc.S = (rc.N + rc.E) * x + 0.5 * beta * rc.E * x * x + P;
  rc.H = 0.25 * (rc.N * rc.N + 2.0 * rc.N * rc.E - (2.0 + beta) * rc.E * rc.E +
                 2.0 * rc.E * rc.S);
  return rc;
}

// ---------------------------------------------------------------------------

double EffectivePotential::value(double x) const {
  return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
}

double EffectivePotential::derivative(double x) const {
  return c[1] + x * (2 * c[2] + x * (3 * c[3] + x * 4 * c[4]));
}

double EffectivePotential::coefficient_scale() const {
  double s = 0;
  for (double ci : c) s = std::max(s, std::abs(ci));
  return s;
}

int EffectivePotential::multiplicity(double x) const {
  // An m-fold root scatters by O(coeff_err^{1/m}) under rounding; 1e-4 covers
  // triple roots at double precision while keeping distinct roots apart.
  const double tol = 1e-4;
  int count = 0;
  for (const Complex& r : roots)
    if (std::abs(r - Complex{x, 0.0}) <= tol * std::max(1.0, std::abs(x))) ++count;
  return count;
}

namespace {

// Roots by companion-matrix eigenvalues plus one Newton polish per root.
std::vector<Complex> polynomial_roots(const std::array<double, 5>& c, double scale) {
  int deg = 4;
  while (deg > 0 && std::abs(c[deg]) <= 1e-14 * scale) --deg;
  std::vector<Complex> roots;
  if (deg == 0) return roots;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  for (int i = 0; i < deg; ++i) {
    Complex r{es.eigenvalues()[i].real(), es.eigenvalues()[i].imag()};
    // Newton polish
    for (int it = 0; it < 2; ++it) {
      Complex v{}, d{};
      for (int k = deg; k >= 0; --k) {
        d = d * r + v;
        v = v * r + c[static_cast<std::size_t>(k)];
      }
      if (std::abs(d) > 1e-300) {
        const Complex step = v / d;
        if (std::abs(step) < 0.5 * std::max(1.0, std::abs(r))) r -= step;
      }
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

std::vector<double> real_roots(const EffectivePotential& pot) {
  std::vector<double> rr;
  const double tol = std::sqrt(kRootTolerance);
  for (const Complex& r : pot.roots)
    if (std::abs(r.imag()) <= tol * std::max(1.0, std::abs(r))) rr.push_back(r.real());
  std::sort(rr.begin(), rr.end());
  return rr;
}

double charge_scale(const EffectivePotential& pot) {
  const double q = pot.N + pot.E + std::abs(pot.S);
  return std::max(1e-30, q * q);
}

}  // namespace

EffectivePotential veff(double beta, double N, double E, double S) {
  if (N < 0 || E < 0) throw std::invalid_argument("N and E must be nonnegative");
  EffectivePotential pot;
  pot.beta = beta;
  pot.N = N;
  pot.E = E;
  pot.S = S;
  const double h = N - 3 * E;
  pot.c[0] = S * S;
  pot.c[1] = 2 * S * h - 4 * E * (N - E);
  pot.c[2] = h * h + (4 - beta) * E * S - 4 * E * (3 * E - 2 * N);
  pot.c[3] = -beta * E * h;
  pot.c[4] = 0.25 * (4 - beta) * (4 - beta) * E * E - 4 * E * E;
  pot.roots = polynomial_roots(pot.c, std::max(pot.coefficient_scale(), charge_scale(pot)));
  return pot;
}

Regime classify(EffectivePotential& pot, double x0) {
  if (x0 < 0 || x0 >= 1) throw std::invalid_argument("x0 must lie in [0, 1)");
  const double scale = std::max(pot.coefficient_scale(), 1e-30);
  const double eps_v = kRootTolerance * std::max(scale, charge_scale(pot));

  // identically vanishing potential: x frozen (e.g. the beta=0 stationary family)
  if (pot.coefficient_scale() <= kRootTolerance * charge_scale(pot)) {
    pot.regime = Regime::Stationary;
    return pot.regime;
  }

  if (pot.value(x0) > eps_v)
    throw std::invalid_argument("dynamically inaccessible");

  const double rtol = 1e-4;  // matches the root-cluster tolerance
  const std::vector<double> rr = real_roots(pot);

  // double root at x0 with V >= 0 on both sides: frozen point
  if (pot.multiplicity(x0) >= 2) {
    const double delta = 1e-3 * std::max(1.0, std::abs(x0));
    if (pot.value(x0 - delta) >= -eps_v && pot.value(x0 + delta) >= -eps_v) {
      pot.regime = Regime::Stationary;
      return pot.regime;
    }
  }

  // Probe point inside the accessible well.  Interior x0 probes itself; a
  // turning-point x0 probes the downhill side of V.
  double probe = x0;
  if (pot.value(x0) >= -eps_v) {
    const double dv = pot.derivative(x0);
    const double dir = dv < 0 ? 1.0 : -1.0;
    double gap = 0.5;  // half distance to the nearest other root in that direction
    for (double r : rr) {
      const double d = (r - x0) * dir;
      if (d > rtol) gap = std::min(gap, d / 2);
    }
    probe = x0 + dir * gap;
    if (pot.value(probe) > eps_v) {
      pot.regime = Regime::Invalid;  // no adjoining well
      return pot.regime;
    }
  }

  double r_lo = -std::numeric_limits<double>::infinity();
  double r_hi = std::numeric_limits<double>::infinity();
  for (double r : rr) {
    if (r <= probe) r_lo = std::max(r_lo, r);
    if (r >= probe) r_hi = std::min(r_hi, r);
  }
  if (!std::isfinite(r_hi)) {
    pot.regime = Regime::Invalid;  // well unbounded to the right
    return pot.regime;
  }

  if (std::abs(r_hi - 1.0) <= rtol && pot.multiplicity(1.0) >= 2) {
    pot.regime = Regime::InfiniteTimeBlowup;
    return pot.regime;
  }
  if (r_hi < 1.0 - rtol && std::isfinite(r_lo) && r_lo >= -rtol) {
    pot.regime = Regime::Periodic;
    return pot.regime;
  }
  pot.regime = Regime::Invalid;
  return pot.regime;
}

Complex family_seed(double beta, Complex b, Complex p, double lambda) {
  const double x = std::norm(p);
  if (x <= 0.0 || x >= 1.0) throw std::invalid_argument("need 0 < |p| < 1");
  const double den = (2.0 - beta) * x - beta;
  if (std::abs(den) < 1e-14 * (std::abs(beta) + x + 1.0))
    throw std::invalid_argument("parametrization singular");
  const Complex sq = std::sqrt(Complex{2.0 * beta, 0.0});
  const Complex num = Complex{(1.0 + x) * beta - 2.0, 0.0} +
                      sq * std::polar(1.0, lambda) * (1.0 - x) * std::sqrt(1.0 + 1.0 / x);
  return b * p * num / den;
}

Complex blowup_family(double beta, Complex b, Complex p, double lambda) {
  if (beta <= 0.0) throw std::invalid_argument("no nontrivial blow-up family");
  if (b == Complex{}) throw std::invalid_argument("b must be nonzero");
  return family_seed(beta, b, p, lambda);
}

double threshold_x0(double beta, LambdaBranch branch) {
  const bool valid = branch == LambdaBranch::Zero ? beta >= 16.0
                                                  : (beta > 9.0 && beta <= 16.0);
  if (!valid)
    throw std::invalid_argument("no polynomial-growth threshold on this branch");
  const double s = std::sqrt(beta) - 4.0;
  return s * s / (beta - 8.0);
}

namespace {

// quadratic factor of V after dividing out (1-x)^2
std::array<double, 3> divide_out_double_root_at_one(const EffectivePotential& pot) {
  // synthetic division by (x-1) twice
  std::array<double, 4> q1{};
  double carry = pot.c[4];
  for (int i = 3; i >= 0; --i) {
    q1[static_cast<std::size_t>(i)] = carry;
    carry = pot.c[static_cast<std::size_t>(i)] + carry;
  }
  std::array<double, 3> q2{};
  carry = q1[3];
  for (int i = 2; i >= 0; --i) {
    q2[static_cast<std::size_t>(i)] = carry;
    carry = q1[static_cast<std::size_t>(i)] + carry;
  }
  return q2;  // q2[0] + q2[1] x + q2[2] x^2
}

struct FamilyRoots {
  double r_lo = 0, r_hi = 0;  // roots of the quadratic factor, ascending
};

FamilyRoots family_roots(const EffectivePotential& pot) {
  if (pot.multiplicity(1.0) < 2)
    throw std::invalid_argument("potential lacks the family double root at x=1");
  const auto q = divide_out_double_root_at_one(pot);
  if (std::abs(q[2]) < 1e-13 * std::max({std::abs(q[0]), std::abs(q[1]), 1e-30})) {
    if (std::abs(q[1]) < 1e-300) throw std::invalid_argument("degenerate family factor");
    const double r = -q[0] / q[1];
    return {r, r};
  }
  const double disc = q[1] * q[1] - 4.0 * q[2] * q[0];
  if (disc < 0) throw std::invalid_argument("family quadratic has no real roots");
  const double sd = std::sqrt(disc);
  double r1 = (-q[1] - sd) / (2 * q[2]);
  double r2 = (-q[1] + sd) / (2 * q[2]);
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace

double blowup_rate(const EffectivePotential& pot) {
  const FamilyRoots fr = family_roots(pot);
  // in the blow-up regime the motion runs from the turning point nearest 1
  const double xmin = fr.r_hi < 1.0 ? fr.r_hi : fr.r_lo;
  const double c = fr.r_hi < 1.0 ? fr.r_lo : fr.r_hi;
  const double w2 = -pot.c[4] * (1.0 - c) * (1.0 - xmin);
  if (w2 <= 0) throw std::invalid_argument("not a blow-up potential");
  return std::sqrt(w2);
}

double threshold_curvature(const EffectivePotential& pot, double x0) {
  const double ct = pot.c[4] * (1.0 - x0) * (1.0 - x0) / 4.0;
  if (ct <= 0) throw std::invalid_argument("not a polynomial-threshold potential");
  return ct;
}

double analytic_x(const EffectivePotential& pot, double x0, double t) {
  switch (pot.regime) {
    case Regime::Invalid:
      throw std::invalid_argument("invalid regime has no closed form");
    case Regime::Stationary:
      return x0;
    case Regime::InfiniteTimeBlowup: {
      if (pot.multiplicity(1.0) >= 3) {
        // polynomial threshold: x = (ct^2 + x0)/(ct^2 + 1)
        const double ct = threshold_curvature(pot, x0);
        return (ct * t * t + x0) / (ct * t * t + 1.0);
      }
      const FamilyRoots fr = family_roots(pot);
      const double xmin = fr.r_hi < 1.0 ? fr.r_hi : fr.r_lo;
      const double c = fr.r_hi < 1.0 ? fr.r_lo : fr.r_hi;
      const double omega = blowup_rate(pot);
      const double A = c - xmin;
      const double B = c + xmin - 2.0 * c * xmin;
      const double C = c + xmin - 2.0;
      // phase from x(0) = x0; cosh >= 1 guarded against rounding
      const double ch0 = std::max(1.0, (B + x0 * C) / (A * (1.0 - x0)));
      const double phi = std::acosh(ch0);
      const double ch = std::cosh(omega * t + phi);
      return (A * ch - B) / (A * ch + C);
    }
    case Regime::Periodic: {
      const FamilyRoots fr = family_roots(pot);
      const double e1 = fr.r_lo, e2 = fr.r_hi;  // well edges
      const double w2 = std::abs(pot.c[4] * (1.0 - e1) * (1.0 - e2));
      const double omega = std::sqrt(w2);
      const double A = e2 - e1;  // cos form built on (x0-slot=e1, c-slot=e2)
      const double B = e2 + e1 - 2.0 * e2 * e1;
      const double C = e2 + e1 - 2.0;
      const double co0 = std::clamp((B + x0 * C) / (A * (1.0 - x0)), -1.0, 1.0);
      const double phi = std::acos(co0);
      const double co = std::cos(omega * t + phi);
      return (A * co - B) / (A * co + C);
    }
  }
  throw std::logic_error("unknown regime");
}

double growth_rate(double s, double omega) {
  if (s <= 0.5) throw std::invalid_argument("no growth predicted");
  if (omega <= 0) throw std::invalid_argument("omega must be positive");
  return (2.0 * s - 1.0) * omega / 2.0;
}

ModeState stationary_szego(Complex p, double t, int nmax) {
  if (std::abs(p) >= 1.0) throw std::invalid_argument("|p| must be < 1");
  if (nmax < 2) throw std::invalid_argument("nmax must be >= 2");
  ModeState s(nmax);
  const Complex phase = std::polar(1.0, -t);
  s[0] = phase * std::conj(p);
  const Complex lead = phase * (std::norm(p) - 1.0);
  Complex pw{1.0, 0.0};
  for (int n = 1; n < nmax; ++n) {
    s[n] = lead * pw;
    pw *= p;
  }
  return s;
}

}  // namespace szegolab
