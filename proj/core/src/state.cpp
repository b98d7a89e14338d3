#include "szegolab/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "szegolab/kernels.hpp"

namespace szegolab {

bool ModeState::finite() const {
  for (const Complex& a : amp)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  return true;
}

double particle_number(const ModeState& s) {
  double sum = 0;
  for (const Complex& a : s.amp) sum += std::norm(a);
  return sum;
}

double energy(const ModeState& s) {
  double sum = 0;
  for (int n = 0; n < s.nmax(); ++n) sum += n * std::norm(s[n]);
  return sum;
}

double wiener_norm(const ModeState& s) {
  double sum = 0;
  for (const Complex& a : s.amp) sum += std::abs(a);
  return sum;
}

double sobolev_norm(const ModeState& s, double sexp) {
  double sum = 0;
  for (int n = 0; n < s.nmax(); ++n)
    sum += std::pow(1.0 + n, 2.0 * sexp) * std::norm(s[n]);
  return std::sqrt(sum);
}

double tail_mass(const ModeState& s) {
  const int n = s.nmax();
  const int count = std::max(1, n / 10);
  double sum = 0;
  for (int i = n - count; i < n; ++i) sum += std::norm(s[i]);
  return sum;
}

namespace {

// Quadratic piece generated by the linear deformation: H_lin = eff_alpha/2 |a_0|^2.
double linear_hamiltonian(const KernelSpec& spec, const ModeState& s) {
  if (!spec.has_linear_term() || s.nmax() == 0) return 0.0;
  const double ea = spec.effective_alpha(particle_number(s), energy(s));
  return 0.5 * ea * std::norm(s[0]);
}

// sum_j kappa_j |conv(a,a)_j|^2 with kappa = 1 or (j+1)^G, O(N^2).
double quartic_sum(const ModeState& s, double G) {
  const int n = s.nmax();
  double total = 0;
  for (int j = 0; j <= 2 * n - 2; ++j) {
    Complex w{};
    const int klo = std::max(0, j - n + 1);
    const int khi = std::min(j, n - 1);
    for (int k = klo; k <= khi; ++k) w += s[k] * s[j - k];
    const double kappa = (G == 0.0) ? 1.0 : std::pow(j + 1.0, G);
    total += kappa * std::norm(w);
  }
  return total;
}

ModeState zeroed_mode(const ModeState& s, int j) {
  ModeState z = s;
  if (j < z.nmax()) z[j] = 0;
  return z;
}

ModeState weighted(const ModeState& s, double G) {
  ModeState w = s;
  for (int n = 0; n < w.nmax(); ++n) w[n] *= std::pow(n + 1.0, G);
  return w;
}

}  // namespace

double hamiltonian(const KernelSpec& spec, const ModeState& s) {
  if (s.nmax() == 0) return 0.0;
  double quartic = 0;
  switch (spec.family) {
    case KernelFamily::Szego:
      quartic = quartic_sum(s, 0.0);
      break;
    case KernelFamily::Truncated:
      quartic = quartic_sum(s, 0.0) - quartic_sum(zeroed_mode(s, 0), 0.0);
      break;
    case KernelFamily::Beta:
      quartic = quartic_sum(s, 0.0) - spec.beta * quartic_sum(zeroed_mode(s, 0), 0.0);
      break;
    case KernelFamily::ModeAnchored:
      quartic = quartic_sum(s, 0.0) - spec.beta * quartic_sum(zeroed_mode(s, spec.anchor), 0.0);
      break;
    case KernelFamily::PowerProduct: {
      const ModeState w = weighted(s, spec.G);
      quartic = quartic_sum(w, 0.0);
      if (spec.truncated) quartic -= quartic_sum(zeroed_mode(w, 0), 0.0);
      break;
    }
    case KernelFamily::PowerSum:
      quartic = quartic_sum(s, spec.G);
      if (spec.truncated) quartic -= quartic_sum(zeroed_mode(s, 0), spec.G);
      break;
    case KernelFamily::Extended:
      quartic = quartic_sum(s, 0.0) - spec.beta * quartic_sum(zeroed_mode(s, 0), 0.0);
      quartic += (spec.gamma - 1.0) * std::norm(s[0]) * std::norm(s[0]);
      break;
  }
  return 0.25 * quartic + linear_hamiltonian(spec, s);
}

double hamiltonian_direct(const KernelSpec& spec, const ModeState& s) {
  const int N = s.nmax();
  Complex total{};
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m) {
      const int t = n + m;
      const int klo = std::max(0, t - N + 1);
      const int khi = std::min(t, N - 1);
      for (int k = klo; k <= khi; ++k) {
        const int l = t - k;
        const double C = coupling(spec, n, m, k, l);
        if (C == 0.0) continue;
        total += C * std::conj(s[n] * s[m]) * s[k] * s[l];
      }
    }
  return 0.25 * total.real() + linear_hamiltonian(spec, s);
}

ChargeSet charges(const KernelSpec& spec, const ModeState& s,
                  std::span<const double> sobolev_list,
                  std::optional<double> l1_beta) {
  ChargeSet cs;
  cs.N = particle_number(s);
  cs.E = energy(s);
  cs.H = hamiltonian(spec, s);
  cs.wiener = wiener_norm(s);
  cs.tail = tail_mass(s);
  cs.sobolev.reserve(sobolev_list.size());
  for (double sv : sobolev_list) cs.sobolev.emplace_back(sv, sobolev_norm(s, sv));
  if (l1_beta && cs.E > 1e-14) {
    const double beta = *l1_beta;
    cs.S = (4.0 * cs.H - cs.N * cs.N - 2.0 * cs.N * cs.E + (2.0 + beta) * cs.E * cs.E) /
           (2.0 * cs.E);
  }
  return cs;
}

PositionProfile position_profile(const ModeState& s, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
  PositionProfile prof;
  prof.theta.resize(grid_size);
  prof.u.resize(grid_size);
  prof.v.resize(grid_size);
  const double step = 2.0 * std::numbers::pi / grid_size;
  for (int j = 0; j < grid_size; ++j) {
    const double theta = j * step;
    prof.theta[j] = theta;
    // Horner evaluation of sum a_n z^n at z = e^{i theta}.
    const Complex z = std::polar(1.0, theta);
    Complex u{};
    for (int n = s.nmax() - 1; n >= 0; --n) u = u * z + s[n];
    prof.u[j] = u;
    prof.v[j] = (s.nmax() > 0) ? u - s[0] : Complex{};
    const double av = std::abs(prof.v[j]);
    if (av > prof.v_max) {
      prof.v_max = av;
      prof.v_max_theta = theta;
    }
  }
  return prof;
}

ModeState restrict_residue(const ModeState& s, int p, int q) {
  if (q <= 0 || p < 0 || p >= q) throw std::invalid_argument("need 0 <= p < q");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be mutually prime");
  ModeState out = s;
  for (int n = 0; n < out.nmax(); ++n)
    if (n % q != p) out[n] = 0;
  return out;
}

}  // namespace szegolab
