#pragma once

#include <complex>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace szegolab {

using Complex = std::complex<double>;

/// Galerkin-truncated point of the mode phase space: amplitudes alpha_0 .. alpha_{Nmax-1}.
struct ModeState {
  std::vector<Complex> amp;

  ModeState() = default;
  explicit ModeState(int nmax) : amp(static_cast<std::size_t>(nmax)) {}
  ModeState(std::initializer_list<Complex> a) : amp(a) {}

  int nmax() const { return static_cast<int>(amp.size()); }
  Complex& operator[](int n) { return amp[static_cast<std::size_t>(n)]; }
  const Complex& operator[](int n) const { return amp[static_cast<std::size_t>(n)]; }

  bool finite() const;
};

double particle_number(const ModeState& s);  // N = sum |a_n|^2
double energy(const ModeState& s);           // E = sum n |a_n|^2
double wiener_norm(const ModeState& s);      // sum |a_n|

/// H^s norm: sqrt( sum (1+n)^{2s} |a_n|^2 ).
double sobolev_norm(const ModeState& s, double sexp);

/// Mass sum |a_n|^2 over the top 10% of modes; reported so callers can judge
/// how close the state is to the Galerkin validity horizon.
double tail_mass(const ModeState& s);

struct KernelSpec;  // kernels.hpp

/// Exact resonant quadruple sum H = 1/4 sum_{n+m=k+l} C_{nmkl} conj(a_n a_m) a_k a_l,
/// plus the quadratic piece of the linear deformation when present.  O(Nmax^3).
double hamiltonian_direct(const KernelSpec& spec, const ModeState& s);

/// Same value through Cauchy-product accumulation, O(Nmax^2); equality with
/// hamiltonian_direct is enforced by tests for every family.
double hamiltonian(const KernelSpec& spec, const ModeState& s);

struct ChargeSet {
  double N = 0;
  double E = 0;
  double H = 0;
  double wiener = 0;
  double tail = 0;
  std::optional<double> S;  // L(1) combination, filled for on-manifold runs
  std::vector<std::pair<double, double>> sobolev;  // (s, ||u||_{H^s})
};

/// All charges of a state under the given kernel.  When l1_beta is supplied the
/// run is assumed to lie on L(1) and S is reconstructed from H, N, E:
///   H = (N^2 + 2NE - (2+beta)E^2 + 2ES)/4.
ChargeSet charges(const KernelSpec& spec, const ModeState& s,
                  std::span<const double> sobolev_list,
                  std::optional<double> l1_beta = std::nullopt);

struct PositionProfile {
  std::vector<double> theta;
  std::vector<Complex> u;  // u(theta_j)     = sum_{n>=0} a_n e^{i n theta_j}
  std::vector<Complex> v;  // v(theta_j)     = sum_{n>=1} a_n e^{i n theta_j}
  double v_max = 0;        // max_j |v(theta_j)|
  double v_max_theta = 0;  // its location
};

PositionProfile position_profile(const ModeState& s, int grid_size);

/// Zero every a_n with n != p (mod q).  Requires 0 <= p < q and gcd(p,q) = 1.
ModeState restrict_residue(const ModeState& s, int p, int q);

}  // namespace szegolab
