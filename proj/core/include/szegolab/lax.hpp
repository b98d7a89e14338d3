#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "szegolab/kernels.hpp"
#include "szegolab/state.hpp"

namespace szegolab {

/// Operator primitives in mode components.  Hu and Ku are antilinear (they
/// conjugate their argument exactly once); the rest are linear.
///
///   (Hu h)_n = sum_m a_{n+m}   conj(h_m)          Hankel
///   (Ku h)_n = sum_m a_{n+m+1} conj(h_m)          shifted Hankel
///   (Tb h)_n = sum_m b_{n-m} h_m                  Toeplitz, symbol over Z
///   (S h)_n  = h_{n-1},  (S^dag h)_n = h_{n+1}    shifts
///   Bu = (i/2) Hu^2 - i T_{|u|^2}
///   Cu = (i/2) Ku^2 - i T_{|u|^2}
///   Du = -i T_{|u|^2 - |S^dag u|^2}               truncated-kernel Lax partner
///   Au = Cu - beta B_{S^dag u}
///        - i dt1 |a_0|^2 - i dt2 |a_0|^2 (2n+1)   extended-family partner
enum class OperatorKind { Hu, Ku, Tb, Shift, CoShift, Bu, Cu, Du, Au };

struct LaxOp {
  OperatorKind kind = OperatorKind::Hu;
  ModeState u;                  // parameter state for Hu/Ku/Bu/Cu/Du/Au
  std::vector<Complex> symbol;  // Tb: coefficient of e^{ij theta} at j - symbol_min
  int symbol_min = 0;
  double beta = 1.0;            // Au
  double dtilde1 = 0.0;         // Au multiplier terms (Appendix-style deformation)
  double dtilde2 = 0.0;

  bool antilinear() const { return kind == OperatorKind::Hu || kind == OperatorKind::Ku; }
};

std::vector<Complex> apply_operator(const LaxOp& op, std::span<const Complex> h);

/// Fourier coefficients of |u|^2 as a Toeplitz symbol (indices -(N-1) .. N-1).
LaxOp toeplitz_mod2(const ModeState& u);

/// Singular values (descending) of the size x size Hankel matrix
/// Gamma_{nm} = a_{n+m+1}.  Requires 2*size <= Nmax.
std::vector<double> k_spectrum(const ModeState& s, int size);

/// Same for Gamma_{nm} = a_{n+m} (the Hu matrix); requires 2*size-1 <= Nmax.
std::vector<double> h_spectrum(const ModeState& s, int size);

enum class LaxPair {
  K,  ///< dKu/dt = [A, Ku]; A = Cu (Szego), Du (Truncated), Cu - beta B_{S^dag u} (Beta/Extended)
  H,  ///< dHu/dt = [Bu, Hu]; cubic Szego only
};

/// Max relative discrepancy of the Lax identity over probe_count Gaussian test
/// vectors.  dK/dt is formed analytically as K_{du/dt} (K is linear in u).
/// Supported families: Szego, Truncated, Beta, Extended.
double lax_residual(const KernelSpec& spec, const ModeState& s, int probe_count,
                    LaxPair pair = LaxPair::K, std::uint64_t seed = 0x5eed5eedULL);

}  // namespace szegolab
