#pragma once

#include <string>

#include "szegolab/state.hpp"

namespace szegolab {

/// Interaction-coefficient families of the resonant system
///   i da_n/dt = sum_{n+m=k+l} C_{nmkl} conj(a_m) a_k a_l  (+ linear term).
enum class KernelFamily {
  Szego,         ///< C = 1
  Truncated,     ///< C = 1 if n*m*k*l == 0, else 0
  Beta,          ///< C = 1 if n*m*k*l == 0, else 1 - beta
  ModeAnchored,  ///< C = 1 if any index equals `anchor`, else 1 - beta
  PowerProduct,  ///< C = ((n+1)(m+1)(k+1)(l+1))^G, optionally truncated
  PowerSum,      ///< C = (n+m+1)^G, optionally truncated
  Extended,      ///< Beta couplings with C_0000 = gamma; alpha/delta enter the linear term
};

struct KernelSpec {
  KernelFamily family = KernelFamily::Szego;
  double beta = 0.0;
  double alpha = 0.0;   // strength of the (u|1) linear deformation
  double gamma = 1.0;   // C_0000 of the Extended family
  double delta1 = 0.0;  // alpha -> alpha + delta1*N + delta2*E
  double delta2 = 0.0;
  double G = 0.0;       // power-kernel exponent, >= 0
  int anchor = 0;       // mode whose interactions survive ModeAnchored truncation
  bool truncated = false;  // truncated variant of PowerProduct/PowerSum

  bool has_linear_term() const {
    return alpha != 0.0 || delta1 != 0.0 || delta2 != 0.0;
  }
  /// Effective alpha of the linear term for a state with charges N, E.
  double effective_alpha(double N, double E) const {
    return alpha + delta1 * N + delta2 * E;
  }
};

std::string to_string(KernelFamily f);
KernelFamily kernel_family_from_string(const std::string& name);

/// C_{nmkl}.  Requires n+m == k+l and nonnegative indices; symmetric under
/// n<->m, k<->l and (n,m)<->(k,l).
double coupling(const KernelSpec& spec, int n, int m, int k, int l);

/// Contribution of the linear deformation to i*da/dt: the alpha term and the
/// delta_1/delta_2 terms expressed as the (N,E)-dependent alpha shift.  It acts
/// on mode 0 only:  (alpha + delta1*N + delta2*E) * a_0.
ModeState linear_term(const KernelSpec& spec, const ModeState& s);

}  // namespace szegolab
