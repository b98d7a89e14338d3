#include "szegolab/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace szegolab {

std::string to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::Szego: return "Szego";
    case KernelFamily::Truncated: return "Truncated";
    case KernelFamily::Beta: return "Beta";
    case KernelFamily::ModeAnchored: return "ModeAnchored";
    case KernelFamily::PowerProduct: return "PowerProduct";
    case KernelFamily::PowerSum: return "PowerSum";
    case KernelFamily::Extended: return "Extended";
  }
  throw std::logic_error("unknown kernel family");
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "Szego") return KernelFamily::Szego;
  if (name == "Truncated") return KernelFamily::Truncated;
  if (name == "Beta") return KernelFamily::Beta;
  if (name == "ModeAnchored") return KernelFamily::ModeAnchored;
  if (name == "PowerProduct") return KernelFamily::PowerProduct;
  if (name == "PowerSum") return KernelFamily::PowerSum;
  if (name == "Extended") return KernelFamily::Extended;
  throw std::invalid_argument("unknown kernel family: " + name);
}

double coupling(const KernelSpec& spec, int n, int m, int k, int l) {
  if (n < 0 || m < 0 || k < 0 || l < 0)
    throw std::invalid_argument("negative mode index");
  if (n + m != k + l) throw std::invalid_argument("non-resonant indices");

  const bool touches_zero = (n == 0 || m == 0 || k == 0 || l == 0);
  switch (spec.family) {
    case KernelFamily::Szego:
      return 1.0;
    case KernelFamily::Truncated:
      return touches_zero ? 1.0 : 0.0;
    case KernelFamily::Beta:
      return touches_zero ? 1.0 : 1.0 - spec.beta;
    case KernelFamily::ModeAnchored: {
      const int j = spec.anchor;
      const bool touches_anchor = (n == j || m == j || k == j || l == j);
      return touches_anchor ? 1.0 : 1.0 - spec.beta;
    }
    case KernelFamily::PowerProduct: {
      if (spec.G < 0) throw std::invalid_argument("power-kernel exponent G must be >= 0");
      if (spec.truncated && !touches_zero) return 0.0;
      const double prod = static_cast<double>(n + 1) * (m + 1) * (k + 1) * (l + 1);
      return std::pow(prod, spec.G);
    }
    case KernelFamily::PowerSum: {
      if (spec.G < 0) throw std::invalid_argument("power-kernel exponent G must be >= 0");
      if (spec.truncated && !touches_zero) return 0.0;
      return std::pow(static_cast<double>(n + m + 1), spec.G);
    }
    case KernelFamily::Extended: {
      if (n == 0 && m == 0 && k == 0 && l == 0) return spec.gamma;
      return touches_zero ? 1.0 : 1.0 - spec.beta;
    }
  }
  throw std::logic_error("unknown kernel family");
}

ModeState linear_term(const KernelSpec& spec, const ModeState& s) {
  ModeState out(s.nmax());
  if (!spec.has_linear_term() || s.nmax() == 0) return out;
  const double ea = spec.effective_alpha(particle_number(s), energy(s));
  out[0] = ea * s[0];
  return out;
}

}  // namespace szegolab
