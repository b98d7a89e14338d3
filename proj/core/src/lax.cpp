#include "szegolab/lax.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "szegolab/flow.hpp"

namespace szegolab {

namespace {

using Vec = std::vector<Complex>;

void check_length(const ModeState& u, std::span<const Complex> h) {
  if (static_cast<int>(h.size()) != u.nmax())
    throw std::invalid_argument("operator/test-vector length mismatch");
}

// (H_u h)_n = sum_m a_{n+m+shift} conj(h_m); shift 0 gives Hu, shift 1 gives Ku.
Vec hankel(const ModeState& u, std::span<const Complex> h, int shift) {
  const int L = u.nmax();
  Vec out(L);
  for (int n = 0; n + shift < L; ++n) {
    Complex acc{};
    for (int m = 0; n + m + shift < L && m < static_cast<int>(h.size()); ++m)
      acc += u[n + m + shift] * std::conj(h[m]);
    out[n] = acc;
  }
  return out;
}

Vec toeplitz(const std::vector<Complex>& symbol, int symbol_min,
             std::span<const Complex> h) {
  const int L = static_cast<int>(h.size());
  const int smax = symbol_min + static_cast<int>(symbol.size()) - 1;
  Vec out(L);
  for (int n = 0; n < L; ++n) {
    Complex acc{};
    const int mlo = std::max(0, n - smax);
    const int mhi = std::min(L - 1, n - symbol_min);
    for (int m = mlo; m <= mhi; ++m)
      acc += symbol[static_cast<std::size_t>(n - m - symbol_min)] * h[m];
    out[n] = acc;
  }
  return out;
}

// Fourier coefficients of |u|^2: b_j = sum_k a_{k+j} conj(a_k), j in [-(L-1), L-1].
std::vector<Complex> mod2_symbol(const ModeState& u) {
  const int L = u.nmax();
  std::vector<Complex> b(2 * L - 1);
  for (int j = 0; j < L; ++j) {
    Complex acc{};
    for (int k = 0; k + j < L; ++k) acc += u[k + j] * std::conj(u[k]);
    b[static_cast<std::size_t>(L - 1 + j)] = acc;
    b[static_cast<std::size_t>(L - 1 - j)] = std::conj(acc);
  }
  return b;
}

ModeState coshift(const ModeState& u) {
  ModeState v(u.nmax());
  for (int n = 0; n + 1 < u.nmax(); ++n) v[n] = u[n + 1];
  return v;
}

Vec b_apply(const ModeState& u, std::span<const Complex> h);
Vec c_apply(const ModeState& u, std::span<const Complex> h);

// Bu = (i/2) Hu^2 - i T_{|u|^2}
Vec b_apply(const ModeState& u, std::span<const Complex> h) {
  const Vec hh = hankel(u, hankel(u, h, 0), 0);
  const Vec th = toeplitz(mod2_symbol(u), -(u.nmax() - 1), h);
  Vec out(u.nmax());
  const Complex ih{0, 1};
  for (int n = 0; n < u.nmax(); ++n) out[n] = 0.5 * ih * hh[n] - ih * th[n];
  return out;
}

// Cu = (i/2) Ku^2 - i T_{|u|^2}
Vec c_apply(const ModeState& u, std::span<const Complex> h) {
  const Vec kk = hankel(u, hankel(u, h, 1), 1);
  const Vec th = toeplitz(mod2_symbol(u), -(u.nmax() - 1), h);
  Vec out(u.nmax());
  const Complex ih{0, 1};
  for (int n = 0; n < u.nmax(); ++n) out[n] = 0.5 * ih * kk[n] - ih * th[n];
  return out;
}

// Du = -i T_{|u|^2 - |S^dag u|^2}; the symbol reduces to
//   d_j = conj(a_0) a_j (j >= 0),  d_{-j} = conj(d_j).
Vec d_apply(const ModeState& u, std::span<const Complex> h) {
  const int L = u.nmax();
  std::vector<Complex> d(2 * L - 1);
  for (int j = 0; j < L; ++j) {
    const Complex v = std::conj(u[0]) * u[j];
    d[static_cast<std::size_t>(L - 1 + j)] = v;
    d[static_cast<std::size_t>(L - 1 - j)] = std::conj(v);
  }
  const Vec th = toeplitz(d, -(L - 1), h);
  Vec out(L);
  const Complex mih{0, -1};
  for (int n = 0; n < L; ++n) out[n] = mih * th[n];
  return out;
}

// Au = Cu - beta B_{S^dag u} - i dt1 |a_0|^2 - i dt2 |a_0|^2 (2n+1)
Vec a_apply(const ModeState& u, double beta, double dt1, double dt2,
            std::span<const Complex> h) {
  Vec out = c_apply(u, h);
  if (beta != 0.0) {
    const Vec bs = b_apply(coshift(u), h);
    for (int n = 0; n < u.nmax(); ++n) out[n] -= beta * bs[n];
  }
  if (dt1 != 0.0 || dt2 != 0.0) {
    const double a02 = std::norm(u[0]);
    const Complex mih{0, -1};
    for (int n = 0; n < u.nmax(); ++n)
      out[n] += mih * a02 * (dt1 + dt2 * (2.0 * n + 1.0)) * h[n];
  }
  return out;
}

}  // namespace

std::vector<Complex> apply_operator(const LaxOp& op, std::span<const Complex> h) {
  switch (op.kind) {
    case OperatorKind::Hu:
      check_length(op.u, h);
      return hankel(op.u, h, 0);
    case OperatorKind::Ku:
      check_length(op.u, h);
      return hankel(op.u, h, 1);
    case OperatorKind::Tb:
      return toeplitz(op.symbol, op.symbol_min, h);
    case OperatorKind::Shift: {
      Vec out(h.size());
      for (std::size_t n = h.size(); n-- > 1;) out[n] = h[n - 1];
      return out;
    }
    case OperatorKind::CoShift: {
      Vec out(h.size());
      for (std::size_t n = 0; n + 1 < h.size(); ++n) out[n] = h[n + 1];
      return out;
    }
    case OperatorKind::Bu:
      check_length(op.u, h);
      return b_apply(op.u, h);
    case OperatorKind::Cu:
      check_length(op.u, h);
      return c_apply(op.u, h);
    case OperatorKind::Du:
      check_length(op.u, h);
      return d_apply(op.u, h);
    case OperatorKind::Au:
      check_length(op.u, h);
      return a_apply(op.u, op.beta, op.dtilde1, op.dtilde2, h);
  }
  throw std::logic_error("unknown operator kind");
}

LaxOp toeplitz_mod2(const ModeState& u) {
  LaxOp op;
  op.kind = OperatorKind::Tb;
  op.symbol = mod2_symbol(u);
  op.symbol_min = -(u.nmax() - 1);
  return op;
}

namespace {

std::vector<double> hankel_singular_values(const ModeState& s, int size, int shift) {
  Eigen::MatrixXcd G(size, size);
  for (int n = 0; n < size; ++n)
    for (int m = 0; m < size; ++m) G(n, m) = s[n + m + shift];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
  std::vector<double> sv(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) sv[static_cast<std::size_t>(i)] = svd.singularValues()[i];
  return sv;
}

}  // namespace

std::vector<double> k_spectrum(const ModeState& s, int size) {
  if (size < 1 || 2 * size > s.nmax())
    throw std::invalid_argument("Hankel size too large for the truncation");
  return hankel_singular_values(s, size, 1);
}

std::vector<double> h_spectrum(const ModeState& s, int size) {
  if (size < 1 || 2 * size - 1 > s.nmax())
    throw std::invalid_argument("Hankel size too large for the truncation");
  return hankel_singular_values(s, size, 0);
}

double lax_residual(const KernelSpec& spec, const ModeState& s, int probe_count,
                    LaxPair pair, std::uint64_t seed) {
  switch (spec.family) {
    case KernelFamily::Szego:
    case KernelFamily::Truncated:
    case KernelFamily::Beta:
    case KernelFamily::Extended:
      break;
    default:
      throw std::invalid_argument("no known Lax structure");
  }
  if (pair == LaxPair::H && spec.family != KernelFamily::Szego)
    throw std::invalid_argument("the Hu pair only closes for the cubic Szego kernel");

  const int L = s.nmax();
  // dK/dt = K_{du/dt} by linearity of u -> K_u (mode 0 of du/dt never enters).
  ModeState udot = rhs_fast(spec, s);

  const auto apply_A = [&](std::span<const Complex> h) -> Vec {
    switch (spec.family) {
      case KernelFamily::Szego:
        return pair == LaxPair::H ? b_apply(s, h) : c_apply(s, h);
      case KernelFamily::Truncated:
        return d_apply(s, h);
      default:  // Beta / Extended: the mode-0 deformations drop out of dK/dt
        return a_apply(s, spec.beta, 0.0, 0.0, h);
    }
  };
  const int shift = pair == LaxPair::H ? 0 : 1;

  std::mt19937_64 rng(seed);
  const auto gauss = [&rng]() {
    // Box-Muller on the standardized engine keeps probes reproducible.
    const double u1 = (rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    const double u2 = (rng() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return Complex{r * std::cos(2 * std::numbers::pi * u2),
                   r * std::sin(2 * std::numbers::pi * u2)};
  };

  double worst = 0;
  Vec h(static_cast<std::size_t>(L));
  for (int trial = 0; trial < probe_count; ++trial) {
    for (auto& v : h) v = gauss();
    const Vec lhs = hankel(udot, h, shift);
    const Vec akh = apply_A(hankel(s, h, shift));
    const Vec kah = hankel(s, apply_A(h), shift);
    double num = 0, den = 0;
    for (int n = 0; n < L; ++n) {
      num += std::norm(lhs[n] - (akh[n] - kah[n]));
      den += std::norm(lhs[n]) + std::norm(akh[n]) + std::norm(kah[n]);
    }
    const double rel = den > 0 ? std::sqrt(num / den) : 0.0;
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace szegolab
