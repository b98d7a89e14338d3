#pragma once

#include <memory>
#include <vector>

#include "szegolab/state.hpp"

namespace szegolab::detail {

/// Cauchy-product engine for a fixed truncation size N.  core(a) computes the
/// resonant cubic sum
///   core_n = sum_m conj(a_m) w_{n+m},   w = a * a (full linear convolution),
/// which is the Galerkin sum over m, k, l < N exactly.  The transform path
/// pads to a power of two >= 3N so the circular products equal the linear ones.
class Convolver {
 public:
  Convolver(int nmax, bool use_transform);
  ~Convolver();
  Convolver(Convolver&&) noexcept;
  Convolver& operator=(Convolver&&) noexcept;

  int nmax() const { return n_; }
  bool transform() const { return use_transform_; }

  void core(const std::vector<Complex>& a, std::vector<Complex>& out) const;
  /// Full convolution w_j = sum_{k+l=j} a_k a_l, j = 0 .. 2N-2.
  void self_convolution(const std::vector<Complex>& a, std::vector<Complex>& w) const;

 private:
  struct Fft;
  int n_;
  bool use_transform_;
  std::unique_ptr<Fft> fft_;
  mutable std::vector<Complex> buf_a_, buf_b_, buf_c_;
};

}  // namespace szegolab::detail
