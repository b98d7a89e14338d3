#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <vector>

#include "szegolab/kernels.hpp"
#include "szegolab/state.hpp"

namespace szegolab {

enum class ConvBackend { Auto, Direct, Transform };

/// Exact triple-loop evaluation of da_n/dt = -i [ sum_{n+m=k+l, all < Nmax}
/// C_{nmkl} conj(a_m) a_k a_l + linear_term_n ].  O(Nmax^3); this is the
/// oracle for rhs_fast.
ModeState rhs_direct(const KernelSpec& spec, const ModeState& s);

/// Cauchy-product evaluation, identical to rhs_direct up to rounding.
/// O(Nmax^2) with the Direct backend, O(Nmax log Nmax) with Transform.
/// Throws for PowerSum with G != 0 ("no fast path").
ModeState rhs_fast(const KernelSpec& spec, const ModeState& s,
                   ConvBackend backend = ConvBackend::Auto);

bool has_fast_path(const KernelSpec& spec);

struct IntegratorControls {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double t_end = 1.0;
  double checkpoint_dt = 0.1;
  /// Stop once tail_mass(state) exceeds this; values >= 1 disable the stop.
  double stop_on_tail_mass = 1e-8;
  /// L(1) runs: stop once x = 1 - (N0 - |a_0|^2)/E0 reaches this.
  double stop_on_x = 0.999;
  bool monitor_x = false;
  std::vector<double> sobolev_list = {0.5, 1.0, 2.0};
  ConvBackend backend = ConvBackend::Auto;
  /// Reconstruct the conserved S for on-manifold runs (needs monitor_x).
  bool record_s = false;
};

enum class Termination { ReachedTEnd, TailMassExceeded, StepUnderflow, XThreshold };

std::string to_string(Termination t);

struct Trajectory {
  std::vector<double> times;
  std::vector<ModeState> states;
  std::vector<ChargeSet> charges;
  std::vector<double> x;  // only for monitor_x runs, aligned with times
  Termination termination = Termination::ReachedTEnd;
  std::size_t n_accepted = 0;
  std::size_t n_rejected = 0;
};

/// Adaptive 5(4) integration with checkpoints every checkpoint_dt and charge
/// records per checkpoint.  Single-threaded and deterministic.
Trajectory integrate(const KernelSpec& spec, const ModeState& state0,
                     const IntegratorControls& controls);

/// Reusable right-hand-side evaluator holding transform plans and scratch
/// buffers for a fixed truncation size.
class RhsEvaluator {
 public:
  RhsEvaluator(const KernelSpec& spec, int nmax, ConvBackend backend);
  ~RhsEvaluator();
  RhsEvaluator(RhsEvaluator&&) noexcept;
  RhsEvaluator& operator=(RhsEvaluator&&) noexcept;

  void operator()(const std::vector<Complex>& amp, std::vector<Complex>& dadt) const;
  int nmax() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace szegolab
