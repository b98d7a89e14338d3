#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "szegolab/state.hpp"

namespace szegolab {

/// Embedded Dormand-Prince 5(4) pair with PI step-size control on complex
/// state vectors.  Both the full mode flow and the reduced L(1) system run
/// through this stepper.
struct Dopri5Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0: choose automatically
};

enum class StepControl { Continue, Stop };

struct Dopri5Result {
  double t = 0;
  bool underflow = false;
  std::size_t n_accepted = 0;
  std::size_t n_rejected = 0;
  /// Controller step to seed the next segment with (initial_step).
  double suggested_h = 0;
};

using OdeRhs = std::function<void(double, const std::vector<Complex>&, std::vector<Complex>&)>;
using StepObserver = std::function<StepControl(double, const std::vector<Complex>&)>;

/// Integrates y from t0 to exactly t1 (steps are clipped to land on t1).
/// The observer, when given, runs after every accepted step and may stop the
/// integration early; y then holds the state at the returned time.
Dopri5Result dopri5_integrate(const OdeRhs& f, std::vector<Complex>& y,
                              double t0, double t1, const Dopri5Options& opts,
                              const StepObserver& observer = {});

}  // namespace szegolab
