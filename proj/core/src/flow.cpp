#include "szegolab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "convolution.hpp"
#include "szegolab/dopri5.hpp"

namespace szegolab {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::ReachedTEnd: return "ReachedTEnd";
    case Termination::TailMassExceeded: return "TailMassExceeded";
    case Termination::StepUnderflow: return "StepUnderflow";
    case Termination::XThreshold: return "XThreshold";
  }
  throw std::logic_error("unknown termination");
}

bool has_fast_path(const KernelSpec& spec) {
  return spec.family != KernelFamily::PowerSum || spec.G == 0.0;
}

ModeState rhs_direct(const KernelSpec& spec, const ModeState& s) {
  const int N = s.nmax();
  ModeState out(N);
  const ModeState lin = linear_term(spec, s);
  for (int n = 0; n < N; ++n) {
    Complex acc{};
    for (int m = 0; m < N; ++m) {
      const Complex cm = std::conj(s[m]);
      const int t = n + m;
      const int klo = std::max(0, t - N + 1);
      const int khi = std::min(t, N - 1);
      for (int k = klo; k <= khi; ++k) {
        const double C = coupling(spec, n, m, k, t - k);
        if (C == 0.0) continue;
        acc += C * cm * s[k] * s[t - k];
      }
    }
    out[n] = Complex{0, -1} * (acc + lin[n]);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct RhsEvaluator::Impl {
  KernelSpec spec;
  int nmax = 0;
  detail::Convolver conv;
  // scratch
  mutable std::vector<Complex> masked, core_full, core_masked;
  std::vector<double> weights;  // (n+1)^G for the power-product family
  int mask_mode = 0;            // mode zeroed in the subtracted core
  double beta_eff = 0;          // coefficient of the subtracted core

  Impl(const KernelSpec& sp, int n, bool transform)
      : spec(sp), nmax(n), conv(n, transform) {
    switch (spec.family) {
      case KernelFamily::Szego:
        beta_eff = 0;
        break;
      case KernelFamily::Truncated:
        beta_eff = 1;
        break;
      case KernelFamily::Beta:
      case KernelFamily::Extended:
        beta_eff = spec.beta;
        break;
      case KernelFamily::ModeAnchored:
        beta_eff = spec.beta;
        mask_mode = spec.anchor;
        break;
      case KernelFamily::PowerProduct: {
        beta_eff = spec.truncated ? 1.0 : 0.0;
        weights.resize(n);
        for (int i = 0; i < n; ++i) weights[i] = std::pow(i + 1.0, spec.G);
        break;
      }
      case KernelFamily::PowerSum:
        if (spec.G != 0.0) throw std::invalid_argument("no fast path");
        beta_eff = spec.truncated ? 1.0 : 0.0;
        break;
    }
  }

  void eval(const std::vector<Complex>& amp, std::vector<Complex>& dadt) const {
    const int N = nmax;
    dadt.assign(N, Complex{});
    const bool power = spec.family == KernelFamily::PowerProduct;

    const std::vector<Complex>* base = &amp;
    if (power) {
      masked.resize(N);
      for (int i = 0; i < N; ++i) masked[i] = weights[i] * amp[i];
      base = &masked;
    }
    conv.core(*base, core_full);

    if (beta_eff != 0.0) {
      std::vector<Complex> z = *base;
      if (mask_mode < N) z[mask_mode] = 0;
      conv.core(z, core_masked);
    }

    for (int n = 0; n < N; ++n) {
      Complex v = core_full[n];
      if (beta_eff != 0.0 && n != mask_mode) v -= beta_eff * core_masked[n];
      if (power) v *= weights[n];
      dadt[n] = v;
    }
    if (spec.family == KernelFamily::Extended && spec.gamma != 1.0)
      dadt[0] += (spec.gamma - 1.0) * std::norm(amp[0]) * amp[0];
    if (spec.has_linear_term()) {
      double Nq = 0, Eq = 0;
      for (int i = 0; i < N; ++i) {
        const double a2 = std::norm(amp[i]);
        Nq += a2;
        Eq += i * a2;
      }
      dadt[0] += spec.effective_alpha(Nq, Eq) * amp[0];
    }
    for (auto& v : dadt) v *= Complex{0, -1};
  }
};

RhsEvaluator::RhsEvaluator(const KernelSpec& spec, int nmax, ConvBackend backend) {
  const bool transform = backend == ConvBackend::Transform ||
                         (backend == ConvBackend::Auto && nmax >= 128);
  impl_ = std::make_unique<Impl>(spec, nmax, transform);
}

RhsEvaluator::~RhsEvaluator() = default;
RhsEvaluator::RhsEvaluator(RhsEvaluator&&) noexcept = default;
RhsEvaluator& RhsEvaluator::operator=(RhsEvaluator&&) noexcept = default;

void RhsEvaluator::operator()(const std::vector<Complex>& amp,
                              std::vector<Complex>& dadt) const {
  impl_->eval(amp, dadt);
}

int RhsEvaluator::nmax() const { return impl_->nmax; }

ModeState rhs_fast(const KernelSpec& spec, const ModeState& s, ConvBackend backend) {
  RhsEvaluator ev(spec, s.nmax(), backend);
  ModeState out(s.nmax());
  ev(s.amp, out.amp);
  return out;
}

// ---------------------------------------------------------------------------

Trajectory integrate(const KernelSpec& spec, const ModeState& state0,
                     const IntegratorControls& controls) {
  if (!state0.finite()) throw std::invalid_argument("initial state is not finite");
  if (controls.t_end <= 0) throw std::invalid_argument("t_end must be positive");
  if (controls.rel_tol <= 0 || controls.abs_tol <= 0)
    throw std::invalid_argument("tolerances must be positive");

  const int N = state0.nmax();
  const RhsEvaluator ev(spec, N, controls.backend);

  const double N0 = particle_number(state0);
  const double E0 = energy(state0);
  const bool track_x = controls.monitor_x && E0 > 1e-14;
  std::optional<double> s_beta;
  if (controls.record_s && track_x) {
    switch (spec.family) {
      case KernelFamily::Szego: s_beta = 0.0; break;
      case KernelFamily::Truncated: s_beta = 1.0; break;
      case KernelFamily::Beta: s_beta = spec.beta; break;
      default: break;
    }
  }
  const auto x_of = [&](const std::vector<Complex>& amp) {
    return 1.0 - (N0 - std::norm(amp[0])) / E0;
  };

  Trajectory traj;
  const auto record = [&](double t, const std::vector<Complex>& amp) {
    ModeState st;
    st.amp = amp;
    traj.times.push_back(t);
    traj.charges.push_back(charges(spec, st, controls.sobolev_list, s_beta));
    if (track_x) traj.x.push_back(x_of(amp));
    traj.states.push_back(std::move(st));
  };

  std::vector<Complex> y = state0.amp;
  record(0.0, y);

  Dopri5Options opts;
  opts.rel_tol = controls.rel_tol;
  opts.abs_tol = controls.abs_tol;
  opts.max_step = controls.max_step;

  const OdeRhs f = [&ev](double, const std::vector<Complex>& yy, std::vector<Complex>& dy) {
    ev(yy, dy);
  };

  Termination term = Termination::ReachedTEnd;
  bool stopped = false;
  const int tail_start = N - std::max(1, N / 10);
  const StepObserver watch = [&](double, const std::vector<Complex>& yy) {
    if (controls.stop_on_tail_mass < 1.0) {
      double tm = 0;
      for (int i = tail_start; i < N; ++i) tm += std::norm(yy[i]);
      if (tm > controls.stop_on_tail_mass) {
        term = Termination::TailMassExceeded;
        return StepControl::Stop;
      }
    }
    if (track_x && x_of(yy) >= controls.stop_on_x) {
      term = Termination::XThreshold;
      return StepControl::Stop;
    }
    return StepControl::Continue;
  };

  const double dt = controls.checkpoint_dt > 0 ? controls.checkpoint_dt : controls.t_end;
  double t = 0;
  int k = 1;
  while (t < controls.t_end && !stopped) {
    const double target = std::min(controls.t_end, k * dt);
    Dopri5Result r = dopri5_integrate(f, y, t, target, opts, watch);
    traj.n_accepted += r.n_accepted;
    traj.n_rejected += r.n_rejected;
    opts.initial_step = r.suggested_h;
    t = r.t;
    if (r.underflow) {
      term = Termination::StepUnderflow;
      stopped = true;
    } else if (term != Termination::ReachedTEnd) {
      stopped = true;  // observer tripped a stop condition
    }
    record(t, y);
    ++k;
  }
  traj.termination = term;
  return traj;
}

}  // namespace szegolab
