#include "szegolab/runner.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "szegolab/analysis.hpp"
#include "szegolab/dopri5.hpp"

namespace szegolab {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j, const std::string& path) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex{j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(path + ": expected a number or [re, im] pair");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& path) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw ConfigError(path + "." + key + ": unknown field");
  }
}

KernelSpec parse_kernel(const json& j) {
  if (!j.is_object()) throw ConfigError("kernel: expected an object");
  reject_unknown(j, {"family", "beta", "alpha", "gamma", "delta1", "delta2", "G",
                     "anchor", "truncated"},
                 "kernel");
  KernelSpec spec;
  if (!j.contains("family")) throw ConfigError("kernel.family: required");
  try {
    spec.family = kernel_family_from_string(j.at("family").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("kernel.family: ") + e.what());
  }
  spec.beta = j.value("beta", 0.0);
  spec.alpha = j.value("alpha", 0.0);
  spec.gamma = j.value("gamma", 1.0);
  spec.delta1 = j.value("delta1", 0.0);
  spec.delta2 = j.value("delta2", 0.0);
  spec.G = j.value("G", 0.0);
  spec.anchor = j.value("anchor", 0);
  spec.truncated = j.value("truncated", false);
  if (spec.G < 0) throw ConfigError("kernel.G: must be >= 0");
  if (spec.anchor < 0) throw ConfigError("kernel.anchor: must be >= 0");
  return spec;
}

InitialCondition parse_initial(const json& j) {
  if (!j.is_object()) throw ConfigError("initial: expected an object");
  static const char* variants[] = {"modes", "l1", "l1_blowup", "ld", "stationary", "two_mode"};
  std::vector<std::string> present;
  for (const char* v : variants)
    if (j.contains(v)) present.push_back(v);
  if (present.empty())
    throw ConfigError("initial: provide one of modes/l1/l1_blowup/ld/stationary/two_mode");
  if (present.size() > 1) {
    std::string msg = "initial: exactly one variant allowed, found";
    for (const auto& p : present) msg += " " + p;
    throw ConfigError(msg);
  }
  const std::string& kind = present[0];
  const json& v = j.at(kind);
  if (kind == "modes") {
    if (!v.is_array() || v.empty()) throw ConfigError("initial.modes: expected a nonempty array");
    InitExplicit init;
    for (std::size_t i = 0; i < v.size(); ++i)
      init.modes.push_back(parse_complex(v[i], "initial.modes[" + std::to_string(i) + "]"));
    return init;
  }
  if (kind == "l1") {
    reject_unknown(v, {"b", "a", "p"}, "initial.l1");
    InitL1 init;
    init.b = parse_complex(v.at("b"), "initial.l1.b");
    init.a = parse_complex(v.at("a"), "initial.l1.a");
    init.p = parse_complex(v.at("p"), "initial.l1.p");
    if (std::abs(init.p) >= 1.0) throw ConfigError("initial.l1.p: |p| must be < 1");
    return init;
  }
  if (kind == "l1_blowup") {
    reject_unknown(v, {"beta", "b", "p", "lambda"}, "initial.l1_blowup");
    InitL1Blowup init;
    if (!v.contains("beta")) throw ConfigError("initial.l1_blowup.beta: required");
    init.beta = v.at("beta").get<double>();
    init.b = parse_complex(v.at("b"), "initial.l1_blowup.b");
    init.p = parse_complex(v.at("p"), "initial.l1_blowup.p");
    init.lambda = v.value("lambda", 0.0);
    return init;
  }
  if (kind == "ld") {
    reject_unknown(v, {"b", "poles"}, "initial.ld");
    InitLD init;
    init.params.b = parse_complex(v.at("b"), "initial.ld.b");
    if (!v.contains("poles") || !v.at("poles").is_array())
      throw ConfigError("initial.ld.poles: expected an array of {c, p}");
    for (std::size_t i = 0; i < v.at("poles").size(); ++i) {
      const json& pj = v.at("poles")[i];
      const std::string path = "initial.ld.poles[" + std::to_string(i) + "]";
      PoleTerm pt;
      pt.c = parse_complex(pj.at("c"), path + ".c");
      pt.p = parse_complex(pj.at("p"), path + ".p");
      if (std::abs(pt.p) >= 1.0) throw ConfigError(path + ".p: |p| must be < 1");
      init.params.poles.push_back(pt);
    }
    return init;
  }
  if (kind == "stationary") {
    InitStationary init;
    init.p = parse_complex(v, "initial.stationary");
    if (std::abs(init.p) >= 1.0) throw ConfigError("initial.stationary: |p| must be < 1");
    return init;
  }
  // two_mode
  reject_unknown(v, {"a0", "a1"}, "initial.two_mode");
  InitTwoMode init;
  init.a0 = v.value("a0", 1.0);
  init.a1 = v.value("a1", 1.0);
  return init;
}

IntegratorControls parse_controls(const json& j) {
  IntegratorControls c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw ConfigError("controls: expected an object");
  reject_unknown(j, {"rel_tol", "abs_tol", "max_step", "t_end", "checkpoint_dt",
                     "stop_on_tail_mass", "stop_on_x", "sobolev", "backend"},
                 "controls");
  c.rel_tol = j.value("rel_tol", c.rel_tol);
  c.abs_tol = j.value("abs_tol", c.abs_tol);
  c.max_step = j.value("max_step", c.max_step);
  c.t_end = j.value("t_end", c.t_end);
  c.checkpoint_dt = j.value("checkpoint_dt", c.checkpoint_dt);
  c.stop_on_tail_mass = j.value("stop_on_tail_mass", c.stop_on_tail_mass);
  c.stop_on_x = j.value("stop_on_x", c.stop_on_x);
  if (j.contains("sobolev")) c.sobolev_list = j.at("sobolev").get<std::vector<double>>();
  if (j.contains("backend")) {
    const std::string b = j.at("backend").get<std::string>();
    if (b == "auto") c.backend = ConvBackend::Auto;
    else if (b == "direct") c.backend = ConvBackend::Direct;
    else if (b == "transform") c.backend = ConvBackend::Transform;
    else throw ConfigError("controls.backend: expected auto/direct/transform");
  }
  if (c.rel_tol <= 0 || c.abs_tol <= 0) throw ConfigError("controls: tolerances must be > 0");
  if (c.t_end <= 0) throw ConfigError("controls.t_end: must be > 0");
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(j, {"kernel", "initial", "nmax", "controls", "tracked_modes",
                     "write_states", "profile_grid", "seed"},
                 "config");
  RunConfig cfg;
  if (!j.contains("kernel")) throw ConfigError("kernel: required");
  cfg.kernel = parse_kernel(j.at("kernel"));
  if (!j.contains("initial")) throw ConfigError("initial: required");
  cfg.initial = parse_initial(j.at("initial"));
  cfg.nmax = j.value("nmax", 256);
  if (cfg.nmax < 2) throw ConfigError("nmax: must be >= 2");
  cfg.controls = parse_controls(j.contains("controls") ? j.at("controls") : json{});
  if (j.contains("tracked_modes"))
    cfg.tracked_modes = j.at("tracked_modes").get<std::vector<int>>();
  cfg.write_states = j.value("write_states", true);
  cfg.profile_grid = j.value("profile_grid", 0);
  cfg.seed = j.value("seed", 0ULL);
  cfg.controls.monitor_x = initial_is_l1(cfg);
  cfg.controls.record_s = cfg.controls.monitor_x;
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

bool initial_is_l1(const RunConfig& cfg) {
  return std::holds_alternative<InitL1>(cfg.initial) ||
         std::holds_alternative<InitL1Blowup>(cfg.initial) ||
         std::holds_alternative<InitStationary>(cfg.initial);
}

std::optional<ManifoldState> initial_manifold_state(const RunConfig& cfg) {
  if (const auto* l1 = std::get_if<InitL1>(&cfg.initial))
    return ManifoldState{l1->b, l1->a, l1->p};
  if (const auto* bf = std::get_if<InitL1Blowup>(&cfg.initial)) {
    const Complex a = blowup_family(bf->beta, bf->b, bf->p, bf->lambda);
    return ManifoldState{bf->b, a, bf->p};
  }
  if (const auto* st = std::get_if<InitStationary>(&cfg.initial)) {
    // u = (conj(p) - z)/(1 - pz):  b = conj(p), a = -1
    return ManifoldState{std::conj(st->p), Complex{-1.0, 0.0}, st->p};
  }
  return std::nullopt;
}

std::optional<double> l1_beta(const KernelSpec& spec) {
  switch (spec.family) {
    case KernelFamily::Szego: return 0.0;
    case KernelFamily::Truncated: return 1.0;
    case KernelFamily::Beta: return spec.beta;
    default: return std::nullopt;
  }
}

ModeState build_initial_state(const RunConfig& cfg) {
  if (const auto* ex = std::get_if<InitExplicit>(&cfg.initial)) {
    ModeState s(cfg.nmax);
    for (std::size_t i = 0; i < ex->modes.size() && i < s.amp.size(); ++i)
      s.amp[i] = ex->modes[i];
    return s;
  }
  if (const auto* ld = std::get_if<InitLD>(&cfg.initial))
    return lift_ld(ld->params, cfg.nmax);
  if (const auto* tm = std::get_if<InitTwoMode>(&cfg.initial)) {
    ModeState s(cfg.nmax);
    s[0] = tm->a0;
    s[1] = tm->a1;
    return s;
  }
  const auto ms = initial_manifold_state(cfg);
  return lift_l1(*ms, cfg.nmax);
}

namespace {

json manifest_base(const RunConfig& cfg) {
  json m;
  m["version"] = kVersion;
  m["kernel"] = {{"family", to_string(cfg.kernel.family)}, {"beta", cfg.kernel.beta},
                 {"alpha", cfg.kernel.alpha}, {"gamma", cfg.kernel.gamma},
                 {"delta1", cfg.kernel.delta1}, {"delta2", cfg.kernel.delta2},
                 {"G", cfg.kernel.G}, {"anchor", cfg.kernel.anchor},
                 {"truncated", cfg.kernel.truncated}};
  m["nmax"] = cfg.nmax;
  m["seed"] = cfg.seed;
  m["controls"] = {{"rel_tol", cfg.controls.rel_tol}, {"abs_tol", cfg.controls.abs_tol},
                   {"t_end", cfg.controls.t_end},
                   {"checkpoint_dt", cfg.controls.checkpoint_dt},
                   {"stop_on_tail_mass", cfg.controls.stop_on_tail_mass},
                   {"stop_on_x", cfg.controls.stop_on_x}};
  if (const auto ms = initial_manifold_state(cfg)) {
    m["initial"] = {{"type", "l1"}, {"b", complex_to_json(ms->b)},
                    {"a", complex_to_json(ms->a)}, {"p", complex_to_json(ms->p)}};
  } else {
    m["initial"]["type"] = std::holds_alternative<InitExplicit>(cfg.initial) ? "modes"
                           : std::holds_alternative<InitLD>(cfg.initial)     ? "ld"
                                                                             : "two_mode";
  }
  return m;
}

}  // namespace

RunResult run(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const ModeState s0 = build_initial_state(cfg);
  Trajectory traj = integrate(cfg.kernel, s0, cfg.controls);

  TrajectoryColumns cols;
  cols.sobolev_list = cfg.controls.sobolev_list;
  cols.tracked_modes = cfg.tracked_modes;
  cols.has_x = cfg.controls.monitor_x && !traj.x.empty();
  cols.has_s = cols.has_x && l1_beta(cfg.kernel).has_value();
  write_trajectory_csv(out_dir / "trajectory.csv", traj, cols);

  if (cfg.write_states) {
    std::filesystem::create_directories(out_dir / "states");
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "state_%05zu.csv", i);
      write_state_csv(out_dir / "states" / name, traj.states[i]);
    }
  }
  if (cfg.profile_grid > 1 && !traj.states.empty()) {
    const PositionProfile prof = position_profile(traj.states.back(), cfg.profile_grid);
    std::ostringstream os;
    os << "theta,re_u,im_u,re_v,im_v\n";
    for (std::size_t j = 0; j < prof.theta.size(); ++j)
      os << format_full(prof.theta[j]) << ',' << format_full(prof.u[j].real()) << ','
         << format_full(prof.u[j].imag()) << ',' << format_full(prof.v[j].real()) << ','
         << format_full(prof.v[j].imag()) << '\n';
    write_text_file(out_dir / "profile.csv", os.str());
  }

  json m = manifest_base(cfg);
  m["termination"] = to_string(traj.termination);
  m["checkpoints"] = traj.times.size();
  m["steps_accepted"] = traj.n_accepted;
  m["steps_rejected"] = traj.n_rejected;

  // V_eff report for on-manifold runs
  if (const auto ms = initial_manifold_state(cfg)) {
    if (const auto beta = l1_beta(cfg.kernel)) {
      const ReducedCharges rc = reduced_charges(*beta, *ms);
      EffectivePotential pot = veff(*beta, rc.N, rc.E, rc.S);
      const double x0 = std::norm(ms->p);
      try {
        classify(pot, x0);
        m["veff"]["regime"] = to_string(pot.regime);
        if (pot.regime == Regime::InfiniteTimeBlowup) {
          if (pot.multiplicity(1.0) >= 3)
            m["veff"]["ctilde"] = threshold_curvature(pot, x0);
          else
            m["veff"]["omega"] = blowup_rate(pot);
        }
      } catch (const std::invalid_argument& e) {
        m["veff"]["regime"] = "Invalid";
        m["veff"]["note"] = e.what();
      }
      m["veff"]["coefficients"] = pot.c;
      m["veff"]["charges"] = {{"N", rc.N}, {"E", rc.E}, {"S", rc.S}, {"H", rc.H}};
    }
  }

  write_text_file(out_dir / "manifest.json", m.dump(2) + "\n");

  RunResult res;
  res.termination = traj.termination;
  res.trajectory = std::move(traj);
  res.out_dir = out_dir;
  return res;
}

ManifoldRunResult run_manifold(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  const auto ms0 = initial_manifold_state(cfg);
  if (!ms0) throw ConfigError("manifold runs need an L(1)-type initial condition");
  const auto beta_opt = l1_beta(cfg.kernel);
  if (!beta_opt)
    throw ConfigError("manifold runs need a Szego/Truncated/Beta kernel");
  const double beta = *beta_opt;

  std::filesystem::create_directories(out_dir);
  const ReducedCharges rc = reduced_charges(beta, *ms0);

  ManifoldRunResult result;
  result.potential = veff(beta, rc.N, rc.E, rc.S);
  const double x0 = std::norm(ms0->p);
  std::string regime_note;
  try {
    classify(result.potential, x0);
  } catch (const std::invalid_argument& e) {
    regime_note = e.what();
  }
  if (result.potential.regime == Regime::InfiniteTimeBlowup) {
    if (result.potential.multiplicity(1.0) >= 3)
      result.ctilde = threshold_curvature(result.potential, x0);
    else
      result.omega = blowup_rate(result.potential);
  }

  // integrate (b, a, p) as a 3-component complex system
  std::vector<Complex> y = {ms0->b, ms0->a, ms0->p};
  Dopri5Options opts;
  opts.rel_tol = cfg.controls.rel_tol;
  opts.abs_tol = cfg.controls.abs_tol;
  opts.max_step = cfg.controls.max_step;
  const OdeRhs f = [beta](double, const std::vector<Complex>& yy, std::vector<Complex>& dy) {
    const ManifoldState ms{yy[0], yy[1], yy[2]};
    const ReducedRates r = reduced_rhs(beta, ms);
    dy = {r.db, r.da, r.dp};
  };

  const auto record = [&](double t, const std::vector<Complex>& yy) {
    result.times.push_back(t);
    result.x.push_back(std::norm(yy[2]));
    result.states.push_back(ManifoldState{yy[0], yy[1], yy[2]});
  };
  record(0.0, y);

  const double dt = cfg.controls.checkpoint_dt > 0 ? cfg.controls.checkpoint_dt
                                                   : cfg.controls.t_end;
  double t = 0;
  int k = 1;
  bool stop = false;
  while (t < cfg.controls.t_end && !stop) {
    const double target = std::min(cfg.controls.t_end, k * dt);
    const StepObserver watch = [&](double, const std::vector<Complex>& yy) {
      return std::norm(yy[2]) >= cfg.controls.stop_on_x ? StepControl::Stop
                                                        : StepControl::Continue;
    };
    Dopri5Result r = dopri5_integrate(f, y, t, target, opts, watch);
    opts.initial_step = r.suggested_h;
    t = r.t;
    if (r.underflow || t < target) stop = true;
    record(t, y);
    ++k;
  }

  // x(t) samples and the closed form, where one applies
  std::ostringstream os;
  os << "t,x,re_b,im_b,re_a,im_a,re_p,im_p\n";
  for (std::size_t i = 0; i < result.times.size(); ++i) {
    const ManifoldState& m = result.states[i];
    os << format_full(result.times[i]) << ',' << format_full(result.x[i]) << ','
       << format_full(m.b.real()) << ',' << format_full(m.b.imag()) << ','
       << format_full(m.a.real()) << ',' << format_full(m.a.imag()) << ','
       << format_full(m.p.real()) << ',' << format_full(m.p.imag()) << '\n';
  }
  write_text_file(out_dir / "reduced.csv", os.str());

  json m = manifest_base(cfg);
  m["veff"]["coefficients"] = result.potential.c;
  m["veff"]["regime"] = to_string(result.potential.regime);
  if (!regime_note.empty()) m["veff"]["note"] = regime_note;
  json roots = json::array();
  for (const Complex& r : result.potential.roots) roots.push_back(complex_to_json(r));
  m["veff"]["roots"] = roots;
  m["veff"]["charges"] = {{"N", rc.N}, {"E", rc.E}, {"S", rc.S}, {"H", rc.H}};
  if (result.omega > 0) m["veff"]["omega"] = result.omega;
  if (result.ctilde > 0) m["veff"]["ctilde"] = result.ctilde;
  write_text_file(out_dir / "manifest.json", m.dump(2) + "\n");
  return result;
}

// ---------------------------------------------------------------------------

std::string to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::Bounded: return "Bounded";
    case GrowthClass::Exponential: return "Exponential";
    case GrowthClass::Polynomial: return "Polynomial";
    case GrowthClass::Invalid: return "Invalid";
  }
  throw std::logic_error("unknown growth class");
}

namespace {

SweepCell classify_cell(double beta, double x0, double lambda, Complex b) {
  SweepCell cell;
  cell.beta = beta;
  cell.x0 = x0;
  try {
    const Complex p{std::sqrt(x0), 0.0};
    const Complex a = family_seed(beta, b, p, lambda);
    const ManifoldState ms{b, a, p};
    const ReducedCharges rc = reduced_charges(beta, ms);
    EffectivePotential pot = veff(beta, rc.N, rc.E, rc.S);
    classify(pot, x0);
    switch (pot.regime) {
      case Regime::Stationary:
      case Regime::Periodic:
        cell.cls = GrowthClass::Bounded;
        break;
      case Regime::InfiniteTimeBlowup:
        if (pot.multiplicity(1.0) >= 3) {
          cell.cls = GrowthClass::Polynomial;
        } else {
          cell.cls = GrowthClass::Exponential;
          cell.omega = blowup_rate(pot);
        }
        break;
      case Regime::Invalid:
        cell.cls = GrowthClass::Invalid;
        cell.note = "invalid regime";
        break;
    }
  } catch (const std::exception& e) {
    cell.cls = GrowthClass::Invalid;
    cell.note = e.what();
  }
  return cell;
}

}  // namespace

std::vector<SweepCell> sweep_phase_diagram(const SweepConfig& cfg, int threads) {
  if (cfg.beta_grid.empty() || cfg.x0_grid.empty())
    throw ConfigError("sweep: beta_grid and x0_grid must be nonempty");
  const std::size_t total = cfg.beta_grid.size() * cfg.x0_grid.size();
  std::vector<SweepCell> cells(total);

  const auto work = [&](std::size_t idx) {
    const double beta = cfg.beta_grid[idx / cfg.x0_grid.size()];
    const double x0 = cfg.x0_grid[idx % cfg.x0_grid.size()];
    cells[idx] = classify_cell(beta, x0, cfg.lambda, cfg.b);
  };

  const int nthreads = std::max(1, threads);
  if (nthreads == 1) {
    for (std::size_t i = 0; i < total; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) work(i);
      });
    for (auto& th : pool) th.join();
  }
  return cells;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepCell>& cells) {
  std::ostringstream os;
  os << "beta,x0,class,omega,note\n";
  for (const SweepCell& c : cells)
    os << format_full(c.beta) << ',' << format_full(c.x0) << ',' << to_string(c.cls)
       << ',' << format_full(c.omega) << ',' << c.note << '\n';
  write_text_file(path, os.str());
}

}  // namespace szegolab
