// Command-line front end: simulate | manifold | sweep | lax-check | tail-fit | rates.
// Exit codes: 0 success, 2 config error, 3 numerical failure (step underflow),
// 4 diagnostic failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "szegolab/analysis.hpp"
#include "szegolab/io.hpp"
#include "szegolab/lax.hpp"
#include "szegolab/runner.hpp"

namespace fs = std::filesystem;
using namespace szegolab;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitDiagnostic = 4;

struct CommonArgs {
  std::string config;
  std::string out = "out";
  int threads = 1;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool need_config = true) {
  auto* opt = cmd->add_option("--config", args.config, "run-config JSON document");
  if (need_config) opt->required();
  cmd->add_option("--out", args.out, "output directory");
  cmd->add_option("--threads", args.threads, "worker-pool width");
  cmd->add_option("--seed", args.seed, "seed for randomized diagnostics");
}

int do_simulate(const CommonArgs& args) {
  RunConfig cfg = load_config(args.config);
  if (args.seed) cfg.seed = args.seed;
  const RunResult res = run(cfg, args.out);
  std::cout << "termination: " << to_string(res.termination) << "  checkpoints: "
            << res.trajectory.times.size() << "\n";
  return res.termination == Termination::StepUnderflow ? kExitNumerical : 0;
}

int do_manifold(const CommonArgs& args) {
  RunConfig cfg = load_config(args.config);
  const ManifoldRunResult res = run_manifold(cfg, args.out);
  std::cout << "regime: " << to_string(res.potential.regime);
  if (res.omega > 0) std::cout << "  omega: " << res.omega;
  if (res.ctilde > 0) std::cout << "  ctilde: " << res.ctilde;
  std::cout << "  checkpoints: " << res.times.size() << "\n";
  return 0;
}

int do_sweep(const CommonArgs& args) {
  std::ifstream in(args.config);
  if (!in) throw ConfigError("cannot open config: " + args.config);
  json j = json::parse(in, nullptr, true);
  SweepConfig sc;
  if (!j.contains("beta_grid") || !j.contains("x0_grid"))
    throw ConfigError("sweep config needs beta_grid and x0_grid");
  sc.beta_grid = j.at("beta_grid").get<std::vector<double>>();
  sc.x0_grid = j.at("x0_grid").get<std::vector<double>>();
  sc.lambda = j.value("lambda", 0.0);
  if (j.contains("b") && j.at("b").is_array())
    sc.b = Complex{j.at("b")[0].get<double>(), j.at("b")[1].get<double>()};
  else if (j.contains("b"))
    sc.b = Complex{j.at("b").get<double>(), 0.0};
  const auto cells = sweep_phase_diagram(sc, args.threads);
  fs::create_directories(args.out);
  write_sweep_csv(fs::path(args.out) / "sweep.csv", cells);
  std::cout << "cells: " << cells.size() << "\n";
  return 0;
}

int do_lax_check(const CommonArgs& args) {
  RunConfig cfg = load_config(args.config);
  if (args.seed) cfg.seed = args.seed;
  const ModeState s0 = build_initial_state(cfg);
  Trajectory traj = integrate(cfg.kernel, s0, cfg.controls);

  const int size = s0.nmax() / 2;
  const std::vector<double> sv0 = k_spectrum(traj.states.front(), size);
  std::ostringstream os;
  os << "t,residual,sigma1,drift_top5\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double resid =
        lax_residual(cfg.kernel, traj.states[i], 4, LaxPair::K, cfg.seed + 0x9e3779b9ULL);
    const std::vector<double> sv = k_spectrum(traj.states[i], size);
    double drift = 0;
    for (int k = 0; k < 5 && k < static_cast<int>(sv.size()); ++k)
      drift = std::max(drift, std::abs(sv[k] - sv0[k]) / std::max(sv0[0], 1e-300));
    os << format_full(traj.times[i]) << ',' << format_full(resid) << ','
       << format_full(sv[0]) << ',' << format_full(drift) << '\n';
  }
  fs::create_directories(args.out);
  write_text_file(fs::path(args.out) / "lax_check.csv", os.str());
  std::cout << "checkpoints: " << traj.times.size() << "\n";
  return 0;
}

int do_tail_fit(const CommonArgs& args, const std::string& input, double floor) {
  fs::path in(input);
  std::vector<fs::path> state_files;
  if (fs::is_directory(in)) {
    fs::path states = fs::exists(in / "states") ? in / "states" : in;
    for (const auto& e : fs::directory_iterator(states))
      if (e.path().extension() == ".csv") state_files.push_back(e.path());
    std::sort(state_files.begin(), state_files.end());
  } else {
    state_files.push_back(in);
  }
  if (state_files.empty()) throw DiagnosticError("no state files found");

  std::ostringstream os;
  os << "index,c,gamma,rho,n_lo,n_hi,rms_log_residual\n";
  for (std::size_t i = 0; i < state_files.size(); ++i) {
    const ModeState s = read_state_csv(state_files[i]);
    const TailFit fit = tail_fit(s, floor);
    os << i << ',' << format_full(fit.c) << ',' << format_full(fit.gamma) << ','
       << format_full(fit.rho) << ',' << fit.n_lo << ',' << fit.n_hi << ','
       << format_full(fit.rms_log_residual) << '\n';
  }
  fs::create_directories(args.out);
  write_text_file(fs::path(args.out) / "tail_fits.csv", os.str());
  std::cout << "fits: " << state_files.size() << "\n";
  return 0;
}

int do_rates(const CommonArgs& args, const std::string& input, double s, double t_lo,
             double t_hi, bool power_law) {
  // rebuild states from the stored per-checkpoint CSVs
  fs::path dir(input);
  if (!fs::is_directory(dir)) throw DiagnosticError("rates needs a run directory");
  const TrajectoryTable table = read_csv_table(dir / "trajectory.csv");
  Trajectory traj;
  std::vector<fs::path> state_files;
  for (const auto& e : fs::directory_iterator(dir / "states"))
    if (e.path().extension() == ".csv") state_files.push_back(e.path());
  std::sort(state_files.begin(), state_files.end());
  if (state_files.size() != table.rows.size())
    throw DiagnosticError("trajectory.csv and states/ disagree");
  for (std::size_t i = 0; i < state_files.size(); ++i) {
    traj.times.push_back(table.rows[i][0]);
    traj.states.push_back(read_state_csv(state_files[i]));
  }
  if (t_hi <= t_lo) {
    t_lo = traj.times.front();
    t_hi = traj.times.back();
  }
  const double slope = growth_rate_fit(traj, s, t_lo, t_hi,
                                       power_law ? GrowthLaw::PowerLaw
                                                 : GrowthLaw::Exponential);
  std::ostringstream os;
  os << "s,t_lo,t_hi,law,slope\n";
  os << format_full(s) << ',' << format_full(t_lo) << ',' << format_full(t_hi) << ','
     << (power_law ? "power" : "exp") << ',' << format_full(slope) << '\n';
  fs::create_directories(args.out);
  write_text_file(fs::path(args.out) / "rates.csv", os.str());
  std::cout << "slope: " << slope << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resonant-cascade laboratory for cubic Szego-type systems"};
  app.require_subcommand(1);

  CommonArgs sim_args, man_args, sweep_args, lax_args, tail_args, rates_args;
  std::string tail_input, rates_input;
  double tail_floor = 1e-13;
  double rates_s = 1.0, rates_tlo = 0.0, rates_thi = -1.0;
  bool rates_power = false;

  auto* sim = app.add_subcommand("simulate", "integrate the full mode flow");
  add_common(sim, sim_args);
  auto* man = app.add_subcommand("manifold", "integrate the reduced L(1) system");
  add_common(man, man_args);
  auto* swp = app.add_subcommand("sweep", "classify the (beta, x0) phase diagram");
  add_common(swp, sweep_args);
  auto* lax = app.add_subcommand("lax-check", "Lax residuals and K-spectrum drift");
  add_common(lax, lax_args);
  auto* tail = app.add_subcommand("tail-fit", "fit |a_n| ~ c n^-gamma e^-rho*n");
  add_common(tail, tail_args, false);
  tail->add_option("--in", tail_input, "run directory or state CSV")->required();
  tail->add_option("--floor", tail_floor, "amplitude floor");
  auto* rates = app.add_subcommand("rates", "Sobolev growth-rate fits");
  add_common(rates, rates_args, false);
  rates->add_option("--in", rates_input, "run directory")->required();
  rates->add_option("--s", rates_s, "Sobolev index");
  rates->add_option("--t-lo", rates_tlo, "window start");
  rates->add_option("--t-hi", rates_thi, "window end");
  rates->add_flag("--power-law", rates_power, "fit log-norm against log t");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return do_simulate(sim_args);
    if (man->parsed()) return do_manifold(man_args);
    if (swp->parsed()) return do_sweep(sweep_args);
    if (lax->parsed()) return do_lax_check(lax_args);
    if (tail->parsed()) return do_tail_fit(tail_args, tail_input, tail_floor);
    if (rates->parsed())
      return do_rates(rates_args, rates_input, rates_s, rates_tlo, rates_thi, rates_power);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DiagnosticError& e) {
    std::cerr << "diagnostic failure: " << e.what() << "\n";
    return kExitDiagnostic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
