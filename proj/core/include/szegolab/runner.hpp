#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "szegolab/flow.hpp"
#include "szegolab/io.hpp"
#include "szegolab/kernels.hpp"
#include "szegolab/manifold.hpp"

namespace szegolab {

inline constexpr const char* kVersion = "szegolab 0.1.0";

// ---- initial-condition variants -------------------------------------------

struct InitExplicit {
  std::vector<Complex> modes;
};
struct InitL1 {
  Complex b, a, p;
};
struct InitL1Blowup {
  double beta = 1.0;
  Complex b, p;
  double lambda = 0.0;
};
struct InitLD {
  LDParams params;
};
struct InitStationary {
  Complex p;
};
struct InitTwoMode {
  double a0 = 1.0, a1 = 1.0;
};

using InitialCondition = std::variant<InitExplicit, InitL1, InitL1Blowup, InitLD,
                                      InitStationary, InitTwoMode>;

struct RunConfig {
  KernelSpec kernel;
  InitialCondition initial = InitTwoMode{};
  int nmax = 256;
  IntegratorControls controls;
  std::vector<int> tracked_modes = {0, 1, 2};
  bool write_states = true;
  int profile_grid = 0;  // when > 0, write the position profile of the final state
  std::uint64_t seed = 0;
};

/// Parses the JSON run-config document; errors carry the offending field path.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

bool initial_is_l1(const RunConfig& cfg);
ModeState build_initial_state(const RunConfig& cfg);
/// The (b, a, p) triple of L(1)-type initial conditions.
std::optional<ManifoldState> initial_manifold_state(const RunConfig& cfg);
/// beta used for on-manifold S bookkeeping, from the kernel family.
std::optional<double> l1_beta(const KernelSpec& spec);

struct RunResult {
  Trajectory trajectory;
  std::filesystem::path out_dir;
  Termination termination = Termination::ReachedTEnd;
};

/// Full-flow run: writes trajectory.csv, states/state_NNNNN.csv (optional),
/// manifest.json and returns the trajectory.
RunResult run(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Reduced-ODE run on L(1): integrates (b, a, p), writes the V_eff report
/// (coefficients, roots, regime, omega or ctilde) plus x(t) samples.
struct ManifoldRunResult {
  EffectivePotential potential;
  std::vector<double> times;
  std::vector<double> x;
  std::vector<ManifoldState> states;
  double omega = 0;   // blow-up regimes
  double ctilde = 0;  // threshold regime
};

ManifoldRunResult run_manifold(const RunConfig& cfg, const std::filesystem::path& out_dir);

// ---- phase-diagram sweep ----------------------------------------------------

enum class GrowthClass { Bounded, Exponential, Polynomial, Invalid };

std::string to_string(GrowthClass g);

struct SweepCell {
  double beta = 0;
  double x0 = 0;
  GrowthClass cls = GrowthClass::Invalid;
  double omega = 0;  // exponential cells
  std::string note;  // failure reason for Invalid cells
};

struct SweepConfig {
  std::vector<double> beta_grid;
  std::vector<double> x0_grid;
  double lambda = 0.0;
  Complex b{1.0, 0.0};
};

/// Classifies blow-up-family data on the (beta, x0) grid.  Cells run in a
/// worker pool; output order is fixed (beta-major) regardless of thread count.
std::vector<SweepCell> sweep_phase_diagram(const SweepConfig& cfg, int threads = 1);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepCell>& cells);

}  // namespace szegolab
