#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "szegolab/flow.hpp"
#include "szegolab/state.hpp"

namespace szegolab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DiagnosticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full 17-significant-digit decimal form; round-trips doubles exactly.
std::string format_full(double v);

void write_state_csv(const std::filesystem::path& path, const ModeState& s);
ModeState read_state_csv(const std::filesystem::path& path);

struct TrajectoryColumns {
  std::vector<double> sobolev_list = {0.5, 1.0, 2.0};
  std::vector<int> tracked_modes = {0, 1, 2};
  bool has_x = false;
  bool has_s = false;
};

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          const TrajectoryColumns& cols);

struct TrajectoryTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

TrajectoryTable read_csv_table(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace szegolab
