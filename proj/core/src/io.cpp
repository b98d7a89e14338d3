#include "szegolab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace szegolab {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
}

void write_state_csv(const std::filesystem::path& path, const ModeState& s) {
  std::ostringstream os;
  os << "n,re,im\n";
  for (int n = 0; n < s.nmax(); ++n)
    os << n << ',' << format_full(s[n].real()) << ',' << format_full(s[n].imag()) << '\n';
  write_text_file(path, os.str());
}

ModeState read_state_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::string line;
  std::getline(in, line);  // header
  ModeState s;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    std::getline(ls, field, ',');
    const double re = std::stod(field);
    std::getline(ls, field, ',');
    const double im = std::stod(field);
    s.amp.emplace_back(re, im);
  }
  return s;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          const TrajectoryColumns& cols) {
  std::ostringstream os;
  os << "t,N,E,H,wiener,tail";
  if (cols.has_s) os << ",S";
  if (cols.has_x) os << ",x";
  for (double s : cols.sobolev_list) os << ",sobolev_" << s;
  for (int m : cols.tracked_modes) os << ",abs_a" << m;
  os << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const ChargeSet& cs = traj.charges[i];
    os << format_full(traj.times[i]) << ',' << format_full(cs.N) << ','
       << format_full(cs.E) << ',' << format_full(cs.H) << ','
       << format_full(cs.wiener) << ',' << format_full(cs.tail);
    if (cols.has_s) os << ',' << format_full(cs.S ? *cs.S : 0.0);
    if (cols.has_x) os << ',' << format_full(i < traj.x.size() ? traj.x[i] : 0.0);
    for (double s : cols.sobolev_list) {
      double v = 0;
      for (const auto& [se, val] : cs.sobolev)
        if (se == s) v = val;
      os << ',' << format_full(v);
    }
    for (int m : cols.tracked_modes) {
      const ModeState& st = traj.states[i];
      os << ',' << format_full(m < st.nmax() ? std::abs(st[m]) : 0.0);
    }
    os << '\n';
  }
  write_text_file(path, os.str());
}

TrajectoryTable read_csv_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  TrajectoryTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  {
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) table.header.push_back(field);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<double> row;
    while (std::getline(ls, field, ',')) row.push_back(std::stod(field));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace szegolab
