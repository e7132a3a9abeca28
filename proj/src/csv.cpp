#include "twofront/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "twofront/errors.hpp"
#include "twofront/kernels.hpp"

namespace twofront {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot open for writing: " + path.string());
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  if (!out) throw ParseError("write failed: " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open: " + path.string());
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    if (!s.empty() && s.back() == ',') out.push_back("");
    return out;
  };
  if (!std::getline(in, line)) {
    throw ParseError("empty CSV: " + path.string());
  }
  table.columns = split(line);
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != table.columns.size()) {
      throw ParseError(path.string() + ":" + std::to_string(n) +
                       ": expected " + std::to_string(table.columns.size()) +
                       " cells, got " + std::to_string(row.size()));
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

CsvTable series_table(const Trajectory& traj) {
  CsvTable t;
  t.columns = {"t",      "h",      "g",          "u_max",      "v_max",
               "u_at_0", "v_at_0", "h_speed_est", "g_speed_est"};
  t.cells.reserve(traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    t.cells.push_back({format_g17(traj.times[k]),
                       format_g17(traj.h_series[k]),
                       format_g17(traj.g_series[k]),
                       format_g17(traj.umax_series[k]),
                       format_g17(traj.vmax_series[k]),
                       format_g17(traj.u0_series[k]),
                       format_g17(traj.v0_series[k]),
                       format_g17(traj.h_speed_series[k]),
                       format_g17(traj.g_speed_series[k])});
  }
  return t;
}

CsvTable snapshot_table(const SimState& state) {
  CsvTable t;
  t.columns = {"x", "u", "v"};
  const std::size_t n = state.u.size();
  std::vector<double> v_here(n);
  kernels::cross_interpolate(state.h, state.g, state.v, v_here,
                             Backend::serial);
  const double dx = state.h / static_cast<double>(n - 1);
  t.cells.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.cells.push_back({format_g17(static_cast<double>(i) * dx),
                       format_g17(state.u[i]), format_g17(v_here[i])});
  }
  return t;
}

void write_run_outputs(const std::filesystem::path& dir,
                       const Trajectory& traj) {
  std::filesystem::create_directories(dir / "snapshots");
  write_csv(dir / "series.csv", series_table(traj));

  CsvTable manifest;
  manifest.columns = {"index", "t", "h", "g", "file"};
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%04zu.csv", k);
    const auto& s = traj.snapshots[k];
    write_csv(dir / "snapshots" / name, snapshot_table(s));
    manifest.cells.push_back({std::to_string(k), format_g17(s.t),
                              format_g17(s.h), format_g17(s.g),
                              std::string("snapshots/") + name});
  }
  write_csv(dir / "snapshots.csv", manifest);
}

}  // namespace twofront
