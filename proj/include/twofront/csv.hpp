#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "twofront/fbsolver.hpp"
#include "twofront/model.hpp"

namespace twofront {

// All floating-point output goes through this: %.17g, which round-trips
// binary64 exactly and is locale-independent (the program never changes
// the C locale).
std::string format_g17(double x);

// A CSV held as strings: numeric tables stay exact and mixed-type tables
// (the sweep summary has an outcome column) need no special casing.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

// Throws ParseError on structural problems (ragged rows, missing header).
CsvTable read_csv(const std::filesystem::path& path);

// Column order: t, h, g, u_max, v_max, u_at_0, v_at_0, h_speed_est,
// g_speed_est.
CsvTable series_table(const Trajectory& traj);

// Columns x, u, v on the prey grid; v interpolated across, 0 beyond g.
CsvTable snapshot_table(const SimState& state);

// Writes series.csv, snapshots.csv (index, t, h, g, file) and the
// per-snapshot files under dir/snapshots/.
void write_run_outputs(const std::filesystem::path& dir,
                       const Trajectory& traj);

}  // namespace twofront
