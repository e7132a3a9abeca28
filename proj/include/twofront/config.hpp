#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twofront/fbsolver.hpp"
#include "twofront/model.hpp"

namespace twofront {

// Parsed contents of a flat key = value run configuration. The nine model
// parameters carry no defaults and must all be present; solver knobs and
// profile settings fall back to the documented defaults.
struct RunConfig {
  ModelParams params;

  std::string u0_kind = "cosine";  // "cosine" or "csv"
  double u0_amplitude = 1.0;
  std::string u0_csv;
  std::string v0_kind = "cosine";
  double v0_amplitude = 1.0;
  std::string v0_csv;

  SolverConfig solver;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  int workers = 1;

  // Parameter name -> list of values for sweep runs (empty otherwise).
  std::map<std::string, std::vector<double>> sweep;
};

// Parses and validates config text. '#' starts a comment; keys come from
// the documented closed set; duplicate or unknown keys are ParseErrors
// (with line numbers); invariant violations are ValidationErrors.
RunConfig parse_config(const std::string& text);

// Builds the initial profiles: the cosine family at the configured
// amplitudes, or sampled arrays loaded from the configured files (one
// value per line, exactly n_u / n_v of them).
InitialData make_initial_data(const RunConfig& rc);

}  // namespace twofront
