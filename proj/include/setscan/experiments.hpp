#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace setscan {

inline constexpr const char kVersion[] = "0.1.0";

struct Table1Cell {
  int d = 2;
  double A = 0.0;
};

struct Table3Cell {
  int d = 2;
  double R1 = 0.0;
  long long n = 10000;
};

// Resolved harness configuration. Absent JSON fields take desk-scale defaults
// ("full": true selects the full-size grids and 200/190 decision counts).
struct ExperimentSpec {
  std::string experiment;  // table1 | figure4 | table3
  uint64_t seed = 1;
  int replications = 50;
  int threshold = 47;  // table1 decision count
  bool full = false;
  // table1
  std::vector<long long> n_ladder;
  std::vector<Table1Cell> cells;
  // figure4
  std::vector<int> dims;
  std::vector<long long> n_values;
  int m = 100;
  double R1 = 0.3;
  double lambda = 0.5;
  std::string backend = "bb";
  // table3
  std::vector<Table3Cell> t3cells;
  long long mc = 100000;
};

// Parses and validates the spec JSON, applying defaults. "custom" is accepted
// as the experiment id when exactly one grid (cells / n_values / t3cells) is
// given and dispatches to the matching runner. Throws std::invalid_argument
// on malformed JSON or invalid fields.
ExperimentSpec parse_experiment_spec(const std::string& json_text);

// Lower-dimensionality detection sweep: per (d, A) cell walks the n ladder
// until the decision threshold is met and reports the minimum n with its
// sample-size bracket.
nlohmann::json run_table1(const ExperimentSpec& spec);

// Denoising concentration study: per (d, n) emits m values of e = ||Z|| - 1
// for the denoised points and m raw e values, as CSV when csv_dir is
// nonempty, plus summary statistics and histogram counts.
nlohmann::json run_figure4(const ExperimentSpec& spec, const std::string& csv_dir);

// Minkowski content study: per (d, R1, n) cell reports the RMS relative
// error of the boundary-measure estimate over the replications.
nlohmann::json run_table3(const ExperimentSpec& spec);

// Dispatch on spec.experiment. Reports are reproducible from (spec, seed)
// except the *_seconds timing fields.
nlohmann::json run_experiment(const ExperimentSpec& spec, const std::string& csv_dir);

}  // namespace setscan
