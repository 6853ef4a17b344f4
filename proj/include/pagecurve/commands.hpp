#pragma once

// Run, compare and sweep commands. Each writes its artifacts plus a
// manifest.json into an output directory and returns a process exit code.

#include "pagecurve/artifacts.hpp"
#include "pagecurve/types.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pagecurve {

inline constexpr std::string_view kVersionTag = "pagecurve-0.1.0";

struct RunConfig {
  ModelParams params;
  Variant variant = Variant::refined;
  std::optional<double> alpha;
  std::filesystem::path output_dir = "out";
  std::optional<int> dump_probs_every;
  int workers = 1;

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

struct SweepGrid {
  RunConfig base;
  std::vector<int> n_p0;
  std::vector<double> z_max;
  std::vector<int> N_zmax;

  std::size_t size() const { return n_p0.size() * z_max.size() * N_zmax.size(); }
};

/// TV distances of the closed forms to the exact marginal at one slice.
CompareRow compare_at(double z, int n_p0, int N, int i_max);
/// compare_at over N = 1..N_max with the run's schedule.
std::vector<CompareRow> compare_series(const ModelParams& params);

/// curve.csv, optional probs_N####.csv dumps and manifest.json.
int cmd_run(const RunConfig& config, std::ostream& log);
/// compare.csv and manifest.json.
int cmd_compare(const RunConfig& config, std::ostream& log);
/// One subdirectory per grid point (each a cmd_run output) plus index.csv.
/// Points run on up to base.workers threads.
int cmd_sweep(const SweepGrid& grid, std::ostream& log);

/// Subdirectory name of a sweep point, e.g. "np0-25_zmax-0.1_nzmax-200".
std::string sweep_point_name(int n_p0, double z_max, int N_zmax);

}  // namespace pagecurve
