#include "pagecurve/commands.hpp"

#include "pagecurve/analysis.hpp"
#include "pagecurve/core_model.hpp"
#include "pagecurve/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pagecurve {
namespace fs = std::filesystem;
namespace {

using Clock = std::chrono::steady_clock;

// Upper bound on kernel multiply-adds a single exact run may spend.
constexpr double kMaxExactWork = 2e10;

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["n_p0"] = c.params.n_p0;
  j["z_max"] = c.params.z_max;
  j["N_max"] = c.params.N_max;
  j["N_zmax"] = c.params.N_zmax;
  j["i_max"] = c.params.i_max;
  j["log_base"] = std::string(to_string(c.params.log_base));
  j["schedule"] = std::string(to_string(c.params.schedule));
  j["variant"] = std::string(to_string(c.variant));
  j["alpha"] = c.alpha ? nlohmann::json(*c.alpha) : nlohmann::json(nullptr);
  j["dump_probs_every"] = c.dump_probs_every ? nlohmann::json(*c.dump_probs_every) : nlohmann::json(nullptr);
  j["workers"] = c.workers;
  j["output_dir"] = c.output_dir.string();
  return j;
}

void write_manifest(const fs::path& dir, std::string_view command, nlohmann::json config,
                    const std::vector<ArtifactRecord>& artifacts, Clock::time_point start) {
  nlohmann::json manifest;
  manifest["version"] = std::string(kVersionTag);
  manifest["command"] = std::string(command);
  manifest["config"] = std::move(config);
  nlohmann::json files = nlohmann::json::array();
  for (const auto& a : artifacts) files.push_back({{"file", a.file}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  manifest["artifacts"] = std::move(files);
  manifest["duration_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

// Kernel work of an exact run: one O(n_p0^2) slice per step, plus a full
// rebuild whenever the scheduled z changes.
double exact_run_work(const ModelParams& params) {
  const double per_slice = 0.5 * (params.n_p0 + 1.0) * (params.n_p0 + 2.0);
  double work = 0.0;
  double previous = -1.0;
  for (int N = 1; N <= params.N_max; ++N) {
    const double z = rapidity_schedule(params, N).z;
    work += (z == previous ? 1.0 : static_cast<double>(N)) * per_slice;
    previous = z;
  }
  return work;
}

void require_exact_feasible(const ModelParams& params) {
  if (exact_run_work(params) > kMaxExactWork) {
    throw std::invalid_argument("exact oracle infeasible for these parameters (schedule never settles); "
                                "use --schedule constant or a smaller N_zmax/N_max");
  }
}

// Exit codes: 2 for rejected configuration, 1 for everything else.
template <typename Body>
int guarded(std::string_view command, std::ostream& log, Body&& body) {
  try {
    body();
    return 0;
  } catch (const std::invalid_argument& e) {
    log << command << ": invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    log << command << ": invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    log << command << ": " << e.what() << '\n';
    return 1;
  }
}

std::string format_grid_value(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%g", v);
  return buf.data();
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  if (variant != Variant::oneshot && variant != Variant::refined && variant != Variant::exact) {
    throw std::invalid_argument("variant must be oneshot, refined or exact");
  }
  if (alpha && !(*alpha > 0.0 && std::isfinite(*alpha))) throw std::invalid_argument("alpha must be > 0");
  if (dump_probs_every && *dump_probs_every < 1) throw std::invalid_argument("dump-probs-every must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (output_dir.empty()) throw std::invalid_argument("output directory must be given");
}

CompareRow compare_at(double z, int n_p0, int N, int i_max) {
  const ProbabilityVector exact = exact_marginal_dp(z, n_p0, N);
  return {N, approximation_error(oneshot_probs(z, n_p0, N), exact),
          approximation_error(refined_probs(z, n_p0, N, i_max), exact)};
}

std::vector<CompareRow> compare_series(const ModelParams& params) {
  params.validate();
  ExactMarginalCursor cursor(params.n_p0);
  std::vector<CompareRow> rows;
  rows.reserve(static_cast<std::size_t>(params.N_max));
  for (int N = 1; N <= params.N_max; ++N) {
    const double z = rapidity_schedule(params, N).z;
    const ProbabilityVector exact = cursor.at(z, N);
    rows.push_back({N, approximation_error(oneshot_probs(z, params.n_p0, N), exact),
                    approximation_error(refined_probs(z, params.n_p0, N, params.i_max), exact)});
  }
  return rows;
}

int cmd_run(const RunConfig& config, std::ostream& log) {
  const auto start = Clock::now();
  return guarded("run", log, [&] {
    config.validate();
    if (config.variant == Variant::exact && !config.alpha) require_exact_feasible(config.params);
    fs::create_directories(config.output_dir);

    std::vector<ArtifactRecord> artifacts;
    DistributionObserver observer;
    if (config.dump_probs_every) {
      const int every = *config.dump_probs_every;
      observer = [&artifacts, &config, every](const ProbabilityVector& p) {
        if (p.N % every == 0) artifacts.push_back(write_artifact(config.output_dir, probs_filename(p.N), probs_csv(p)));
      };
    }
    const CurveSeries series = config.alpha ? coherent_average(*config.alpha, config.params, config.variant, observer)
                                            : curve_run(config.params, config.variant, observer);
    artifacts.push_back(write_artifact(config.output_dir, "curve.csv", curve_csv(series)));
    write_manifest(config.output_dir, "run", config_json(config), artifacts, start);
  });
}

int cmd_compare(const RunConfig& config, std::ostream& log) {
  const auto start = Clock::now();
  return guarded("compare", log, [&] {
    config.validate();
    if (config.alpha) throw std::invalid_argument("compare does not take --alpha");
    require_exact_feasible(config.params);
    fs::create_directories(config.output_dir);
    const std::vector<ArtifactRecord> artifacts = {
        write_artifact(config.output_dir, "compare.csv", compare_csv(compare_series(config.params)))};
    write_manifest(config.output_dir, "compare", config_json(config), artifacts, start);
  });
}

std::string sweep_point_name(int n_p0, double z_max, int N_zmax) {
  return "np0-" + std::to_string(n_p0) + "_zmax-" + format_grid_value(z_max) + "_nzmax-" + std::to_string(N_zmax);
}

int cmd_sweep(const SweepGrid& grid, std::ostream& log) {
  const auto start = Clock::now();
  if (grid.size() == 0) {
    log << "sweep: invalid configuration: empty grid\n";
    return 2;
  }

  std::vector<RunConfig> points;
  for (int n_p0 : grid.n_p0) {
    for (double z_max : grid.z_max) {
      for (int N_zmax : grid.N_zmax) {
        RunConfig c = grid.base;
        c.params.n_p0 = n_p0;
        c.params.z_max = z_max;
        c.params.N_zmax = N_zmax;
        c.output_dir = grid.base.output_dir / sweep_point_name(n_p0, z_max, N_zmax);
        points.push_back(std::move(c));
      }
    }
  }

  int setup = guarded("sweep", log, [&] { fs::create_directories(grid.base.output_dir); });
  if (setup != 0) return setup;

  struct Outcome {
    int code = 0;
    std::string log;
  };
  std::vector<Outcome> outcomes(points.size());
  std::atomic<std::size_t> next{0};
  const std::size_t worker_count = std::min<std::size_t>(std::max(grid.base.workers, 1), points.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
          std::ostringstream point_log;
          outcomes[i].code = cmd_run(points[i], point_log);
          outcomes[i].log = point_log.str();
        }
      });
    }
  }

  bool all_ok = true;
  std::string index = "point,np0,zmax,nzmax,directory,status\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i].params;
    const bool ok = outcomes[i].code == 0;
    all_ok = all_ok && ok;
    index += std::to_string(i) + ',' + std::to_string(p.n_p0) + ',' + format_number(p.z_max) + ',' +
             std::to_string(p.N_zmax) + ',' + points[i].output_dir.filename().string() + ',' +
             (ok ? "ok" : "failed") + '\n';
    if (!ok) log << "sweep point " << points[i].output_dir.filename().string() << ": " << outcomes[i].log;
  }

  const int written = guarded("sweep", log, [&] {
    nlohmann::json config = config_json(grid.base);
    config["grid"] = {{"n_p0", grid.n_p0}, {"z_max", grid.z_max}, {"N_zmax", grid.N_zmax}};
    write_manifest(grid.base.output_dir, "sweep", std::move(config),
                   {write_artifact(grid.base.output_dir, "index.csv", index)}, start);
  });
  if (written != 0) return written;
  return all_ok ? 0 : 1;
}

}  // namespace pagecurve
