#include "pagecurve/app.hpp"

#include "pagecurve/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <thread>

namespace pagecurve {
namespace {

struct Options {
  std::vector<int> n_p0{25};
  std::vector<double> z_max{0.1};
  std::vector<int> N_zmax{200};
  int N_max = 2000;
  int i_max = 50;
  std::string variant = "refined";
  std::string schedule = "ramp";
  std::string log_base = "np0p1";
  std::optional<double> alpha;
  std::string out = "out";
  std::optional<int> dump_probs_every;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

RunConfig base_config(const Options& o) {
  RunConfig c;
  c.params.n_p0 = o.n_p0.empty() ? 0 : o.n_p0.front();
  c.params.z_max = o.z_max.empty() ? 0.0 : o.z_max.front();
  c.params.N_zmax = o.N_zmax.empty() ? 0 : o.N_zmax.front();
  c.params.N_max = o.N_max;
  c.params.i_max = o.i_max;
  c.params.schedule = *parse_schedule(o.schedule);
  c.params.log_base = *parse_log_base(o.log_base);
  c.variant = *parse_run_variant(o.variant);
  c.alpha = o.alpha;
  c.output_dir = o.out;
  c.dump_probs_every = o.dump_probs_every;
  c.workers = o.workers;
  return c;
}

bool single_point(const Options& o, std::ostream& log, std::string_view command) {
  if (o.n_p0.size() == 1 && o.z_max.size() == 1 && o.N_zmax.size() == 1) return true;
  log << command << ": --np0, --zmax and --nzmax take one value each (use sweep for grids)\n";
  return false;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& log) {
  CLI::App app{"One-shot decoupling emission statistics and Page information curves", "pagecurve"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersionTag));
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  Options o;
  app.add_option("--np0", o.n_p0, "Initial pump occupation (comma list for sweep)")->delimiter(',');
  app.add_option("--zmax", o.z_max, "Peak rapidity z_max in (0,1) (comma list for sweep)")->delimiter(',');
  app.add_option("--nzmax", o.N_zmax, "Schedule build-up scale N_zmax (comma list for sweep)")->delimiter(',');
  app.add_option("--nmax", o.N_max, "Number of timeslices N_max");
  app.add_option("--imax", o.i_max, "Correction depth i_max of the refined variant");
  app.add_option("--variant", o.variant, "Distribution: oneshot | refined | exact")
      ->check(CLI::IsMember({"oneshot", "refined", "exact"}));
  app.add_option("--schedule", o.schedule, "Rapidity schedule: ramp | constant")
      ->check(CLI::IsMember({"ramp", "constant"}));
  app.add_option("--log-base", o.log_base, "Entropy logarithm: np0p1 (base n_p0+1) | nat")
      ->check(CLI::IsMember({"np0p1", "nat"}));
  app.add_option("--alpha", o.alpha, "Coherent-state pump amplitude (mean pump size alpha^2)");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--dump-probs-every", o.dump_probs_every, "Write probs_N####.csv every this many slices");
  app.add_option("--workers", o.workers, "Concurrent sweep points");

  auto* run = app.add_subcommand("run", "Compute curve.csv for one configuration");
  auto* compare = app.add_subcommand("compare", "Distance of the closed forms to the exact oracle (compare.csv)");
  auto* sweep = app.add_subcommand("sweep", "Run a grid over --np0 x --zmax x --nzmax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cout, log);
  }

  if (*run) {
    if (!single_point(o, log, "run")) return 2;
    return cmd_run(base_config(o), log);
  }
  if (*compare) {
    if (!single_point(o, log, "compare")) return 2;
    return cmd_compare(base_config(o), log);
  }
  if (*sweep) {
    SweepGrid grid;
    grid.base = base_config(o);
    grid.n_p0 = o.n_p0;
    grid.z_max = o.z_max;
    grid.N_zmax = o.N_zmax;
    return cmd_sweep(grid, log);
  }
  return 2;
}

}  // namespace pagecurve
