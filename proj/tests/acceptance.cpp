// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --only N   run criterion N

#include "pagecurve/analysis.hpp"
#include "pagecurve/artifacts.hpp"
#include "pagecurve/commands.hpp"
#include "pagecurve/core_model.hpp"
#include "pagecurve/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace pagecurve;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> body;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double max_abs_diff(const ProbabilityVector& a, const ProbabilityVector& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

double total(const ProbabilityVector& p) {
  double s = 0.0;
  for (double v : p.values) s += v;
  return s;
}

ModelParams params_for(int n_p0, double z_max, int N_zmax, int N_max) {
  ModelParams p;
  p.n_p0 = n_p0;
  p.z_max = z_max;
  p.N_zmax = N_zmax;
  p.N_max = N_max;
  p.i_max = 50;
  return p;
}

double max_jump(const CurveSeries& s) {
  double jump = 0.0;
  for (std::size_t i = 1; i < s.rows.size(); ++i) jump = std::max(jump, std::abs(s.rows[i].S - s.rows[i - 1].S));
  return jump;
}

Outcome multiplicity() {
  const auto set = enumerate_fock_configs(2, 4);
  const std::set<std::vector<int>> got(set.configs.begin(), set.configs.end());
  const std::set<std::vector<int>> listed{{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}, {1, 1, 0, 0},
                                          {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}};
  const bool configs_ok = set.configs.size() == 10 && got == listed;
  const double from_log = std::exp(log_binomial(2, 4));
  const bool count_ok = std::round(from_log) == 10.0 && exact_multiset_count(2, 4) == 10u;
  return {configs_ok && count_ok, fmt("%zu configs, exp(log_binomial(2,4)) = %.15g", set.configs.size(), from_log)};
}

Outcome combinatorial_cost() {
  const double a = log_binomial(25, 500) / std::log(10.0);
  const double b = log_binomial(100, 2500) / std::log(10.0);
  return {a >= 41.0 && a <= 43.0 && b >= 178.0 && b <= 186.0,
          fmt("log10 C(524,25) = %.4f, log10 C(2599,100) = %.4f", a, b)};
}

Outcome oracle_consistency() {
  double worst_diff = 0.0;
  double worst_mass = 0.0;
  for (double z : {0.05, 0.1, 0.3, 0.5}) {
    for (int n_p0 = 0; n_p0 <= 6; ++n_p0) {
      for (int N = 1; N <= 4; ++N) {
        const auto brute = marginal_from_histories(enumerate_histories(z, n_p0, N), n_p0, z);
        const auto dp = exact_marginal_dp(z, n_p0, N);
        worst_diff = std::max(worst_diff, max_abs_diff(dp, brute));
        worst_mass = std::max({worst_mass, std::abs(total(dp) - 1.0), std::abs(total(brute) - 1.0)});
      }
    }
  }
  return {worst_diff <= 1e-14 && worst_mass <= 1e-12,
          fmt("max |dp - brute| = %.3g, max |mass - 1| = %.3g", worst_diff, worst_mass)};
}

Outcome reductions() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> rapidity(0.001, 0.95);
  std::uniform_int_distribution<int> pump(1, 200);
  std::uniform_int_distribution<int> slices(1, 5000);
  double worst = 0.0;
  for (int point = 0; point < 100; ++point) {
    const double z = rapidity(rng);
    const int n_p0 = pump(rng);
    const int N = slices(rng);
    worst = std::max(worst, max_abs_diff(oneshot_probs(z, n_p0, 1), truncated_geometric(z, n_p0)));
    worst = std::max(worst, max_abs_diff(refined_probs(z, n_p0, N, 1), oneshot_probs(z, n_p0, N)));
    worst = std::max(worst, max_abs_diff(seeded_probs(z, N - 1, n_p0), oneshot_probs(z, n_p0, N)));
  }
  return {worst <= 1e-14, fmt("max element-wise difference over 100 points = %.3g", worst)};
}

Outcome page_curve_shape() {
  const auto series = curve_run(params_for(25, 0.1, 200, 2000), Variant::refined);
  const auto& rows = series.rows;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].S > rows[peak].S) peak = i;
  }
  bool single_peak = true;
  for (std::size_t i = 1; i <= peak; ++i) single_peak = single_peak && rows[i].S >= rows[i - 1].S;
  for (std::size_t i = peak + 1; i < rows.size(); ++i) single_peak = single_peak && rows[i].S <= rows[i - 1].S;

  const double I_final = rows.back().I;
  int depletion_half = -1;
  int information_half = -1;
  for (const auto& r : rows) {
    if (depletion_half < 0 && r.nbar_frac >= 0.5) depletion_half = r.N;
    if (information_half < 0 && r.I >= 0.5 * I_final) information_half = r.N;
  }
  const double S_peak = rows[peak].S;
  const bool pass = rows.front().S < 0.05 && single_peak && S_peak > 0.3 && S_peak < 1.0 &&
                    rows.back().S < S_peak / 3.0 && I_final > 0.9 && depletion_half > 0 &&
                    depletion_half < information_half;
  return {pass, fmt("S(1) = %.3g, S_peak = %.4f at N = %d, single peak = %s, S(N_max) = %.4g, I(N_max) = %.4f, "
                    "nbar/n_p0 = 1/2 at N = %d, I = I_final/2 at N = %d",
                    rows.front().S, S_peak, rows[peak].N, single_peak ? "yes" : "no", rows.back().S, I_final,
                    depletion_half, information_half)};
}

Outcome refinement_tail() {
  bool pass = true;
  std::string detail;
  for (int n_p0 : {10, 25}) {
    const auto params = params_for(n_p0, 0.1, 200, 2000);
    const double S_oneshot = curve_run(params, Variant::oneshot).rows.back().S;
    const double S_refined = curve_run(params, Variant::refined).rows.back().S;
    const double z = rapidity_schedule(params, params.N_max).z;
    const auto tv = compare_at(z, n_p0, params.N_max, params.i_max);
    pass = pass && S_refined < S_oneshot && tv.tv_refined < tv.tv_oneshot;
    detail += fmt("n_p0=%d: S %.4g (refined) vs %.4g (oneshot), TV %.4g vs %.4g; ", n_p0, S_refined, S_oneshot,
                  tv.tv_refined, tv.tv_oneshot);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome early_thermality() {
  const auto series = curve_run(params_for(100, 0.1, 10000, 10000), Variant::refined);
  double worst = 0.0;
  int worst_N = 0;
  int rows_checked = 0;
  for (const auto& r : series.rows) {
    if (r.nbar_frac >= 0.05) continue;
    ++rows_checked;
    if (std::abs(r.I) > worst) {
      worst = std::abs(r.I);
      worst_N = r.N;
    }
  }
  return {rows_checked > 0 && worst < 0.05,
          fmt("%d rows with nbar/n_p0 < 0.05, max |I| = %.4f at N = %d", rows_checked, worst, worst_N)};
}

Outcome coherent_smoothing() {
  ModelParams params = params_for(25, 0.1, 200, 2000);
  params.log_base = LogBaseKind::natural;
  const auto fixed = curve_run(params, Variant::refined);
  const auto mixed = coherent_average(5.0, params, Variant::refined);
  double worst = 0.0;
  int worst_N = 0;
  for (std::size_t i = 0; i < fixed.rows.size(); ++i) {
    const double d = std::abs(mixed.rows[i].S - fixed.rows[i].S);
    if (d > worst) {
      worst = d;
      worst_N = fixed.rows[i].N;
    }
  }
  const double jump_mixed = max_jump(mixed);
  const double jump_fixed = max_jump(fixed);
  return {worst < 0.1 && jump_mixed <= jump_fixed,
          fmt("max |dS| = %.4f nats at N = %d, max jump %.6g (mixture) vs %.6g (fixed)", worst, worst_N, jump_mixed,
              jump_fixed)};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "pagecurve_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> mismatched;
  std::ostringstream log;
  int runs = 0;
  for (Variant v : {Variant::oneshot, Variant::refined, Variant::exact}) {
    RunConfig config;
    config.params = params_for(25, 0.1, 200, 2000);
    config.variant = v;
    config.dump_probs_every = 500;
    std::vector<std::string> csvs{"curve.csv", "probs_N0500.csv", "probs_N2000.csv"};
    for (const auto& dir : {root / "a", root / "b"}) {
      config.output_dir = dir / std::string(to_string(v));
      if (cmd_run(config, log) != 0) return {false, "run failed: " + log.str()};
      if (cmd_compare(config, log) != 0) return {false, "compare failed: " + log.str()};
      ++runs;
    }
    csvs.push_back("compare.csv");
    for (const auto& f : csvs) {
      const fs::path name = fs::path(std::string(to_string(v))) / f;
      if (read_text_file(root / "a" / name) != read_text_file(root / "b" / name)) mismatched.push_back(name.string());
    }
  }
  fs::remove_all(root);
  std::string detail = fmt("%d repeated runs, 12 CSV artifacts compared", runs);
  for (const auto& m : mismatched) detail += ", differs: " + m;
  return {mismatched.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "multiplicity check", 1e-3, multiplicity},
      {2, "combinatorial-cost anchor", 1e-3, combinatorial_cost},
      {3, "oracle consistency", 1.0, oracle_consistency},
      {4, "reduction identities", 1.0, reductions},
      {5, "page-curve shape", 10.0, page_curve_shape},
      {6, "refinement improves the tail", 30.0, refinement_tail},
      {7, "early-time thermality", 60.0, early_thermality},
      {8, "coherent-state smoothing", 60.0, coherent_smoothing},
      {9, "determinism", 0.0, determinism},
  };

  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds <= 0.0 || seconds < c.limit_seconds;
    const bool pass = outcome.pass && in_time;
    failures += pass ? 0 : 1;
    std::string timing = fmt("%.3f s", seconds);
    if (c.limit_seconds > 0.0) timing += fmt(" (limit %g s%s)", c.limit_seconds, in_time ? "" : ", exceeded");
    std::printf("criterion %d [%s] %s: %s; %s\n", c.id, pass ? "PASS" : "FAIL", c.title, outcome.detail.c_str(),
                timing.c_str());
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
