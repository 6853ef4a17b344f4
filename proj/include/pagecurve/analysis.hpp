#pragma once

// Entropy, effective thermal entropy and Page information over timeslices.

#include "pagecurve/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace pagecurve {

struct CurveRow {
  int N = 0;
  double z = 0.0;
  double S = 0.0;
  double S_thermal = 0.0;
  double I = 0.0;
  double nbar = 0.0;
  double nbar_frac = 0.0;
};

struct CurveSeries {
  std::vector<CurveRow> rows;
};

/// Poissonian pump-size weights e^{-alpha^2} alpha^{2n} / n!, n = 0..n_cut.
struct CoherentWeights {
  double alpha = 0.0;
  std::vector<double> weights;
  int n_cut = 0;
  /// Poisson mass captured before renormalization.
  double captured_mass = 1.0;

  /// Smallest n_cut whose cumulative Poisson mass reaches 1 - 1e-12, with
  /// weights renormalized over the kept support. Throws std::length_error
  /// if n_cut would exceed max_cut.
  static CoherentWeights poisson(double alpha, int max_cut = 1'000'000);
  /// All weight on a single pump size.
  static CoherentWeights delta(int n_p0);

  /// Mean pump size sum_n n w_n.
  double mean() const;
};

/// Called with each row's distribution, in row order.
using DistributionObserver = std::function<void(const ProbabilityVector&)>;

/// -sum_k P_k log P_k in the given base, with 0 log 0 = 0.
double entropy(std::span<const double> p, EntropyBase base);
double entropy(const ProbabilityVector& p, EntropyBase base);

/// Same spectrum indexed by remaining pump quanta n_p0 - k.
ProbabilityVector pump_occupation(const ProbabilityVector& p);

double mean_emitted(const ProbabilityVector& p);

/// Entropy of the geometric with ratio nbar/(nbar+1), truncated to
/// 0..n_p0 and renormalized.
double thermal_entropy(double nbar, int n_p0, EntropyBase base);
/// Entropy of the untruncated geometric with mean nbar.
double thermal_entropy_untruncated(double nbar, EntropyBase base);

/// S_thermal - S, unclamped.
double page_information(double S_thermal, double S);

/// Distribution of a run variant (oneshot, refined or exact) at fixed z.
ProbabilityVector variant_distribution(Variant variant, double z, int n_p0, int N, int i_max);

/// One row per slice N = 1..N_max. The exact variant evaluates the exact
/// marginal with all N slices at z(N), like the closed forms do.
CurveSeries curve_run(const ModelParams& params, Variant variant, const DistributionObserver& observer = {});

/// Entropy curve of the pump-size mixture sum_n w_n P^{(N, n)} over k.
/// Member n uses the schedule for pump size n. The logarithm base comes
/// from params (natural for the coherent-state figures).
CurveSeries coherent_average(const CoherentWeights& weights, const ModelParams& params, Variant variant,
                             const DistributionObserver& observer = {});
CurveSeries coherent_average(double alpha, const ModelParams& params, Variant variant,
                             const DistributionObserver& observer = {});

}  // namespace pagecurve
