#include "pagecurve/analysis.hpp"

#include "pagecurve/core_model.hpp"
#include "pagecurve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace pagecurve {
namespace {

// Produces one variant's distribution per slice.
class SliceSource {
 public:
  SliceSource(Variant variant, int n_p0, int i_max) : variant_(variant), n_p0_(n_p0), i_max_(i_max) {
    if (variant == Variant::exact) cursor_.emplace(n_p0);
  }

  ProbabilityVector at(double z, int N) {
    if (cursor_) return cursor_->at(z, N);
    return variant_distribution(variant_, z, n_p0_, N, i_max_);
  }

 private:
  Variant variant_;
  int n_p0_;
  int i_max_;
  std::optional<ExactMarginalCursor> cursor_;
};

CurveRow make_row(const ProbabilityVector& p, int N, double z, int thermal_top, double pump_size,
                  EntropyBase base) {
  CurveRow row;
  row.N = N;
  row.z = z;
  row.S = entropy(p, base);
  row.nbar = mean_emitted(p);
  row.S_thermal = thermal_entropy(row.nbar, thermal_top, base);
  row.I = page_information(row.S_thermal, row.S);
  row.nbar_frac = row.nbar / pump_size;
  return row;
}

void require_run_variant(Variant variant) {
  if (variant != Variant::oneshot && variant != Variant::refined && variant != Variant::exact) {
    throw std::invalid_argument("run variant must be oneshot, refined or exact, got " +
                                std::string(to_string(variant)));
  }
}

}  // namespace

double entropy(std::span<const double> p, EntropyBase base) {
  double nats = 0.0;
  for (double v : p) {
    if (v > 0.0) nats -= v * std::log(v);
  }
  return nats / base.log_divisor();
}

double entropy(const ProbabilityVector& p, EntropyBase base) { return entropy(std::span(p.values), base); }

ProbabilityVector pump_occupation(const ProbabilityVector& p) {
  ProbabilityVector out = p;
  std::reverse(out.values.begin(), out.values.end());
  return out;
}

double mean_emitted(const ProbabilityVector& p) {
  double mean = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) mean += static_cast<double>(k) * p[k];
  return mean;
}

double thermal_entropy(double nbar, int n_p0, EntropyBase base) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("thermal_entropy: nbar must be >= 0");
  if (n_p0 < 0) throw std::invalid_argument("thermal_entropy: n_p0 must be >= 0");
  const double z_thermal = nbar / (nbar + 1.0);
  if (!(z_thermal < 1.0)) return std::log(n_p0 + 1.0) / base.log_divisor();
  return entropy(truncated_geometric(z_thermal, n_p0), base);
}

double thermal_entropy_untruncated(double nbar, EntropyBase base) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("thermal_entropy_untruncated: nbar must be >= 0");
  if (nbar == 0.0) return 0.0;
  // (n+1) ln(n+1) - n ln n
  return (std::log1p(nbar) + nbar * std::log1p(1.0 / nbar)) / base.log_divisor();
}

double page_information(double S_thermal, double S) { return S_thermal - S; }

ProbabilityVector variant_distribution(Variant variant, double z, int n_p0, int N, int i_max) {
  switch (variant) {
    case Variant::oneshot: return oneshot_probs(z, n_p0, N);
    case Variant::refined: return refined_probs(z, n_p0, N, i_max);
    case Variant::exact: return exact_marginal_dp(z, n_p0, N);
    default: require_run_variant(variant);
  }
  return {};
}

CurveSeries curve_run(const ModelParams& params, Variant variant, const DistributionObserver& observer) {
  params.validate();
  require_run_variant(variant);
  const EntropyBase base = EntropyBase::from(params.log_base, params.n_p0);
  SliceSource source(variant, params.n_p0, params.i_max);

  CurveSeries series;
  series.rows.reserve(static_cast<std::size_t>(params.N_max));
  for (int N = 1; N <= params.N_max; ++N) {
    const double z = rapidity_schedule(params, N).z;
    const ProbabilityVector p = source.at(z, N);
    if (observer) observer(p);
    series.rows.push_back(make_row(p, N, z, params.n_p0, params.n_p0, base));
  }
  return series;
}

CoherentWeights CoherentWeights::poisson(double alpha, int max_cut) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("CoherentWeights::poisson: alpha must be > 0");
  const double lambda = alpha * alpha;
  const double log_lambda = std::log(lambda);
  constexpr long double kTarget = 1.0L - 1e-12L;

  CoherentWeights out;
  out.alpha = alpha;
  long double cumulative = 0.0L;
  double log_weight = -lambda;
  for (int n = 0;; ++n) {
    if (n > max_cut) {
      throw std::length_error("CoherentWeights::poisson: truncation index exceeds " + std::to_string(max_cut));
    }
    if (n > 0) log_weight += log_lambda - std::log(static_cast<double>(n));
    const double w = std::exp(log_weight);
    out.weights.push_back(w);
    cumulative += w;
    if (cumulative >= kTarget) break;
  }
  out.n_cut = static_cast<int>(out.weights.size()) - 1;
  out.captured_mass = static_cast<double>(cumulative);
  for (double& w : out.weights) w = static_cast<double>(w / cumulative);
  return out;
}

CoherentWeights CoherentWeights::delta(int n_p0) {
  if (n_p0 < 0) throw std::invalid_argument("CoherentWeights::delta: n_p0 must be >= 0");
  CoherentWeights out;
  out.alpha = std::sqrt(static_cast<double>(n_p0));
  out.weights.assign(static_cast<std::size_t>(n_p0) + 1, 0.0);
  out.weights[n_p0] = 1.0;
  out.n_cut = n_p0;
  return out;
}

double CoherentWeights::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < weights.size(); ++n) m += static_cast<double>(n) * weights[n];
  return m;
}

CurveSeries coherent_average(const CoherentWeights& weights, const ModelParams& params, Variant variant,
                             const DistributionObserver& observer) {
  params.validate();
  require_run_variant(variant);
  if (weights.weights.empty()) throw std::invalid_argument("coherent_average: empty weights");
  const EntropyBase base = EntropyBase::from(params.log_base, params.n_p0);
  const double pump_size = weights.mean();
  if (!(pump_size > 0.0)) throw std::invalid_argument("coherent_average: mean pump size must be > 0");

  struct Member {
    Member(const ModelParams& params, int n, double w, Variant variant)
        : weight(w), schedule(params), source(variant, n, params.i_max) {
      schedule.n_p0 = n;
    }
    double weight;
    ModelParams schedule;
    SliceSource source;
  };
  std::vector<Member> members;
  members.reserve(weights.weights.size());
  for (int n = 0; n <= weights.n_cut; ++n) {
    if (weights.weights[n] > 0.0) members.emplace_back(params, n, weights.weights[n], variant);
  }

  CurveSeries series;
  series.rows.reserve(static_cast<std::size_t>(params.N_max));
  std::vector<double> mixture(static_cast<std::size_t>(weights.n_cut) + 1);
  for (int N = 1; N <= params.N_max; ++N) {
    std::fill(mixture.begin(), mixture.end(), 0.0);
    for (auto& member : members) {
      const double z = rapidity_schedule(member.schedule, N).z;
      const ProbabilityVector p = member.source.at(z, N);
      for (std::size_t k = 0; k < p.size(); ++k) mixture[k] += member.weight * p[k];
    }
    ProbabilityVector mixed;
    mixed.values = mixture;
    mixed.z = rapidity_schedule(params, N).z;
    mixed.N = N;
    mixed.variant = Variant::coherent;
    if (observer) observer(mixed);
    series.rows.push_back(make_row(mixed, N, mixed.z, weights.n_cut, pump_size, base));
  }
  return series;
}

CurveSeries coherent_average(double alpha, const ModelParams& params, Variant variant,
                             const DistributionObserver& observer) {
  return coherent_average(CoherentWeights::poisson(alpha), params, variant, observer);
}

}  // namespace pagecurve
