#include "pagecurve/core_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pagecurve {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_rapidity(double z, const char* who) {
  if (!(z >= 0.0 && z < 1.0)) {
    throw std::domain_error(std::string(who) + ": rapidity z must lie in [0, 1), got " + std::to_string(z));
  }
}

void require_nonnegative(int value, const char* who, const char* name) {
  if (value < 0) throw std::invalid_argument(std::string(who) + ": " + name + " must be >= 0");
}

void require_positive(int value, const char* who, const char* name) {
  if (value < 1) throw std::invalid_argument(std::string(who) + ": " + name + " must be >= 1");
}

// glibc's std::lgamma writes the global signgam; lgamma_r does not.
double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// Pascal triangle rows 0..kExactBinomialLimit-1.
const auto& pascal_table() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kExactBinomialLimit>, kExactBinomialLimit> t{};
    for (int n = 0; n < kExactBinomialLimit; ++n) {
      t[n][0] = 1;
      for (int r = 1; r <= n; ++r) t[n][r] = t[n - 1][r - 1] + (r < n ? t[n - 1][r] : 0);
    }
    return t;
  }();
  return table;
}

ProbabilityVector delta_at_zero(int M, double z, int N, Variant variant) {
  ProbabilityVector out;
  out.values.assign(static_cast<std::size_t>(M) + 1, 0.0);
  out.values[0] = 1.0;
  out.z = z;
  out.N = N;
  out.variant = variant;
  return out;
}

// ln[z^k C(k+modes-1, k)] for k = 0..n_p0. The (1-z)^modes prefactor is
// common to every k and cancels on normalization.
std::vector<double> negative_binomial_log_weights(double z, int n_p0, int modes) {
  std::vector<double> lw(static_cast<std::size_t>(n_p0) + 1);
  const double log_z = std::log(z);
  for (int k = 0; k <= n_p0; ++k) lw[k] = k * log_z + log_binomial(k, modes);
  return lw;
}

// Geometric over 0..M with ratio w in [0, 1]; w == 1 is the uniform limit.
std::vector<double> geometric_weights(double w, int M) {
  std::vector<double> p(static_cast<std::size_t>(M) + 1);
  if (w >= 1.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
    return p;
  }
  const double norm = (1.0 - w) / (1.0 - std::pow(w, M + 1));
  for (int n = 0; n <= M; ++n) p[n] = norm * std::pow(w, n);
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace

std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
  if (log_weights.empty()) throw std::invalid_argument("normalize_log_weights: empty input");
  const double peak = *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(peak)) throw std::domain_error("normalize_log_weights: no finite weight");
  std::vector<double> p(log_weights.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = log_weights[i] == kNegInf ? 0.0 : std::exp(log_weights[i] - peak);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

ProbabilityVector truncated_geometric(double z, int M) {
  require_rapidity(z, "truncated_geometric");
  require_nonnegative(M, "truncated_geometric", "M");
  ProbabilityVector out;
  out.values = geometric_weights(z, M);
  out.z = z;
  out.N = 1;
  out.variant = Variant::geometric;
  return out;
}

std::optional<std::uint64_t> exact_multiset_count(int k, int N) {
  if (k < 0 || N < 1 || k + N > kExactBinomialLimit) return std::nullopt;
  return pascal_table()[k + N - 1][k];
}

double log_binomial(int k, int N) {
  require_nonnegative(k, "log_binomial", "k");
  require_positive(N, "log_binomial", "N");
  if (k == 0 || N == 1) return 0.0;
  if (auto exact = exact_multiset_count(k, N)) return std::log(static_cast<double>(*exact));
  return log_gamma(static_cast<double>(k) + N) - log_gamma(static_cast<double>(k) + 1.0) -
         log_gamma(static_cast<double>(N));
}

ProbabilityVector oneshot_probs(double z, int n_p0, int N) {
  require_rapidity(z, "oneshot_probs");
  require_nonnegative(n_p0, "oneshot_probs", "n_p0");
  require_positive(N, "oneshot_probs", "N");
  if (z == 0.0) return delta_at_zero(n_p0, z, N, Variant::oneshot);
  ProbabilityVector out;
  out.values = normalize_log_weights(negative_binomial_log_weights(z, n_p0, N));
  out.z = z;
  out.N = N;
  out.variant = Variant::oneshot;
  return out;
}

ProbabilityVector refined_probs(double z, int n_p0, int N, int i_max) {
  require_rapidity(z, "refined_probs");
  require_nonnegative(n_p0, "refined_probs", "n_p0");
  require_positive(N, "refined_probs", "N");
  require_positive(i_max, "refined_probs", "i_max");
  if (z == 0.0) return delta_at_zero(n_p0, z, N, Variant::refined);

  auto lw = negative_binomial_log_weights(z, n_p0, N);
  const int depth = std::min(N - 1, i_max - 1);
  if (depth > 0) {
    for (int k = 0; k <= n_p0; ++k) lw[k] -= depth * std::log1p(-std::pow(z, n_p0 - k + 1));
  }
  ProbabilityVector out;
  out.values = normalize_log_weights(lw);
  out.z = z;
  out.N = N;
  out.variant = Variant::refined;
  return out;
}

ProbabilityVector seeded_probs(double z, int n_s0, int n_p0) {
  require_rapidity(z, "seeded_probs");
  require_nonnegative(n_s0, "seeded_probs", "n_s0");
  require_nonnegative(n_p0, "seeded_probs", "n_p0");
  if (z == 0.0) return delta_at_zero(n_p0, z, n_s0 + 1, Variant::seeded);
  ProbabilityVector out;
  out.values = normalize_log_weights(negative_binomial_log_weights(z, n_p0, n_s0 + 1));
  out.z = z;
  out.N = n_s0 + 1;
  out.variant = Variant::seeded;
  return out;
}

double longtime_ratio(double z) {
  const double root = std::sqrt(z);
  return 4.0 * std::exp(-std::numbers::pi) * (1.0 + root) / (1.0 - root);
}

ProbabilityVector longtime_probs(double z, int n_p0) {
  if (!(z >= kCriticalRapidity && z < 1.0)) {
    throw std::domain_error("longtime_probs: z must lie in [z*, 1), got " + std::to_string(z));
  }
  require_nonnegative(n_p0, "longtime_probs", "n_p0");
  const double f = longtime_ratio(z);
  ProbabilityVector out;
  out.values = geometric_weights(f / (1.0 + f), n_p0);
  out.z = z;
  out.N = 1;
  out.variant = Variant::longtime;
  return out;
}

RapidityPoint rapidity_schedule(const ModelParams& params, int N) {
  if (N < 0) throw std::invalid_argument("rapidity_schedule: N must be >= 0");
  if (params.schedule == Schedule::constant) return {N, params.z_max};
  const double peak = std::atanh(std::sqrt(params.z_max));
  const double build_up = std::tanh(std::sqrt(static_cast<double>(params.n_p0)) * N / params.N_zmax);
  const double t = std::tanh(peak * build_up);
  return {N, t * t};
}

}  // namespace pagecurve
