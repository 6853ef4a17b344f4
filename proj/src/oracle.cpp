#include "pagecurve/oracle.hpp"

#include "pagecurve/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pagecurve {
namespace {

void require_rapidity(double z, const char* who) {
  if (!(z >= 0.0 && z < 1.0)) {
    throw std::domain_error(std::string(who) + ": rapidity z must lie in [0, 1), got " + std::to_string(z));
  }
}

// p_n^{(m)} for a pump holding m quanta, in extended precision.
long double emission_probability(int n, int m, long double z) {
  return (1.0L - z) * std::pow(z, static_cast<long double>(n)) /
         (1.0L - std::pow(z, static_cast<long double>(m + 1)));
}

void extend_histories(double z, int remaining, int N, std::vector<int>& prefix, long double probability,
                      std::vector<EmissionHistory>& out) {
  if (static_cast<int>(prefix.size()) == N) {
    out.push_back({prefix, static_cast<double>(probability)});
    return;
  }
  for (int n = 0; n <= remaining; ++n) {
    prefix.push_back(n);
    extend_histories(z, remaining - n, N, prefix, probability * emission_probability(n, remaining, z), out);
    prefix.pop_back();
  }
}

void extend_compositions(int remaining, int parts, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    prefix.push_back(n);
    extend_compositions(remaining - n, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

ExactMarginalChain::ExactMarginalChain(int n_p0) {
  if (n_p0 < 0) throw std::invalid_argument("ExactMarginalChain: n_p0 must be >= 0");
  state_.assign(static_cast<std::size_t>(n_p0) + 1, 0.0L);
  scratch_.assign(state_.size(), 0.0L);
  state_[0] = 1.0L;
}

void ExactMarginalChain::step(double z) {
  require_rapidity(z, "ExactMarginalChain::step");
  const int top = n_p0();
  const long double zl = z;
  std::fill(scratch_.begin(), scratch_.end(), 0.0L);
  for (int k = 0; k <= top; ++k) {
    const long double mass = state_[k];
    if (mass == 0.0L) continue;
    const int m = top - k;
    // m == 0 (or z == 0) keeps all mass in place.
    long double term = mass * (1.0L - zl) / (1.0L - std::pow(zl, static_cast<long double>(m + 1)));
    for (int n = 0; n <= m; ++n) {
      scratch_[k + n] += term;
      term *= zl;
    }
  }
  state_.swap(scratch_);
  ++slices_;
  last_z_ = z;
}

long double ExactMarginalChain::total_mass() const {
  long double sum = 0.0L;
  for (long double v : state_) sum += v;
  return sum;
}

ProbabilityVector ExactMarginalChain::distribution() const {
  ProbabilityVector out;
  out.values.reserve(state_.size());
  for (long double v : state_) out.values.push_back(static_cast<double>(v));
  out.z = last_z_;
  out.N = slices_;
  out.variant = Variant::exact;
  return out;
}

ProbabilityVector ExactMarginalCursor::at(double z, int N) {
  if (N < 1) throw std::invalid_argument("ExactMarginalCursor::at: N must be >= 1");
  if (!chain_ || z != z_ || chain_->slices() != N - 1) {
    chain_.emplace(n_p0_);
    for (int i = 0; i < N - 1; ++i) chain_->step(z);
  }
  chain_->step(z);
  z_ = z;
  return chain_->distribution();
}

ProbabilityVector exact_marginal_dp(double z, int n_p0, int N) {
  require_rapidity(z, "exact_marginal_dp");
  if (N < 1) throw std::invalid_argument("exact_marginal_dp: N must be >= 1");
  ExactMarginalChain chain(n_p0);
  for (int i = 0; i < N; ++i) chain.step(z);
  return chain.distribution();
}

std::vector<EmissionHistory> enumerate_histories(double z, int n_p0, int N) {
  require_rapidity(z, "enumerate_histories");
  if (n_p0 < 0) throw std::invalid_argument("enumerate_histories: n_p0 must be >= 0");
  if (N < 1) throw std::invalid_argument("enumerate_histories: N must be >= 1");
  if (N * std::log10(n_p0 + 1.0) > std::log10(kMaxHistories)) {
    throw SizeGuardError("enumerate_histories: (n_p0+1)^N = " + std::to_string(n_p0 + 1) + "^" +
                         std::to_string(N) + " exceeds the enumeration cap");
  }
  std::vector<EmissionHistory> out;
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(N));
  extend_histories(z, n_p0, N, prefix, 1.0L, out);
  return out;
}

ProbabilityVector marginal_from_histories(const std::vector<EmissionHistory>& histories, int n_p0, double z) {
  std::vector<long double> acc(static_cast<std::size_t>(n_p0) + 1, 0.0L);
  int N = 0;
  for (const auto& h : histories) {
    int total = 0;
    for (int n : h.counts) total += n;
    if (total > n_p0) throw std::invalid_argument("marginal_from_histories: history exceeds n_p0");
    acc[total] += h.probability;
    N = static_cast<int>(h.counts.size());
  }
  ProbabilityVector out;
  for (long double v : acc) out.values.push_back(static_cast<double>(v));
  out.z = z;
  out.N = N;
  out.variant = Variant::exact;
  return out;
}

double nested_sum_weight(const std::vector<int>& counts, double z, int n_p0) {
  const long double zl = z;
  const int N = static_cast<int>(counts.size());
  long double weight = std::pow(1.0L - zl, static_cast<long double>(N));
  int running = 0;
  for (int n : counts) {
    weight /= 1.0L - std::pow(zl, static_cast<long double>(n_p0 - running + 1));
    running += n;
  }
  return static_cast<double>(weight * std::pow(zl, static_cast<long double>(running)));
}

FockConfigSet enumerate_fock_configs(int k, int N) {
  if (k < 0) throw std::invalid_argument("enumerate_fock_configs: k must be >= 0");
  if (N < 1) throw std::invalid_argument("enumerate_fock_configs: N must be >= 1");
  if (log_binomial(k, N) > std::log(kMaxFockConfigs)) {
    throw SizeGuardError("enumerate_fock_configs: C(k+N-1, k) exceeds the enumeration cap");
  }
  FockConfigSet out{k, N, {}};
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(N));
  extend_compositions(k, N, prefix, out.configs);
  return out;
}

double approximation_error(const ProbabilityVector& approx, const ProbabilityVector& exact) {
  if (approx.size() != exact.size()) {
    throw std::invalid_argument("approximation_error: length mismatch (" + std::to_string(approx.size()) +
                                " vs " + std::to_string(exact.size()) + ")");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < approx.size(); ++k) total += std::abs(approx[k] - exact[k]);
  return 0.5 * total;
}

}  // namespace pagecurve
