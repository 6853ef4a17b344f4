#pragma once

// Exact reference computations for the one-shot decoupling state.
//
// The reduced pump density matrix is diagonal in the emitted count, and the
// emission in each slice depends only on the quanta still in the pump. The
// pump marginal is therefore a Markov chain: a pump holding m quanta emits
// n <= m of them with probability (1-z) z^n / (1 - z^(m+1)). Iterating that
// kernel gives the exact marginal in O(N * n_p0^2); enumerate_histories
// checks it by brute force on small instances.

#include "pagecurve/types.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pagecurve {

/// Thrown when an enumeration would exceed its size cap.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr double kMaxHistories = 1e7;
inline constexpr double kMaxFockConfigs = 1e6;

struct EmissionHistory {
  std::vector<int> counts;  // n_1..n_N
  double probability = 0.0;
};

struct FockConfigSet {
  int k = 0;
  int N = 0;
  std::vector<std::vector<int>> configs;
};

/// Exact pump marginal, advanced one slice at a time. Each slice may use
/// its own rapidity.
class ExactMarginalChain {
 public:
  explicit ExactMarginalChain(int n_p0);

  /// Applies one emission slice at rapidity z in [0, 1).
  void step(double z);

  int slices() const { return slices_; }
  int n_p0() const { return static_cast<int>(state_.size()) - 1; }
  /// Sum of the state; stays 1 up to rounding since every slice is unitary.
  long double total_mass() const;
  /// Current distribution over emitted count, not renormalized; `z` is the
  /// last step's.
  ProbabilityVector distribution() const;

 private:
  std::vector<long double> state_;
  std::vector<long double> scratch_;
  int slices_ = 0;
  double last_z_ = 0.0;
};

/// Exact marginal at (z, N) for a run over consecutive N. Advances the
/// chain by one slice when z is unchanged and rebuilds it otherwise, so a
/// saturated schedule costs O(n_p0^2) per slice.
class ExactMarginalCursor {
 public:
  explicit ExactMarginalCursor(int n_p0) : n_p0_(n_p0) {}

  ProbabilityVector at(double z, int N);

 private:
  int n_p0_;
  std::optional<ExactMarginalChain> chain_;
  double z_ = 0.0;
};

/// Exact distribution of the emitted count after N slices at fixed z.
ProbabilityVector exact_marginal_dp(double z, int n_p0, int N);

/// Every emission history (n_1..n_N) with sum <= n_p0, in lexicographic
/// order, with probability prod_i p_{n_i}^{(m_{i-1})}. Refuses with
/// SizeGuardError when (n_p0+1)^N exceeds kMaxHistories.
std::vector<EmissionHistory> enumerate_histories(double z, int n_p0, int N);

/// Sums history probabilities by total emitted count.
ProbabilityVector marginal_from_histories(const std::vector<EmissionHistory>& histories, int n_p0, double z);

/// Squared amplitude of one history written as the re-indexed nested sum:
/// (1-z)^N z^{j_N} prod_i (1 - z^{n_p0 - j_{i-1} + 1})^-1 with j_i the
/// running total. Equal to the history probability.
double nested_sum_weight(const std::vector<int>& counts, double z, int n_p0);

/// All weak compositions of k into N parts. Refuses with SizeGuardError
/// when C(k+N-1, k) exceeds kMaxFockConfigs.
FockConfigSet enumerate_fock_configs(int k, int N);

/// Total variation distance 1/2 sum |P_k - Q_k|.
double approximation_error(const ProbabilityVector& approx, const ProbabilityVector& exact);

}  // namespace pagecurve
