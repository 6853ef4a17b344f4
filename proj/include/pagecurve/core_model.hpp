#pragma once

// Closed-form emission distributions of the one-shot decoupling model.
//
// Every distribution is returned normalized over its finite support.
// Weights are built in log space, shifted by their maximum, exponentiated
// and renormalized, so that large arguments (N ~ 1e4, n_p0 ~ 1e2)
// neither overflow nor underflow.

#include "pagecurve/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pagecurve {

/// Fixed point of f(z)/(1+f(z)) = z separating the short- and long-time
/// solutions of the single-mode trilinear model.
inline constexpr double kCriticalRapidity = 0.506407;

/// Below this value of k + N, binomials come from the exact Pascal table.
inline constexpr int kExactBinomialLimit = 60;

/// p_n = (1-z) z^n / (1 - z^(M+1)) for n = 0..M. Throws std::domain_error
/// unless 0 <= z < 1.
ProbabilityVector truncated_geometric(double z, int M);

/// ln C(k+N-1, k): the number of ways to place k quanta in N modes.
double log_binomial(int k, int N);

/// Exact C(k+N-1, k) for k + N <= kExactBinomialLimit, otherwise nullopt.
std::optional<std::uint64_t> exact_multiset_count(int k, int N);

/// Negative-binomial weights (1-z)^N z^k C(k+N-1,k), truncated at n_p0.
ProbabilityVector oneshot_probs(double z, int n_p0, int N);

/// oneshot_probs with the pump-depletion factor
/// (1 - z^(n_p0-k+1))^-min(N-1, i_max-1) applied to each weight.
ProbabilityVector refined_probs(double z, int n_p0, int N, int i_max);

/// Short-time distribution for a signal mode seeded with n_s0 quanta.
ProbabilityVector seeded_probs(double z, int n_s0, int n_p0);

/// f(z) = 4 e^-pi (1 + sqrt z) / (1 - sqrt z).
double longtime_ratio(double z);

/// Long-time solution: truncated geometric with ratio f/(1+f).
/// Throws std::domain_error unless kCriticalRapidity <= z < 1.
ProbabilityVector longtime_probs(double z, int n_p0);

/// Rapidity at slice N. Ramp:
///   z = tanh^2[ atanh(sqrt z_max) * tanh(sqrt(n_p0) * N / N_zmax) ],
/// rising from 0 at N = 0 to z_max. Constant: z = z_max.
RapidityPoint rapidity_schedule(const ModelParams& params, int N);

/// Normalizes log-weights in place into probabilities (max-shift, exp,
/// divide by the sum). Entries equal to -inf become exact zeros.
std::vector<double> normalize_log_weights(std::span<const double> log_weights);

}  // namespace pagecurve
