#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tiltedstop/permutation.hpp"

namespace tiltedstop {

// Reject the first m items, then take the first item better than all of them
// (the last item if none appears). Valid cutoffs are 0 <= m <= n - 1.
struct CutoffStrategy {
  std::size_t m = 0;
};

struct StrategyEvaluation {
  std::size_t m = 0;
  double log_prob = 0.0;
  double prob = 1.0;
};

struct OptimalResult {
  std::size_t m_star = 0;
  StrategyEvaluation evaluation;
  // Entry m holds the evaluation of cutoff m when the scan was kept.
  std::optional<std::vector<StrategyEvaluation>> scan;
};

inline constexpr std::size_t kScanMaxN = 10'000'000;
inline constexpr std::size_t kBruteForceMaxN = kEnumerationMaxN;

// Exact success probability of the cutoff strategy under the tilted law.
// For m >= 1: q (m/n) prod_{l=m+1}^{n} l/(l-1+q) sum_{j=m}^{n-1} 1/j.
// For m = 0:  prod_{l=1}^{n-1} l/(l+q).
// Throws std::invalid_argument when m > n - 1.
StrategyEvaluation success_probability(const TiltedModel& model, CutoffStrategy s);

// Probability that the strategy succeeds by stopping at position j, for
// j = m+1..n (entry 0 is position m+1). Requires m >= 1; for m = 0 the only
// successful stop is position 1.
std::vector<double> success_terms(const TiltedModel& model, CutoffStrategy s);

// Argmax over every cutoff in one O(n) sweep; smallest m wins ties.
// Throws std::length_error when n > kScanMaxN.
OptimalResult optimal_cutoff(const TiltedModel& model, bool keep_scan = false);

// 1 + sum_{j=1}^{n-1} q/(j+q).
double expected_lr_min(const TiltedModel& model);

// Plays the strategy on every permutation of S_n and sums the tilted weights
// of the successes. Throws std::length_error when n > kBruteForceMaxN.
double brute_force_success(const TiltedModel& model, CutoffStrategy s);

// Weighted average of the LR statistic over S_n (n <= kBruteForceMaxN).
double brute_force_expected_lr_min(const TiltedModel& model);

}  // namespace tiltedstop
