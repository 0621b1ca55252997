#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tiltedstop/exact.hpp"
#include "tiltedstop/montecarlo.hpp"
#include "tiltedstop/permutation.hpp"
#include "tiltedstop/random.hpp"
#include "tiltedstop/sampler.hpp"

namespace tiltedstop {

// Lexicographic rank of p among all permutations of its size (0-based).
// Requires n <= 20.
std::uint64_t permutation_index(const Permutation& p);

struct SamplerFidelity {
  std::size_t n = 0;
  double q = 1.0;
  std::uint64_t draws = 0;
  // Total variation between the empirical law on S_n and the exact pmf.
  double total_variation = 0.0;
  double chi_square = 0.0;
  std::size_t dof = 0;
  double chi_square_p_value = 1.0;
  // Largest |freq - q/(q+k-1)| / sd over positions k.
  double max_record_z = 0.0;
};

// Draws `draws` permutations (blocks of kTrialBlock, one substream per block)
// and compares them with the exact pmf. Requires n <= kEnumerationMaxN.
SamplerFidelity sampler_fidelity(const TiltedModel& model, std::uint64_t draws, const RandomSource& rng,
                                 SamplerMethod method, unsigned threads = 0);

// Max over subsets S of {1..n}, |S| >= 2, of
// |P(every k in S is a record) - prod_{k in S} P(k is a record)|,
// by exact weighted enumeration. Requires n <= kEnumerationMaxN.
double record_independence_defect(const TiltedModel& model);

struct FormulaCheck {
  double max_abs_error = 0.0;
  std::size_t worst_n = 0;
  std::size_t worst_m = 0;
  double worst_q = 0.0;
  std::size_t cases = 0;
};

// Closed-form success probability against brute-force play over S_n for
// every n <= max_n, every cutoff and every q in `qs`.
FormulaCheck formula_vs_enumeration(std::size_t max_n, const std::vector<double>& qs);

struct GridCell {
  std::size_t n = 0;
  double q = 1.0;
  std::size_t m = 0;
  double exact = 0.0;
  EstimateReport estimate;
  double sigma = 0.0;
  double z = 0.0;
  bool pass = false;
};

// Cutoffs used by the Monte-Carlo grid for a given n: {0, 1, floor(n/e), n-1}, deduplicated.
std::vector<std::size_t> grid_cutoffs(std::size_t n);

// Runs estimate() on every (n, q, m) cell; a cell passes when |p_hat - exact|
// is within kSigmaGate binomial standard deviations of the exact value.
std::vector<GridCell> monte_carlo_grid(const std::vector<std::size_t>& ns, const std::vector<double>& qs,
                                       std::uint64_t trials, const RandomSource& rng, unsigned threads = 0);

}  // namespace tiltedstop
