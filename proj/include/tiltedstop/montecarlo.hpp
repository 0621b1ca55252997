#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tiltedstop/exact.hpp"
#include "tiltedstop/permutation.hpp"
#include "tiltedstop/random.hpp"
#include "tiltedstop/sampler.hpp"

namespace tiltedstop {

// What the decision maker sees: items arrive one at a time and the only
// information revealed is whether the newest item beats everything so far.
class ArrivalStream {
 public:
  virtual ~ArrivalStream() = default;
  virtual std::size_t size() const = 0;
  // Reveals the next arrival. True iff it is the best (smallest rank) so far.
  virtual bool next_is_best_so_far() = 0;
};

// Streams a fixed permutation through the relative-rank observer.
class PermutationStream final : public ArrivalStream {
 public:
  explicit PermutationStream(const Permutation& p) : p_(p) {}
  std::size_t size() const override { return p_.size(); }
  bool next_is_best_so_far() override;

 private:
  const Permutation& p_;
  std::size_t revealed_ = 0;
  Rank running_min_ = 0;
};

// Runs the cutoff rule against the stream and returns the one-indexed
// position of the selected item.
std::size_t select_position(ArrivalStream& stream, CutoffStrategy s);

// True iff the cutoff rule picks rank 1.
bool play_game(const Permutation& p, CutoffStrategy s);

struct TrialPlan {
  TiltedModel model;
  CutoffStrategy strategy;
  std::uint64_t trials = 1;
  RandomSource rng;
  SamplerMethod method = SamplerMethod::location;
};

struct EstimateReport {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  double ci95_half_width = 0.0;
  std::optional<double> exact_ref;
};

inline constexpr std::uint64_t kTrialBlock = std::uint64_t{1} << 16;

// Worker count: TILTED_STOP_THREADS if set to a positive integer, else the
// hardware concurrency (at least 1).
unsigned worker_threads();

// Trials run in blocks of kTrialBlock; block b draws from rng.substream(b),
// so the counts do not depend on the number of workers.
EstimateReport estimate(const TrialPlan& plan, unsigned threads = 0);

struct RecordIndicatorTable {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  double q = 1.0;
  // Index k-1 holds position k.
  std::vector<std::uint64_t> record_counts;
  std::vector<double> marginal_freq;
  std::vector<double> marginal_expected;
  std::vector<double> marginal_z;
  // Row-major n x n; entry (k, l) with k < l counts trials where both are records.
  std::vector<std::uint64_t> joint_counts;
  double max_marginal_z = 0.0;
  double max_pair_z = 0.0;
  std::size_t worst_pair_k = 0;
  std::size_t worst_pair_l = 0;
  std::size_t flagged = 0;

  double joint_freq(std::size_t k, std::size_t l) const;
};

inline constexpr std::size_t kRecordSuiteMaxN = 1000;
inline constexpr double kSigmaGate = 4.0;

// Marginal record frequencies against q/(q+k-1), and every pairwise joint
// frequency against the product of exact marginals. Deviations beyond
// kSigmaGate binomial standard deviations are counted in `flagged`.
RecordIndicatorTable record_indicator_suite(const TiltedModel& model, std::uint64_t trials,
                                            const RandomSource& rng,
                                            SamplerMethod method = SamplerMethod::location,
                                            unsigned threads = 0);

}  // namespace tiltedstop
