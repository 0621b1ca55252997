#include "tiltedstop/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "parallel.hpp"

namespace tiltedstop {
namespace {

std::uint64_t block_size(std::uint64_t trials, std::uint64_t b) {
  return std::min(kTrialBlock, trials - b * kTrialBlock);
}

}  // namespace

bool PermutationStream::next_is_best_so_far() {
  if (revealed_ >= p_.size()) throw std::out_of_range("no more arrivals");
  const Rank r = p_.ranks()[revealed_++];
  if (revealed_ == 1 || r < running_min_) {
    running_min_ = r;
    return true;
  }
  return false;
}

std::size_t select_position(ArrivalStream& stream, CutoffStrategy s) {
  const std::size_t n = stream.size();
  if (s.m > n - 1) throw std::invalid_argument("cutoff m must lie in [0, n-1]");
  if (s.m == 0) {
    stream.next_is_best_so_far();
    return 1;
  }
  for (std::size_t j = 1; j <= s.m; ++j) stream.next_is_best_so_far();
  for (std::size_t j = s.m + 1; j <= n; ++j) {
    if (stream.next_is_best_so_far() || j == n) return j;
  }
  return n;
}

bool play_game(const Permutation& p, CutoffStrategy s) {
  PermutationStream stream(p);
  return p.at(select_position(stream, s)) == 1;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("TILTED_STOP_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

EstimateReport estimate(const TrialPlan& plan, unsigned threads) {
  if (plan.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (plan.strategy.m > plan.model.n() - 1) throw std::invalid_argument("cutoff m must lie in [0, n-1]");
  if (threads == 0) threads = worker_threads();

  const std::uint64_t blocks = (plan.trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<std::uint64_t> per_worker(std::max(1u, threads), 0);
  detail::run_blocks(blocks, threads, [&](std::uint64_t b, unsigned worker) {
    Generator gen(plan.rng.substream(b));
    std::uint64_t wins = 0;
    for (std::uint64_t t = 0, count = block_size(plan.trials, b); t < count; ++t)
      wins += play_game(sample(plan.model, gen, plan.method), plan.strategy) ? 1 : 0;
    per_worker[worker] += wins;
  });

  EstimateReport report;
  report.trials = plan.trials;
  for (auto w : per_worker) report.successes += w;
  report.p_hat = static_cast<double>(report.successes) / static_cast<double>(report.trials);
  report.ci95_half_width =
      1.96 * std::sqrt(report.p_hat * (1.0 - report.p_hat) / static_cast<double>(report.trials));
  if (plan.model.n() <= kScanMaxN) report.exact_ref = success_probability(plan.model, plan.strategy).prob;
  return report;
}

double RecordIndicatorTable::joint_freq(std::size_t k, std::size_t l) const {
  if (k > l) std::swap(k, l);
  return static_cast<double>(joint_counts[(k - 1) * n + (l - 1)]) / static_cast<double>(trials);
}

RecordIndicatorTable record_indicator_suite(const TiltedModel& model, std::uint64_t trials,
                                            const RandomSource& rng, SamplerMethod method,
                                            unsigned threads) {
  const std::size_t n = model.n();
  if (n > kRecordSuiteMaxN) throw std::length_error("record indicator suite needs n <= 1000");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (threads == 0) threads = worker_threads();
  const unsigned workers = std::max(1u, threads);

  std::vector<std::vector<std::uint64_t>> marg(workers, std::vector<std::uint64_t>(n, 0));
  std::vector<std::vector<std::uint64_t>> joint(workers, std::vector<std::uint64_t>(n * n, 0));
  const std::uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  detail::run_blocks(blocks, threads, [&](std::uint64_t b, unsigned worker) {
    Generator gen(rng.substream(b));
    auto& mc = marg[worker];
    auto& jc = joint[worker];
    std::vector<std::size_t> records;
    for (std::uint64_t t = 0, count = block_size(trials, b); t < count; ++t) {
      const auto flags = lr_min_positions(sample(model, gen, method));
      records.clear();
      for (std::size_t k = 0; k < n; ++k)
        if (flags[k]) records.push_back(k);
      for (std::size_t x = 0; x < records.size(); ++x) {
        ++mc[records[x]];
        for (std::size_t y = x + 1; y < records.size(); ++y) ++jc[records[x] * n + records[y]];
      }
    }
  });

  RecordIndicatorTable table;
  table.n = n;
  table.trials = trials;
  table.q = model.q();
  table.record_counts.assign(n, 0);
  table.joint_counts.assign(n * n, 0);
  for (unsigned w = 0; w < workers; ++w) {
    for (std::size_t k = 0; k < n; ++k) table.record_counts[k] += marg[w][k];
    for (std::size_t i = 0; i < n * n; ++i) table.joint_counts[i] += joint[w][i];
  }

  const double N = static_cast<double>(trials);
  const double q = model.q();
  auto z_score = [&](double observed, double p) {
    const double sd = std::sqrt(p * (1.0 - p) / N);
    if (sd == 0.0) return observed == p ? 0.0 : INFINITY;
    return std::fabs(observed - p) / sd;
  };
  for (std::size_t k = 1; k <= n; ++k) {
    const double p = q / (q + static_cast<double>(k - 1));
    const double f = static_cast<double>(table.record_counts[k - 1]) / N;
    const double z = z_score(f, p);
    table.marginal_freq.push_back(f);
    table.marginal_expected.push_back(p);
    table.marginal_z.push_back(z);
    table.max_marginal_z = std::max(table.max_marginal_z, z);
    if (z > kSigmaGate) ++table.flagged;
  }
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t l = k + 1; l <= n; ++l) {
      const double p = table.marginal_expected[k - 1] * table.marginal_expected[l - 1];
      const double z = z_score(table.joint_freq(k, l), p);
      if (z > table.max_pair_z) {
        table.max_pair_z = z;
        table.worst_pair_k = k;
        table.worst_pair_l = l;
      }
      if (z > kSigmaGate) ++table.flagged;
    }
  }
  return table;
}

}  // namespace tiltedstop
