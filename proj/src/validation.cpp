#include "tiltedstop/validation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "parallel.hpp"
#include "tiltedstop/numeric.hpp"

namespace tiltedstop {

std::uint64_t permutation_index(const Permutation& p) {
  const std::size_t n = p.size();
  if (n > 20) throw std::length_error("permutation_index needs n <= 20");
  std::uint64_t index = 0;
  const auto r = p.ranks();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller_later = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (r[j] < r[i]) ++smaller_later;
    index = index * (n - i) + smaller_later;
  }
  return index;
}

SamplerFidelity sampler_fidelity(const TiltedModel& model, std::uint64_t draws, const RandomSource& rng,
                                 SamplerMethod method, unsigned threads) {
  const std::size_t n = model.n();
  if (n > kEnumerationMaxN) throw std::length_error("sampler fidelity needs n <= 9");
  if (draws < 1) throw std::invalid_argument("draws must be >= 1");
  if (threads == 0) threads = worker_threads();

  std::vector<double> exact;
  for_each_permutation(n, [&](const Permutation& p, std::size_t) { exact.push_back(pmf(model, p)); });
  const std::size_t cells = exact.size();

  const std::uint64_t blocks = (draws + kTrialBlock - 1) / kTrialBlock;
  const unsigned slots = std::max(1u, threads);
  std::vector<std::vector<std::uint64_t>> counts(slots, std::vector<std::uint64_t>(cells, 0));
  std::vector<std::vector<std::uint64_t>> records(slots, std::vector<std::uint64_t>(n, 0));
  detail::run_blocks(blocks, threads, [&](std::uint64_t b, unsigned worker) {
    Generator gen(rng.substream(b));
    const std::uint64_t count = std::min(kTrialBlock, draws - b * kTrialBlock);
    for (std::uint64_t t = 0; t < count; ++t) {
      const auto p = sample(model, gen, method);
      ++counts[worker][permutation_index(p)];
      const auto flags = lr_min_positions(p);
      for (std::size_t k = 0; k < n; ++k) records[worker][k] += flags[k] ? 1 : 0;
    }
  });

  std::vector<std::uint64_t> total(cells, 0);
  std::vector<std::uint64_t> record_total(n, 0);
  for (unsigned w = 0; w < slots; ++w) {
    for (std::size_t c = 0; c < cells; ++c) total[c] += counts[w][c];
    for (std::size_t k = 0; k < n; ++k) record_total[k] += records[w][k];
  }

  SamplerFidelity out;
  out.n = n;
  out.q = model.q();
  out.draws = draws;
  const double N = static_cast<double>(draws);
  KahanSum tv;
  KahanSum chi;
  for (std::size_t c = 0; c < cells; ++c) {
    const double freq = static_cast<double>(total[c]) / N;
    tv.add(std::fabs(freq - exact[c]));
    const double expected = exact[c] * N;
    const double diff = static_cast<double>(total[c]) - expected;
    chi.add(diff * diff / expected);
  }
  out.total_variation = 0.5 * tv.value();
  out.chi_square = chi.value();
  out.dof = cells - 1;
  if (out.dof > 0) {
    boost::math::chi_squared dist(static_cast<double>(out.dof));
    out.chi_square_p_value = boost::math::cdf(boost::math::complement(dist, out.chi_square));
  }
  for (std::size_t k = 1; k <= n; ++k) {
    const double p = model.q() / (model.q() + static_cast<double>(k - 1));
    const double sd = std::sqrt(p * (1.0 - p) / N);
    const double f = static_cast<double>(record_total[k - 1]) / N;
    const double z = sd == 0.0 ? (f == p ? 0.0 : INFINITY) : std::fabs(f - p) / sd;
    out.max_record_z = std::max(out.max_record_z, z);
  }
  return out;
}

double record_independence_defect(const TiltedModel& model) {
  const std::size_t n = model.n();
  if (n > kEnumerationMaxN) throw std::length_error("independence check needs n <= 9");
  const std::size_t subsets = std::size_t{1} << n;
  // weight[mask] = P(the set of record positions is exactly mask).
  std::vector<double> weight(subsets, 0.0);
  const double log_norm = log_raising_factorial(model.q(), n);
  for_each_permutation(n, [&](const Permutation& p, std::size_t lr) {
    const auto flags = lr_min_positions(p);
    std::size_t mask = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (flags[k]) mask |= std::size_t{1} << k;
    weight[mask] += std::exp(static_cast<double>(lr) * std::log(model.q()) - log_norm);
  });
  // Superset sums: at_least[S] = P(every position in S is a record).
  std::vector<double> at_least = weight;
  for (std::size_t bit = 0; bit < n; ++bit)
    for (std::size_t mask = 0; mask < subsets; ++mask)
      if (!(mask & (std::size_t{1} << bit))) at_least[mask] += at_least[mask | (std::size_t{1} << bit)];

  double defect = 0.0;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    if (std::popcount(mask) < 2) continue;
    double product = 1.0;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::size_t{1} << k)) product *= at_least[std::size_t{1} << k];
    defect = std::max(defect, std::fabs(at_least[mask] - product));
  }
  return defect;
}

FormulaCheck formula_vs_enumeration(std::size_t max_n, const std::vector<double>& qs) {
  FormulaCheck check;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (double q : qs) {
      const TiltedModel model(n, q);
      for (std::size_t m = 0; m < n; ++m) {
        const double err = std::fabs(success_probability(model, {m}).prob - brute_force_success(model, {m}));
        ++check.cases;
        if (err >= check.max_abs_error) {
          check.max_abs_error = err;
          check.worst_n = n;
          check.worst_m = m;
          check.worst_q = q;
        }
      }
    }
  }
  return check;
}

std::vector<std::size_t> grid_cutoffs(std::size_t n) {
  std::vector<std::size_t> ms{0, 1, static_cast<std::size_t>(std::floor(static_cast<double>(n) / std::numbers::e)),
                              n - 1};
  for (auto& m : ms) m = std::min(m, n - 1);
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

std::vector<GridCell> monte_carlo_grid(const std::vector<std::size_t>& ns, const std::vector<double>& qs,
                                       std::uint64_t trials, const RandomSource& rng, unsigned threads) {
  std::vector<GridCell> cells;
  std::uint64_t cell_id = 0;
  for (std::size_t n : ns) {
    for (double q : qs) {
      const TiltedModel model(n, q);
      for (std::size_t m : grid_cutoffs(n)) {
        GridCell cell;
        cell.n = n;
        cell.q = q;
        cell.m = m;
        cell.exact = success_probability(model, {m}).prob;
        const RandomSource cell_rng = rng.substream(cell_id++);
        cell.estimate = estimate(TrialPlan{model, {m}, trials, cell_rng, SamplerMethod::location}, threads);
        cell.sigma = std::sqrt(cell.exact * (1.0 - cell.exact) / static_cast<double>(trials));
        const double diff = std::fabs(cell.estimate.p_hat - cell.exact);
        cell.z = cell.sigma > 0.0 ? diff / cell.sigma : (diff == 0.0 ? 0.0 : INFINITY);
        cell.pass = cell.z <= kSigmaGate;
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

}  // namespace tiltedstop
