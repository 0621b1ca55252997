#include "tiltedstop/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tiltedstop/numeric.hpp"

namespace tiltedstop {
namespace {

void check_cutoff(const TiltedModel& model, CutoffStrategy s) {
  if (s.m > model.n() - 1) throw std::invalid_argument("cutoff m must lie in [0, n-1]");
}

StrategyEvaluation make_evaluation(std::size_t m, double log_prob) {
  if (std::isnan(log_prob) || log_prob == INFINITY)
    throw std::runtime_error("non-finite success probability");
  log_prob = std::min(log_prob, 0.0);
  return {m, log_prob, std::exp(log_prob)};
}

// log prod_{l=1}^{n-1} l/(l+q).
double log_first_item_probability(std::size_t n, double q) {
  KahanSum acc;
  for (std::size_t l = 1; l < n; ++l) acc.add(-std::log1p(q / static_cast<double>(l)));
  return acc.value();
}

double log_cutoff_prefactor(std::size_t n, std::size_t m, double q) {
  return std::log(q) + std::log(static_cast<double>(m)) - std::log(static_cast<double>(n));
}

}  // namespace

StrategyEvaluation success_probability(const TiltedModel& model, CutoffStrategy s) {
  check_cutoff(model, s);
  const std::size_t n = model.n();
  const double q = model.q();
  if (s.m == 0) return make_evaluation(0, log_first_item_probability(n, q));

  KahanSum log_product;
  for (std::size_t l = n; l > s.m; --l) log_product.add(log_ratio_term(static_cast<double>(l), q));
  KahanSum harmonic_tail;
  for (std::size_t j = n - 1; j >= s.m; --j) harmonic_tail.add(1.0 / static_cast<double>(j));
  return make_evaluation(s.m, log_cutoff_prefactor(n, s.m, q) + log_product.value() +
                                  std::log(harmonic_tail.value()));
}

std::vector<double> success_terms(const TiltedModel& model, CutoffStrategy s) {
  check_cutoff(model, s);
  if (s.m == 0) throw std::invalid_argument("success_terms needs m >= 1");
  const std::size_t n = model.n();
  const double q = model.q();
  // q/(j-1) * prod_{l=m+1}^{n} (l-1)/(l-1+q)
  KahanSum log_common;
  for (std::size_t l = s.m + 1; l <= n; ++l) log_common.add(-std::log1p(q / static_cast<double>(l - 1)));
  std::vector<double> terms;
  terms.reserve(n - s.m);
  for (std::size_t j = s.m + 1; j <= n; ++j)
    terms.push_back(std::exp(std::log(q) - std::log(static_cast<double>(j - 1)) + log_common.value()));
  return terms;
}

OptimalResult optimal_cutoff(const TiltedModel& model, bool keep_scan) {
  const std::size_t n = model.n();
  const double q = model.q();
  if (n > kScanMaxN) throw std::length_error("optimal_cutoff scan bound is n <= 10^7");

  std::vector<StrategyEvaluation> scan;
  if (keep_scan) scan.resize(n);

  // Sweep m = n-1 down to 1, carrying log prod_{l=m+1}^{n} l/(l-1+q) and
  // sum_{j=m}^{n-1} 1/j. Ties keep the later-visited (smaller) m.
  StrategyEvaluation best{};
  bool have_best = false;
  KahanSum log_product;
  KahanSum harmonic_tail;
  for (std::size_t m = n - 1; m >= 1; --m) {
    log_product.add(log_ratio_term(static_cast<double>(m + 1), q));
    harmonic_tail.add(1.0 / static_cast<double>(m));
    const auto eval = make_evaluation(
        m, log_cutoff_prefactor(n, m, q) + log_product.value() + std::log(harmonic_tail.value()));
    if (keep_scan) scan[m] = eval;
    if (!have_best || eval.log_prob >= best.log_prob) {
      best = eval;
      have_best = true;
    }
  }
  const auto first = make_evaluation(0, log_first_item_probability(n, q));
  if (keep_scan) scan[0] = first;
  if (!have_best || first.log_prob >= best.log_prob) best = first;

  OptimalResult result{best.m, best, std::nullopt};
  if (keep_scan) result.scan = std::move(scan);
  return result;
}

double expected_lr_min(const TiltedModel& model) {
  const double q = model.q();
  KahanSum acc;
  for (std::size_t j = model.n() - 1; j >= 1; --j) acc.add(q / (static_cast<double>(j) + q));
  acc.add(1.0);
  return acc.value();
}

double brute_force_success(const TiltedModel& model, CutoffStrategy s) {
  check_cutoff(model, s);
  const std::size_t n = model.n();
  if (n > kBruteForceMaxN) throw std::length_error("brute force refused: n > 9");
  const double q = model.q();
  KahanSum success_weight;
  for_each_permutation(n, [&](const Permutation& p, std::size_t lr) {
    const auto r = p.ranks();
    bool success = false;
    if (s.m == 0) {
      success = r[0] == 1;
    } else {
      // Success iff rank 1 sits at some j > m and nothing before j beats the
      // best of the first m.
      const Rank prefix_min = *std::min_element(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(s.m));
      for (std::size_t j = s.m; j < n && !success; ++j) {
        if (r[j] != 1) continue;
        const Rank before = *std::min_element(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(j));
        success = before == prefix_min;
      }
    }
    if (success) success_weight.add(std::pow(q, static_cast<double>(lr)));
  });
  return success_weight.value() / raising_factorial(q, n);
}

double brute_force_expected_lr_min(const TiltedModel& model) {
  const std::size_t n = model.n();
  if (n > kBruteForceMaxN) throw std::length_error("brute force refused: n > 9");
  const double q = model.q();
  KahanSum weighted;
  for_each_permutation(n, [&](const Permutation&, std::size_t lr) {
    weighted.add(static_cast<double>(lr) * std::pow(q, static_cast<double>(lr)));
  });
  return weighted.value() / raising_factorial(q, n);
}

}  // namespace tiltedstop
