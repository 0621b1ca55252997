#include "tiltedstop/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tiltedstop/numeric.hpp"

namespace tiltedstop {

Permutation::Permutation(std::vector<Rank> ranks) : ranks_(std::move(ranks)) {
  const std::size_t n = ranks_.size();
  if (n == 0) throw std::invalid_argument("permutation must have n >= 1");
  std::vector<bool> seen(n + 1, false);
  for (Rank r : ranks_) {
    if (r < 1 || r > n || seen[r])
      throw std::invalid_argument("permutation entries must be a bijection on {1..n}");
    seen[r] = true;
  }
}

Permutation Permutation::from_string(const std::string& digits) {
  if (digits.empty() || digits.size() > 9)
    throw std::invalid_argument("digit-string permutations need 1 <= n <= 9");
  std::vector<Rank> ranks;
  ranks.reserve(digits.size());
  for (char c : digits) {
    if (c < '1' || c > '9') throw std::invalid_argument("digit-string permutation has non-digit");
    ranks.push_back(static_cast<Rank>(c - '0'));
  }
  return Permutation(std::move(ranks));
}

Permutation Permutation::identity(std::size_t n) {
  if (n == 0) throw std::invalid_argument("permutation must have n >= 1");
  std::vector<Rank> ranks(n);
  std::iota(ranks.begin(), ranks.end(), Rank{1});
  return Permutation(std::move(ranks), Unchecked{});
}

Permutation Permutation::reversed(std::size_t n) {
  if (n == 0) throw std::invalid_argument("permutation must have n >= 1");
  std::vector<Rank> ranks(n);
  for (std::size_t j = 0; j < n; ++j) ranks[j] = static_cast<Rank>(n - j);
  return Permutation(std::move(ranks), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<Rank> inv(ranks_.size());
  for (std::size_t j = 0; j < ranks_.size(); ++j) inv[ranks_[j] - 1] = static_cast<Rank>(j + 1);
  return Permutation(std::move(inv), Unchecked{});
}

std::string Permutation::to_string() const {
  std::string out;
  if (ranks_.size() <= 9) {
    for (Rank r : ranks_) out.push_back(static_cast<char>('0' + r));
    return out;
  }
  for (std::size_t j = 0; j < ranks_.size(); ++j) {
    if (j) out.push_back(' ');
    out += std::to_string(ranks_[j]);
  }
  return out;
}

TiltedModel::TiltedModel(std::size_t n, double q) : n_(n), q_(q) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(q > 0.0) || !std::isfinite(q)) throw std::domain_error("q must be positive and finite");
}

std::size_t lr_min_statistic(const Permutation& p) {
  std::size_t count = 0;
  Rank running = static_cast<Rank>(p.size() + 1);
  for (Rank r : p.ranks()) {
    if (r < running) {
      running = r;
      ++count;
    }
  }
  return count;
}

std::vector<bool> lr_min_positions(const Permutation& p) {
  std::vector<bool> flags(p.size(), false);
  Rank running = static_cast<Rank>(p.size() + 1);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p.ranks()[j] < running) {
      running = p.ranks()[j];
      flags[j] = true;
    }
  }
  return flags;
}

double log_raising_factorial(double q, std::size_t n) {
  if (!(q > 0.0)) throw std::domain_error("raising factorial needs q > 0");
  // Small n: direct sum of logs. Large n: lgamma difference is accurate enough
  // and O(1).
  if (n <= 64) {
    KahanSum acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(std::log(q + static_cast<double>(i)));
    return acc.value();
  }
  return std::lgamma(q + static_cast<double>(n)) - std::lgamma(q);
}

double raising_factorial(double q, std::size_t n) {
  if (!(q > 0.0)) throw std::domain_error("raising factorial needs q > 0");
  double prod = 1.0;
  for (std::size_t i = 0; i < n; ++i) prod *= q + static_cast<double>(i);
  return prod;
}

double log_pmf(const TiltedModel& model, const Permutation& p) {
  if (p.size() != model.n()) throw std::invalid_argument("permutation length does not match model n");
  const auto lr = static_cast<double>(lr_min_statistic(p));
  return lr * std::log(model.q()) - log_raising_factorial(model.q(), model.n());
}

double pmf(const TiltedModel& model, const Permutation& p) { return std::exp(log_pmf(model, p)); }

std::vector<BigInt> stirling_first_kind_row(std::size_t n) {
  if (n < 1) throw std::invalid_argument("stirling numbers need n >= 1");
  if (n > kStirlingMaxN) throw std::length_error("stirling numbers capped at n = 30");
  // s(k, j) = s(k-1, j-1) + (k-1) s(k-1, j), s(0, 0) = 1.
  std::vector<BigInt> row{1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<BigInt> next(k + 1, 0);
    for (std::size_t j = 1; j <= k; ++j) {
      next[j] = row[j - 1];
      if (j < k) next[j] += BigInt(k - 1) * row[j];
    }
    row = std::move(next);
  }
  return row;
}

BigInt stirling_first_kind(std::size_t n, long long j) {
  auto row = stirling_first_kind_row(n);
  if (j < 1 || static_cast<std::size_t>(j) > n) return 0;
  return row[static_cast<std::size_t>(j)];
}

void for_each_permutation(std::size_t n,
                          const std::function<void(const Permutation&, std::size_t)>& visit) {
  if (n < 1) throw std::invalid_argument("enumeration needs n >= 1");
  if (n > kEnumerationMaxN) throw std::length_error("enumeration refused: n > 9");
  std::vector<Rank> ranks(n);
  std::iota(ranks.begin(), ranks.end(), Rank{1});
  do {
    const Permutation p = PermutationBuilder::adopt(ranks);
    visit(p, lr_min_statistic(p));
  } while (std::next_permutation(ranks.begin(), ranks.end()));
}

std::vector<EnumeratedPermutation> enumerate_all(std::size_t n) {
  std::vector<EnumeratedPermutation> out;
  for_each_permutation(n, [&](const Permutation& p, std::size_t lr) { out.push_back({p, lr}); });
  return out;
}

std::vector<std::uint64_t> lr_histogram(std::size_t n) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  for_each_permutation(n, [&](const Permutation&, std::size_t lr) { ++counts[lr]; });
  return counts;
}

}  // namespace tiltedstop
