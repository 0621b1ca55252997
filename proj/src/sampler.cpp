#include "tiltedstop/sampler.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <list>
#include <stdexcept>

namespace tiltedstop {
namespace {

// Slots 1..n, all initially present; take_kth removes and returns the k-th
// smallest present slot. Small sets use a sorted array, where the erase is a
// short memmove; larger ones use a Fenwick tree of presence counts with
// O(log n) descent. The tree size is a power of two so the descent can
// decrement the nodes covering the chosen slot as it goes.
class OrderStatisticSet {
 public:
  static constexpr std::size_t kFlatMax = 2048;

  explicit OrderStatisticSet(std::size_t n) {
    if (n <= kFlatMax) {
      flat_.resize(n);
      std::iota(flat_.begin(), flat_.end(), std::uint32_t{1});
      return;
    }
    top_bit_ = std::bit_ceil(n);
    tree_.assign(top_bit_ + 1, 0);
    for (std::size_t i = 1; i <= top_bit_; ++i) {
      const std::size_t low = i - (i & (~i + 1));
      tree_[i] = static_cast<std::uint32_t>(std::min(i, n) > low ? std::min(i, n) - low : 0);
    }
  }

  // k is one-indexed and must not exceed the number of present slots.
  std::size_t take_kth(std::size_t k) {
    if (tree_.empty()) {
      const auto it = flat_.begin() + static_cast<std::ptrdiff_t>(k - 1);
      const std::size_t slot = *it;
      flat_.erase(it);
      return slot;
    }
    std::size_t pos = 0;
    auto key = static_cast<std::uint32_t>(k);
    for (std::size_t step = top_bit_ >> 1; step != 0; step >>= 1) {
      const std::size_t next = pos + step;
      const std::uint32_t count = tree_[next];
      const bool right = count < key;
      pos = right ? next : pos;
      key -= right ? count : 0;
      tree_[next] -= right ? 0 : 1;
    }
    return pos + 1;
  }

 private:
  std::vector<std::uint32_t> flat_;
  std::size_t top_bit_ = 0;
  std::vector<std::uint32_t> tree_;
};

}  // namespace

KappaDraws::KappaDraws(std::vector<std::size_t> kappa) : kappa_(std::move(kappa)) {
  if (kappa_.empty()) throw std::invalid_argument("kappa draws need n >= 1");
  for (std::size_t m = 1; m <= kappa_.size(); ++m) {
    const std::size_t v = kappa_[m - 1];
    if (v < 1 || v > m) throw std::invalid_argument("kappa(m) must lie in [1, m]");
  }
}

std::size_t draw_tilted_index(double q, std::size_t m, Generator& gen) {
  if (m <= 1) return 0;
  const double t = gen.uniform() * (q + static_cast<double>(m - 1));
  if (t < q) return 0;
  const auto tail = static_cast<std::size_t>(t - q);
  return tail + 1 < m ? tail + 1 : m - 1;
}

KappaDraws draw_kappa(const TiltedModel& model, Generator& gen) {
  std::vector<std::size_t> kappa(model.n());
  for (std::size_t m = 1; m <= model.n(); ++m) kappa[m - 1] = draw_tilted_index(model.q(), m, gen) + 1;
  return KappaDraws(std::move(kappa));
}

KappaDraws draw_kappa(const TiltedModel& model, const RandomSource& rng) {
  Generator gen(rng);
  return draw_kappa(model, gen);
}

Permutation kappa_to_permutation(const KappaDraws& k) {
  const std::size_t n = k.n();
  OrderStatisticSet unused(n);
  std::vector<Rank> ranks(n);
  for (std::size_t m = n; m >= 1; --m) ranks[m - 1] = static_cast<Rank>(unused.take_kth(k.at(m)));
  return PermutationBuilder::adopt(std::move(ranks));
}

InsertionDraws draw_insertion(const TiltedModel& model, Generator& gen) {
  std::vector<std::size_t> y;
  y.reserve(model.n() > 0 ? model.n() - 1 : 0);
  for (std::size_t m = 2; m <= model.n(); ++m) y.push_back(draw_tilted_index(model.q(), m, gen));
  return InsertionDraws(std::move(y));
}

InsertionDraws draw_insertion(const TiltedModel& model, const RandomSource& rng) {
  Generator gen(rng);
  return draw_insertion(model, gen);
}

namespace {

void check_insertion_draws(const InsertionDraws& d, std::size_t n) {
  if (n < 1) throw std::invalid_argument("insertion construction needs n >= 1");
  if (d.n() < n) throw std::invalid_argument("insertion draws do not cover m = 2..n");
  for (std::size_t m = 2; m <= n; ++m)
    if (d.at(m) > m - 1) throw std::invalid_argument("y(m) must lie in [0, m-1]");
}

}  // namespace

Permutation insertion_to_permutation(const InsertionDraws& d, std::size_t n) {
  check_insertion_draws(d, n);
  // Value m ends up in the (y(m)+1)-th slot left free by the values above it.
  OrderStatisticSet free_slots(n);
  std::vector<Rank> ranks(n);
  for (std::size_t m = n; m >= 2; --m) ranks[free_slots.take_kth(d.at(m) + 1) - 1] = static_cast<Rank>(m);
  ranks[free_slots.take_kth(1) - 1] = 1;
  return PermutationBuilder::adopt(std::move(ranks));
}

Permutation insertion_to_permutation_naive(const InsertionDraws& d, std::size_t n) {
  check_insertion_draws(d, n);
  std::list<Rank> line{1};
  for (std::size_t m = 2; m <= n; ++m) {
    auto it = line.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(d.at(m)));
    line.insert(it, static_cast<Rank>(m));
  }
  return PermutationBuilder::adopt(std::vector<Rank>(line.begin(), line.end()));
}

Permutation sample(const TiltedModel& model, Generator& gen, SamplerMethod method) {
  if (method == SamplerMethod::location) return kappa_to_permutation(draw_kappa(model, gen));
  return insertion_to_permutation(draw_insertion(model, gen), model.n());
}

Permutation sample(const TiltedModel& model, const RandomSource& rng, SamplerMethod method) {
  Generator gen(rng);
  return sample(model, gen, method);
}

}  // namespace tiltedstop
