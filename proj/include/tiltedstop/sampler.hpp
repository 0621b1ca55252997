#pragma once

#include <cstddef>
#include <vector>

#include "tiltedstop/permutation.hpp"
#include "tiltedstop/random.hpp"

namespace tiltedstop {

// Location-by-location draws: kappa(m) in {1..m} for m = 1..n, with
// P(kappa(m) = 1) = q / (q + m - 1) and every other value 1 / (q + m - 1).
class KappaDraws {
 public:
  // Throws std::invalid_argument if kappa(1) != 1 or any kappa(m) is outside [1, m].
  explicit KappaDraws(std::vector<std::size_t> kappa);

  std::size_t n() const noexcept { return kappa_.size(); }
  std::size_t at(std::size_t m) const { return kappa_.at(m - 1); }
  const std::vector<std::size_t>& values() const noexcept { return kappa_; }

 private:
  std::vector<std::size_t> kappa_;
};

// Insertion draws: y(m) in {0..m-1} for m = 2..n, with
// P(y(m) = 0) = q / (q + m - 1) and every other value 1 / (q + m - 1).
// Out-of-range values are rejected by insertion_to_permutation.
class InsertionDraws {
 public:
  // values[0] holds y(2).
  explicit InsertionDraws(std::vector<std::size_t> values) : y_(std::move(values)) {}

  // Largest n these draws cover.
  std::size_t n() const noexcept { return y_.size() + 1; }
  std::size_t at(std::size_t m) const { return y_.at(m - 2); }
  const std::vector<std::size_t>& values() const noexcept { return y_; }

 private:
  std::vector<std::size_t> y_;
};

enum class SamplerMethod { location, insertion };

// One draw from the "special first value, uniform tail" law on {0..m-1}:
// 0 with probability q/(q+m-1), each other value with 1/(q+m-1).
std::size_t draw_tilted_index(double q, std::size_t m, Generator& gen);

KappaDraws draw_kappa(const TiltedModel& model, Generator& gen);
KappaDraws draw_kappa(const TiltedModel& model, const RandomSource& rng);

// Fills position n down to 1; position m takes the kappa(m)-th smallest unused rank.
Permutation kappa_to_permutation(const KappaDraws& k);

InsertionDraws draw_insertion(const TiltedModel& model, Generator& gen);
InsertionDraws draw_insertion(const TiltedModel& model, const RandomSource& rng);

// Places 1, then each m = 2..n with exactly y(m) earlier-placed numbers to its left.
// Throws std::invalid_argument if the draws do not cover 2..n or y(m) > m - 1.
Permutation insertion_to_permutation(const InsertionDraws& d, std::size_t n);
// Same map by literal list insertion, O(n^2).
Permutation insertion_to_permutation_naive(const InsertionDraws& d, std::size_t n);

Permutation sample(const TiltedModel& model, Generator& gen, SamplerMethod method);
Permutation sample(const TiltedModel& model, const RandomSource& rng, SamplerMethod method);

}  // namespace tiltedstop
