#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tiltedstop {

using Rank = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

// Arrival-order arrangement of the ranks 1..n. Rank 1 is the best item.
// Positions are one-indexed at the interface: at(1) is the first arrival.
class Permutation {
 public:
  // Throws std::invalid_argument unless `ranks` is a bijection on {1..n}, n >= 1.
  explicit Permutation(std::vector<Rank> ranks);

  // Parses a digit string such as "83546172" (n <= 9 only).
  static Permutation from_string(const std::string& digits);
  static Permutation identity(std::size_t n);
  static Permutation reversed(std::size_t n);

  std::size_t size() const noexcept { return ranks_.size(); }
  Rank at(std::size_t position) const { return ranks_.at(position - 1); }
  std::span<const Rank> ranks() const noexcept { return ranks_; }

  Permutation inverse() const;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<Rank> ranks, Unchecked) : ranks_(std::move(ranks)) {}
  friend class PermutationBuilder;

  std::vector<Rank> ranks_;
};

// Internal escape hatch for constructions that produce a bijection by
// construction and would otherwise pay for re-validation.
class PermutationBuilder {
 public:
  static Permutation adopt(std::vector<Rank> ranks) {
    return Permutation(std::move(ranks), Permutation::Unchecked{});
  }
};

// The pair (n, q) defining the left-to-right-minimum tilted law on S_n.
class TiltedModel {
 public:
  // Throws std::invalid_argument for n < 1 and std::domain_error for q not in (0, inf).
  TiltedModel(std::size_t n, double q);

  std::size_t n() const noexcept { return n_; }
  double q() const noexcept { return q_; }

 private:
  std::size_t n_;
  double q_;
};

// Number of positions j with entries[j] = min(entries[1..j]).
std::size_t lr_min_statistic(const Permutation& p);

// One-indexed flags: result[k-1] is true iff position k is a left-to-right minimum.
std::vector<bool> lr_min_positions(const Permutation& p);

// q(q+1)...(q+n-1); 1 for n = 0. Throws std::domain_error for q <= 0.
double raising_factorial(double q, std::size_t n);
double log_raising_factorial(double q, std::size_t n);

// q^{LR(p)} / q^{(n)}, evaluated in the log domain.
double pmf(const TiltedModel& model, const Permutation& p);
double log_pmf(const TiltedModel& model, const Permutation& p);

inline constexpr std::size_t kStirlingMaxN = 30;
inline constexpr std::size_t kEnumerationMaxN = 9;

// Unsigned Stirling number of the first kind s(n, j); zero outside 1 <= j <= n.
// Throws std::invalid_argument for n < 1 and std::length_error for n > kStirlingMaxN.
BigInt stirling_first_kind(std::size_t n, long long j);

// Row s(n, 0..n) of the unsigned Stirling numbers.
std::vector<BigInt> stirling_first_kind_row(std::size_t n);

struct EnumeratedPermutation {
  Permutation permutation;
  std::size_t lr_min;
};

// Visits all n! permutations in lexicographic order with their LR statistic.
// Throws std::length_error for n > kEnumerationMaxN.
void for_each_permutation(std::size_t n,
                          const std::function<void(const Permutation&, std::size_t)>& visit);
std::vector<EnumeratedPermutation> enumerate_all(std::size_t n);

// counts[j] = number of permutations in S_n with exactly j left-to-right minima (counts[0] = 0).
std::vector<std::uint64_t> lr_histogram(std::size_t n);

}  // namespace tiltedstop
