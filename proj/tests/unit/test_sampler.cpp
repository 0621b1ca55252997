#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "tiltedstop/permutation.hpp"
#include "tiltedstop/sampler.hpp"
#include "tiltedstop/validation.hpp"

using namespace tiltedstop;

namespace {

// Literal reading of the location-by-location construction: keep the unused
// ranks in a sorted vector and erase the kappa(m)-th smallest.
Permutation kappa_oracle(const std::vector<std::size_t>& kappa) {
  const std::size_t n = kappa.size();
  std::vector<Rank> unused;
  for (std::size_t v = 1; v <= n; ++v) unused.push_back(static_cast<Rank>(v));
  std::vector<Rank> ranks(n);
  for (std::size_t m = n; m >= 1; --m) {
    ranks[m - 1] = unused[kappa[m - 1] - 1];
    unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(kappa[m - 1] - 1));
  }
  return Permutation(ranks);
}

std::size_t position_of(const Permutation& p, Rank value) {
  for (std::size_t j = 1; j <= p.size(); ++j)
    if (p.at(j) == value) return j;
  return 0;
}

}  // namespace

TEST_CASE("generator reproduces frozen xoshiro256** output") {
  // Reference values from an independent Python transcription of the seeding and generator.
  Generator gen(RandomSource{42, 7});
  CHECK(gen.next() == 0xa7a5b5f5525710c8ULL);
  CHECK(gen.next() == 0x090cb0e767589710ULL);
  CHECK(gen.next() == 0x766fc4939331f2faULL);
  CHECK(RandomSource{42, 7}.substream(3).stream_id == 0x12ab7e531ed2996cULL);
  CHECK(RandomSource{42, 7}.substream(3).seed == 42);
  Generator other(RandomSource{42, 8});
  CHECK(other.next() != 0xa7a5b5f5525710c8ULL);
  for (int i = 0; i < 1000; ++i) {
    const double u = gen.uniform();
    CHECK((u >= 0.0 && u < 1.0));
  }
}

TEST_CASE("kappa draws validate their range") {
  CHECK_THROWS_AS(KappaDraws({}), std::invalid_argument);
  CHECK_THROWS_AS(KappaDraws({2}), std::invalid_argument);
  CHECK_THROWS_AS(KappaDraws({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(KappaDraws({1, 0}), std::invalid_argument);
  CHECK_NOTHROW(KappaDraws({1, 2, 3}));
}

TEST_CASE("kappa_to_permutation examples") {
  CHECK(kappa_to_permutation(KappaDraws({1, 1, 2, 2, 4, 1, 6, 2})).to_string() == "83546172");
  for (std::size_t n = 1; n <= 40; ++n)
    CHECK(kappa_to_permutation(KappaDraws(std::vector<std::size_t>(n, 1))) == Permutation::reversed(n));
  const auto p = kappa_to_permutation(KappaDraws({1, 2, 3}));
  CHECK(p.to_string() == "123");
  CHECK(lr_min_statistic(p) == 1);
}

TEST_CASE("insertion_to_permutation examples") {
  // The stated rule applied to Y = (1,0,1,1,3,5,7).
  CHECK(insertion_to_permutation(InsertionDraws({1, 0, 1, 1, 3, 5, 7}), 8).to_string() == "35461728");
  CHECK(insertion_to_permutation(InsertionDraws({1, 0, 1, 1, 3, 5, 0}), 8).to_string() == "83546172");
  CHECK(insertion_to_permutation(InsertionDraws({0}), 2).to_string() == "21");
  CHECK(insertion_to_permutation(InsertionDraws({1}), 2).to_string() == "12");
  CHECK(insertion_to_permutation(InsertionDraws({}), 1).to_string() == "1");
  CHECK_THROWS_AS(insertion_to_permutation(InsertionDraws({2}), 2), std::invalid_argument);
  CHECK_THROWS_AS(insertion_to_permutation(InsertionDraws({0}), 3), std::invalid_argument);
  CHECK_THROWS_AS(insertion_to_permutation(InsertionDraws({}), 0), std::invalid_argument);
}

TEST_CASE("fast constructions match their literal oracles on random draws") {
  Generator gen(RandomSource{2024, 1});
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + gen.next() % 300;
    const TiltedModel model(n, 0.2 + 5.0 * gen.uniform());
    const auto k = draw_kappa(model, gen);
    CHECK(kappa_to_permutation(k) == kappa_oracle(k.values()));
    const auto y = draw_insertion(model, gen);
    CHECK(insertion_to_permutation(y, n) == insertion_to_permutation_naive(y, n));
  }
  // Sizes on both sides of the switch from the flat array to the tree.
  for (std::size_t n : {2047u, 2048u, 2049u, 4096u, 5000u}) {
    const TiltedModel model(n, 1.3);
    const auto k = draw_kappa(model, gen);
    CHECK(kappa_to_permutation(k) == kappa_oracle(k.values()));
    const auto y = draw_insertion(model, gen);
    CHECK(insertion_to_permutation(y, n) == insertion_to_permutation_naive(y, n));
  }
}

TEST_CASE("structural: records sit where kappa is 1 and where y is 0") {
  Generator gen(RandomSource{7, 0});
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + gen.next() % 60;
    const TiltedModel model(n, 0.1 + 3.0 * gen.uniform());

    const auto k = draw_kappa(model, gen);
    const auto flags = lr_min_positions(kappa_to_permutation(k));
    for (std::size_t m = 1; m <= n; ++m) CHECK(flags[m - 1] == (k.at(m) == 1));

    const auto y = draw_insertion(model, gen);
    const auto p = insertion_to_permutation(y, n);
    const auto pflags = lr_min_positions(p);
    for (std::size_t m = 2; m <= n; ++m) {
      // Value m is left of every smaller value iff y(m) = 0.
      const std::size_t pos = position_of(p, static_cast<Rank>(m));
      bool left_of_smaller = true;
      for (Rank v = 1; v < m; ++v) left_of_smaller = left_of_smaller && position_of(p, v) > pos;
      CHECK(left_of_smaller == (y.at(m) == 0));
    }
    CHECK(pflags[0]);
  }
}

TEST_CASE("tilted index law") {
  constexpr int draws = 1'000'000;
  auto frequencies = [&](double q, std::size_t m, std::uint64_t seed) {
    Generator gen(RandomSource{seed, 0});
    std::vector<double> counts(m, 0.0);
    for (int i = 0; i < draws; ++i) counts[draw_tilted_index(q, m, gen)] += 1.0;
    for (auto& c : counts) c /= draws;
    return counts;
  };
  auto within_3_sigma = [&](double f, double p) { return std::fabs(f - p) <= 3.0 * std::sqrt(p * (1 - p) / draws); };

  Generator g1(RandomSource{1, 1});
  for (int i = 0; i < 100; ++i) CHECK(draw_tilted_index(0.3, 1, g1) == 0);

  const auto q3 = frequencies(3.0, 3, 11);
  CHECK(within_3_sigma(q3[0], 0.6));
  CHECK(within_3_sigma(q3[1], 0.2));
  CHECK(within_3_sigma(q3[2], 0.2));

  const auto uniform = frequencies(1.0, 4, 12);
  for (double f : uniform) CHECK(within_3_sigma(f, 0.25));

  const auto five = frequencies(1.0, 5, 13);
  for (double f : five) CHECK(within_3_sigma(f, 0.2));

  const auto q2 = frequencies(2.0, 2, 14);
  CHECK(within_3_sigma(q2[0], 2.0 / 3.0));
  CHECK(within_3_sigma(q2[1], 1.0 / 3.0));

  // Large q puts nearly all mass on the special value.
  const auto big = frequencies(1e9, 6, 15);
  CHECK(big[0] > 0.9999);
}

TEST_CASE("draw shapes and kappa(1) = 1") {
  const TiltedModel model(25, 0.8);
  const auto k = draw_kappa(model, RandomSource{3, 4});
  CHECK(k.n() == 25);
  CHECK(k.at(1) == 1);
  const auto y = draw_insertion(model, RandomSource{3, 4});
  CHECK(y.n() == 25);
  CHECK(draw_insertion(TiltedModel(1, 2.0), RandomSource{}).values().empty());
  for (std::size_t m = 2; m <= 25; ++m) CHECK(y.at(m) <= m - 1);
}

TEST_CASE("sample: n = 1, determinism") {
  for (auto method : {SamplerMethod::location, SamplerMethod::insertion}) {
    CHECK(sample(TiltedModel(1, 0.4), RandomSource{9, 9}, method) == Permutation::identity(1));
    const TiltedModel model(50, 1.7);
    Generator a(RandomSource{123, 5});
    Generator b(RandomSource{123, 5});
    for (int i = 0; i < 20; ++i) CHECK(sample(model, a, method) == sample(model, b, method));
  }
}

TEST_CASE("sample: empirical law over S_5 at q = 0.7 matches the pmf") {
  const TiltedModel model(5, 0.7);
  for (auto method : {SamplerMethod::location, SamplerMethod::insertion}) {
    const auto f = sampler_fidelity(model, 2'000'000, RandomSource{77, 0}, method, 1);
    CHECK(f.total_variation < 0.02);
    CHECK(f.chi_square_p_value > 0.001);
  }
}

TEST_CASE("sample: both methods give matching LR histograms") {
  const TiltedModel model(5, 0.7);
  constexpr int draws = 500'000;
  std::vector<double> loc(6, 0.0), ins(6, 0.0);
  Generator g1(RandomSource{5, 1});
  Generator g2(RandomSource{5, 2});
  for (int i = 0; i < draws; ++i) {
    loc[lr_min_statistic(sample(model, g1, SamplerMethod::location))] += 1;
    ins[lr_min_statistic(sample(model, g2, SamplerMethod::insertion))] += 1;
  }
  for (std::size_t j = 1; j <= 5; ++j) {
    const double p = 0.5 * (loc[j] + ins[j]) / draws;
    const double sd = std::sqrt(2.0 * p * (1.0 - p) / draws);
    CHECK(std::fabs(loc[j] - ins[j]) / draws <= 3.0 * sd + 1e-12);
  }
}
