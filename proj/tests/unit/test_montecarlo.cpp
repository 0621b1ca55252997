#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "tiltedstop/montecarlo.hpp"

using namespace tiltedstop;

namespace {

// Scripted observer that records how many arrivals were revealed.
class ScriptedStream final : public ArrivalStream {
 public:
  explicit ScriptedStream(std::vector<bool> script) : script_(std::move(script)) {}
  std::size_t size() const override { return script_.size(); }
  bool next_is_best_so_far() override {
    REQUIRE(revealed_ < script_.size());
    return script_[revealed_++];
  }
  std::size_t revealed() const { return revealed_; }

 private:
  std::vector<bool> script_;
  std::size_t revealed_ = 0;
};

bool within_sigma(const EstimateReport& r, double p, double gate) {
  return std::fabs(r.p_hat - p) <= gate * std::sqrt(p * (1.0 - p) / static_cast<double>(r.trials));
}

}  // namespace

TEST_CASE("play_game examples") {
  CHECK(play_game(Permutation::from_string("83546172"), {2}));
  CHECK_FALSE(play_game(Permutation::from_string("83546172"), {0}));
  CHECK_FALSE(play_game(Permutation::from_string("83546172"), {6}));
  for (std::size_t n = 1; n <= 10; ++n) CHECK(play_game(Permutation::identity(n), {0}));
  CHECK(play_game(Permutation::from_string("213"), {1}));
  CHECK_FALSE(play_game(Permutation::from_string("123"), {1}));
  // No later record: the last item is taken.
  CHECK(play_game(Permutation::from_string("231"), {2}));
  CHECK_FALSE(play_game(Permutation::from_string("132"), {2}));
  CHECK_THROWS_AS(play_game(Permutation::from_string("21"), {2}), std::invalid_argument);
}

TEST_CASE("the rule stops at the first revealed record after the cutoff") {
  ScriptedStream s({true, false, true, false, true, false});
  CHECK(select_position(s, {3}) == 5);
  CHECK(s.revealed() == 5);

  ScriptedStream none({true, false, false, false});
  CHECK(select_position(none, {1}) == 4);
  CHECK(none.revealed() == 4);

  ScriptedStream first({true, true, true});
  CHECK(select_position(first, {0}) == 1);
  CHECK(first.revealed() == 1);

  const auto p = Permutation::from_string("4213");
  PermutationStream ps(p);
  CHECK(ps.next_is_best_so_far());
  CHECK(ps.next_is_best_so_far());
  CHECK(ps.next_is_best_so_far());
  CHECK_FALSE(ps.next_is_best_so_far());
  CHECK_THROWS_AS(ps.next_is_best_so_far(), std::out_of_range);
}

TEST_CASE("estimate: n = 1 always succeeds") {
  const auto r = estimate({TiltedModel(1, 0.3), {0}, 1000, RandomSource{1, 0}}, 1);
  CHECK(r.successes == 1000);
  CHECK(r.p_hat == 1.0);
  CHECK(r.ci95_half_width == 0.0);
  REQUIRE(r.exact_ref.has_value());
  CHECK(*r.exact_ref == 1.0);
}

TEST_CASE("estimate agrees with the exact value") {
  const auto classic = estimate({TiltedModel(100, 1.0), {37}, 1'000'000, RandomSource{2, 0}});
  CHECK(within_sigma(classic, 0.37104, kSigmaGate));
  CHECK(*classic.exact_ref == doctest::Approx(0.371043).epsilon(1e-5));

  const TiltedModel model(50, 3.0);
  const auto best = optimal_cutoff(model);
  for (auto method : {SamplerMethod::location, SamplerMethod::insertion}) {
    const auto r = estimate({model, {best.m_star}, 1'000'000, RandomSource{3, 0}, method});
    CHECK(within_sigma(r, best.evaluation.prob, kSigmaGate));
    CHECK(r.ci95_half_width == doctest::Approx(1.96 * std::sqrt(r.p_hat * (1 - r.p_hat) / 1e6)));
  }
  CHECK_THROWS_AS(estimate({model, {50}, 10, RandomSource{}}), std::invalid_argument);
  CHECK_THROWS_AS(estimate({model, {1}, 0, RandomSource{}}), std::invalid_argument);
}

TEST_CASE("estimate is deterministic and independent of the worker count") {
  const TrialPlan plan{TiltedModel(40, 0.8), {12}, 300'000, RandomSource{77, 3}};
  const auto one = estimate(plan, 1);
  CHECK(estimate(plan, 1).successes == one.successes);
  CHECK(estimate(plan, 3).successes == one.successes);
  CHECK(estimate(plan, 8).successes == one.successes);
  TrialPlan other = plan;
  other.rng.seed = 78;
  CHECK(estimate(other, 1).successes != one.successes);
}

TEST_CASE("worker_threads honours the environment") {
  ::setenv("TILTED_STOP_THREADS", "3", 1);
  CHECK(worker_threads() == 3);
  ::setenv("TILTED_STOP_THREADS", "junk", 1);
  CHECK(worker_threads() >= 1);
  ::unsetenv("TILTED_STOP_THREADS");
  CHECK(worker_threads() >= 1);
}

TEST_CASE("record indicator suite examples") {
  const auto two = record_indicator_suite(TiltedModel(2, 1.0), 1'000'000, RandomSource{5, 0});
  CHECK(two.marginal_freq[0] == 1.0);
  CHECK(std::fabs(two.marginal_freq[1] - 0.5) <= 4.0 * std::sqrt(0.25 / 1e6));
  CHECK(two.joint_freq(1, 2) == two.marginal_freq[1]);

  const auto six = record_indicator_suite(TiltedModel(6, 2.0), 1'000'000, RandomSource{6, 0});
  CHECK(six.marginal_expected[3] == doctest::Approx(0.4));
  CHECK(std::fabs(six.marginal_freq[3] - 0.4) <= 4.0 * std::sqrt(0.24 / 1e6));
  CHECK(six.max_marginal_z < kSigmaGate);

  const auto five = record_indicator_suite(TiltedModel(5, 0.5), 1'000'000, RandomSource{7, 0});
  for (std::size_t k = 1; k <= 5; ++k)
    for (std::size_t l = k + 1; l <= 5; ++l) {
      const double p = (0.5 / (k - 0.5)) * (0.5 / (l - 0.5));
      CHECK(std::fabs(five.joint_freq(k, l) - p) <= 4.0 * std::sqrt(p * (1 - p) / 1e6));
    }
  CHECK(five.flagged == 0);

  const auto ins = record_indicator_suite(TiltedModel(12, 1.5), 500'000, RandomSource{8, 0}, SamplerMethod::insertion);
  CHECK(ins.flagged == 0);

  CHECK_THROWS_AS(record_indicator_suite(TiltedModel(1001, 1.0), 10, RandomSource{}), std::length_error);
}

TEST_CASE("record indicator suite is independent of the worker count") {
  const TiltedModel model(9, 0.9);
  const auto a = record_indicator_suite(model, 200'000, RandomSource{9, 1}, SamplerMethod::location, 1);
  const auto b = record_indicator_suite(model, 200'000, RandomSource{9, 1}, SamplerMethod::location, 4);
  CHECK(a.record_counts == b.record_counts);
  CHECK(a.joint_counts == b.joint_counts);
}
