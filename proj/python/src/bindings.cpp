#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tiltedstop/asymptotics.hpp"
#include "tiltedstop/exact.hpp"
#include "tiltedstop/montecarlo.hpp"
#include "tiltedstop/permutation.hpp"
#include "tiltedstop/sampler.hpp"
#include "tiltedstop/validation.hpp"

namespace py = pybind11;
using namespace tiltedstop;

namespace {

Permutation to_perm(const std::vector<Rank>& ranks) { return Permutation(ranks); }

std::vector<Rank> from_perm(const Permutation& p) { return {p.ranks().begin(), p.ranks().end()}; }

SamplerMethod parse_method(const std::string& method) {
  if (method == "location") return SamplerMethod::location;
  if (method == "insertion") return SamplerMethod::insertion;
  throw std::invalid_argument("method must be 'location' or 'insertion'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Secretary problem under left-to-right-minimum tilted arrivals";

  py::class_<StrategyEvaluation>(m, "StrategyEvaluation")
      .def_readonly("m", &StrategyEvaluation::m)
      .def_readonly("log_prob", &StrategyEvaluation::log_prob)
      .def_readonly("prob", &StrategyEvaluation::prob)
      .def("__repr__", [](const StrategyEvaluation& e) {
        return "StrategyEvaluation(m=" + std::to_string(e.m) + ", prob=" + std::to_string(e.prob) + ")";
      });

  py::class_<OptimalResult>(m, "OptimalResult")
      .def_readonly("m_star", &OptimalResult::m_star)
      .def_readonly("evaluation", &OptimalResult::evaluation)
      .def_readonly("scan", &OptimalResult::scan);

  py::class_<EstimateReport>(m, "EstimateReport")
      .def_readonly("successes", &EstimateReport::successes)
      .def_readonly("trials", &EstimateReport::trials)
      .def_readonly("p_hat", &EstimateReport::p_hat)
      .def_readonly("ci95_half_width", &EstimateReport::ci95_half_width)
      .def_readonly("exact_ref", &EstimateReport::exact_ref);

  py::class_<RecordIndicatorTable>(m, "RecordIndicatorTable")
      .def_readonly("n", &RecordIndicatorTable::n)
      .def_readonly("trials", &RecordIndicatorTable::trials)
      .def_readonly("marginal_freq", &RecordIndicatorTable::marginal_freq)
      .def_readonly("marginal_expected", &RecordIndicatorTable::marginal_expected)
      .def_readonly("marginal_z", &RecordIndicatorTable::marginal_z)
      .def_readonly("max_marginal_z", &RecordIndicatorTable::max_marginal_z)
      .def_readonly("max_pair_z", &RecordIndicatorTable::max_pair_z)
      .def_readonly("flagged", &RecordIndicatorTable::flagged)
      .def("joint_freq", &RecordIndicatorTable::joint_freq, py::arg("k"), py::arg("l"));

  py::class_<RegimeReport>(m, "RegimeReport")
      .def_property_readonly("regime", [](const RegimeReport& r) { return std::string(regime_label(r.regime)); })
      .def_readonly("limit_prob", &RegimeReport::limit_prob)
      .def_readonly("L", &RegimeReport::L)
      .def_readonly("mstar_rule", &RegimeReport::mstar_rule)
      .def_readonly("notes", &RegimeReport::notes)
      .def("recommend", &RegimeReport::recommend, py::arg("n"))
      .def("rejection_fraction_limit", &RegimeReport::rejection_fraction_limit);

  // permutation_core
  m.def("lr_min_statistic", [](const std::vector<Rank>& p) { return lr_min_statistic(to_perm(p)); }, py::arg("p"));
  m.def("raising_factorial", &raising_factorial, py::arg("q"), py::arg("n"));
  m.def("log_raising_factorial", &log_raising_factorial, py::arg("q"), py::arg("n"));
  m.def(
      "pmf", [](std::size_t n, double q, const std::vector<Rank>& p) { return pmf(TiltedModel(n, q), to_perm(p)); },
      py::arg("n"), py::arg("q"), py::arg("p"));
  m.def(
      "stirling_first_kind",
      [](std::size_t n, long long j) {
        // Exact value as a Python int.
        return py::int_(py::str(stirling_first_kind(n, j).str()));
      },
      py::arg("n"), py::arg("j"));
  m.def(
      "enumerate_all",
      [](std::size_t n) {
        std::vector<std::pair<std::vector<Rank>, std::size_t>> out;
        for_each_permutation(n, [&](const Permutation& p, std::size_t lr) { out.emplace_back(from_perm(p), lr); });
        return out;
      },
      py::arg("n"));

  // samplers
  m.def(
      "draw_kappa",
      [](std::size_t n, double q, std::uint64_t seed, std::uint64_t stream) {
        return draw_kappa(TiltedModel(n, q), RandomSource{seed, stream}).values();
      },
      py::arg("n"), py::arg("q"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def(
      "kappa_to_permutation",
      [](const std::vector<std::size_t>& kappa) { return from_perm(kappa_to_permutation(KappaDraws(kappa))); },
      py::arg("kappa"));
  m.def(
      "draw_insertion",
      [](std::size_t n, double q, std::uint64_t seed, std::uint64_t stream) {
        return draw_insertion(TiltedModel(n, q), RandomSource{seed, stream}).values();
      },
      py::arg("n"), py::arg("q"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def(
      "insertion_to_permutation",
      [](const std::vector<std::size_t>& y, std::size_t n) {
        return from_perm(insertion_to_permutation(InsertionDraws(y), n));
      },
      py::arg("y"), py::arg("n"));
  m.def(
      "sample",
      [](std::size_t n, double q, std::uint64_t seed, std::uint64_t stream, const std::string& method) {
        return from_perm(sample(TiltedModel(n, q), RandomSource{seed, stream}, parse_method(method)));
      },
      py::arg("n"), py::arg("q"), py::arg("seed") = 0, py::arg("stream") = 0, py::arg("method") = "location");

  // exact_engine
  m.def(
      "success_probability",
      [](std::size_t n, double q, std::size_t cutoff) { return success_probability(TiltedModel(n, q), {cutoff}); },
      py::arg("n"), py::arg("q"), py::arg("m"));
  m.def(
      "optimal_cutoff",
      [](std::size_t n, double q, bool keep_scan) {
        py::gil_scoped_release release;
        return optimal_cutoff(TiltedModel(n, q), keep_scan);
      },
      py::arg("n"), py::arg("q"), py::arg("keep_scan") = false);
  m.def(
      "expected_lr_min", [](std::size_t n, double q) { return expected_lr_min(TiltedModel(n, q)); }, py::arg("n"),
      py::arg("q"));
  m.def(
      "brute_force_success",
      [](std::size_t n, double q, std::size_t cutoff) { return brute_force_success(TiltedModel(n, q), {cutoff}); },
      py::arg("n"), py::arg("q"), py::arg("m"));

  // asymptotics
  m.def(
      "classify", [](double a, double alpha, double beta) { return classify(QSequenceSpec{a, alpha, beta}); },
      py::arg("a"), py::arg("alpha"), py::arg("beta"));
  m.def(
      "expected_lr_asymptotic",
      [](double a, double alpha, double beta, std::size_t n) {
        return expected_lr_asymptotic(QSequenceSpec{a, alpha, beta}, n);
      },
      py::arg("a"), py::arg("alpha"), py::arg("beta"), py::arg("n"));
  m.def("limiting_probability_floor_check", &limiting_probability_floor_check, py::arg("report"));

  // montecarlo
  m.def(
      "play_game", [](const std::vector<Rank>& p, std::size_t cutoff) { return play_game(to_perm(p), {cutoff}); },
      py::arg("p"), py::arg("m"));
  m.def(
      "estimate",
      [](std::size_t n, double q, std::size_t cutoff, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream,
         const std::string& method) {
        const TrialPlan plan{TiltedModel(n, q), {cutoff}, trials, RandomSource{seed, stream}, parse_method(method)};
        py::gil_scoped_release release;
        return estimate(plan);
      },
      py::arg("n"), py::arg("q"), py::arg("m"), py::arg("trials"), py::arg("seed") = 0, py::arg("stream") = 0,
      py::arg("method") = "location");
  m.def(
      "record_indicator_suite",
      [](std::size_t n, double q, std::uint64_t trials, std::uint64_t seed, std::uint64_t stream) {
        const TiltedModel model(n, q);
        py::gil_scoped_release release;
        return record_indicator_suite(model, trials, RandomSource{seed, stream});
      },
      py::arg("n"), py::arg("q"), py::arg("trials"), py::arg("seed") = 0, py::arg("stream") = 0);
}
