#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "tiltedstop/asymptotics.hpp"
#include "tiltedstop/exact.hpp"
#include "tiltedstop/montecarlo.hpp"
#include "tiltedstop/sampler.hpp"
#include "tiltedstop/validation.hpp"

namespace tiltedstop::cli {
namespace {

using Json = nlohmann::ordered_json;

// Argument validation failure; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  long long n = 0;
  double q = 1.0;
  long long m = 0;
  double a = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  long long trials = 100000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  long long count = 1;
  std::string method = "location";
  std::string format = "json";
  std::string output;
  std::string suite = "all";
  bool keep_scan = false;
  bool have_sequence = false;
};

std::size_t require_n(const Options& o) {
  if (o.n < 1) throw UsageError("n must be ≥ 1");
  return static_cast<std::size_t>(o.n);
}

double require_q(const Options& o) {
  if (!(o.q > 0.0) || !std::isfinite(o.q)) throw UsageError("q must be positive and finite");
  return o.q;
}

std::size_t require_m(const Options& o, std::size_t n) {
  if (o.m < 0 || static_cast<unsigned long long>(o.m) > n - 1) throw UsageError("m must lie in [0, n-1]");
  return static_cast<std::size_t>(o.m);
}

std::uint64_t require_trials(const Options& o) {
  if (o.trials < 1) throw UsageError("trials must be ≥ 1");
  return static_cast<std::uint64_t>(o.trials);
}

SamplerMethod require_method(const Options& o) {
  if (o.method == "location") return SamplerMethod::location;
  if (o.method == "insertion") return SamplerMethod::insertion;
  throw UsageError("method must be location or insertion");
}

QSequenceSpec require_sequence(const Options& o) {
  QSequenceSpec spec{o.a, o.alpha, o.beta};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

void require_finite(double x) {
  if (!std::isfinite(x)) throw std::runtime_error("non-finite result");
}

std::string csv_line(std::initializer_list<std::string> fields) {
  std::string line;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) line.push_back(',');
    line += f;
    first = false;
  }
  line.push_back('\n');
  return line;
}

std::string str(std::size_t v) { return std::to_string(v); }
std::string str(std::uint64_t v, int) { return std::to_string(v); }

// Each command fills either a JSON object or CSV text, depending on format.
struct Output {
  Json json = Json::object();
  std::string csv;
};

Output cmd_exact(const Options& o, bool csv) {
  const std::size_t n = require_n(o);
  const TiltedModel model(n, require_q(o));
  const auto eval = success_probability(model, {require_m(o, n)});
  require_finite(eval.log_prob);
  Output out;
  if (csv) {
    out.csv = csv_line({"n", "q", "m", "log_prob", "prob"}) +
              csv_line({str(n), format_double(model.q()), str(eval.m), format_double(eval.log_prob),
                        format_double(eval.prob)});
  } else {
    out.json = {{"n", n}, {"q", model.q()}, {"m", eval.m}, {"prob", eval.prob}, {"log_prob", eval.log_prob}};
  }
  return out;
}

Output cmd_scan(const Options& o, bool csv) {
  const std::size_t n = require_n(o);
  if (n > kScanMaxN) throw UsageError("n must be ≤ 10000000 for scan");
  const TiltedModel model(n, require_q(o));
  const auto result = optimal_cutoff(model, true);
  Output out;
  if (csv) {
    std::string text = "m,log_prob,prob\n";
    for (const auto& e : *result.scan) {
      require_finite(e.log_prob);
      text += str(e.m);
      text += ',';
      text += format_double(e.log_prob);
      text += ',';
      text += format_double(e.prob);
      text += '\n';
    }
    out.csv = std::move(text);
  } else {
    Json rows = Json::array();
    for (const auto& e : *result.scan) {
      require_finite(e.log_prob);
      rows.push_back({{"m", e.m}, {"log_prob", e.log_prob}, {"prob", e.prob}});
    }
    out.json = {{"n", n}, {"q", model.q()}, {"m_star", result.m_star}, {"rows", std::move(rows)}};
  }
  return out;
}

Output cmd_optimal(const Options& o, bool csv) {
  const std::size_t n = require_n(o);
  if (n > kScanMaxN) throw UsageError("n must be ≤ 10000000 for optimal");
  const TiltedModel model(n, require_q(o));
  const auto r = optimal_cutoff(model, false);
  require_finite(r.evaluation.log_prob);
  Output out;
  if (csv) {
    out.csv = csv_line({"n", "q", "m_star", "log_prob", "prob"}) +
              csv_line({str(n), format_double(model.q()), str(r.m_star), format_double(r.evaluation.log_prob),
                        format_double(r.evaluation.prob)});
  } else {
    out.json = {{"n", n},
                {"q", model.q()},
                {"m_star", r.m_star},
                {"prob", r.evaluation.prob},
                {"log_prob", r.evaluation.log_prob}};
  }
  return out;
}

Output cmd_expect(const Options& o, bool csv) {
  const std::size_t n = require_n(o);
  Output out;
  if (o.have_sequence) {
    if (n < 2) throw UsageError("n must be ≥ 2 with a q-sequence");
    const auto spec = require_sequence(o);
    const double q = spec.q_at(n);
    const double exact = expected_lr_min(TiltedModel(n, q));
    const double approx = expected_lr_asymptotic(spec, n);
    require_finite(exact);
    require_finite(approx);
    if (csv) {
      out.csv = csv_line({"n", "q", "expected_lr_min", "asymptotic"}) +
                csv_line({str(n), format_double(q), format_double(exact), format_double(approx)});
    } else {
      out.json = {{"n", n},
                  {"q", q},
                  {"a", spec.a},
                  {"alpha", spec.alpha},
                  {"beta", spec.beta},
                  {"expected_lr_min", exact},
                  {"asymptotic", approx},
                  {"expectation_regime", expectation_regime(spec)}};
    }
    return out;
  }
  const TiltedModel model(n, require_q(o));
  const double e = expected_lr_min(model);
  require_finite(e);
  if (csv)
    out.csv = csv_line({"n", "q", "expected_lr_min"}) + csv_line({str(n), format_double(model.q()), format_double(e)});
  else
    out.json = {{"n", n}, {"q", model.q()}, {"expected_lr_min", e}};
  return out;
}

Output cmd_sample(const Options& o, bool csv) {
  const std::size_t n = require_n(o);
  const TiltedModel model(n, require_q(o));
  const auto method = require_method(o);
  if (o.count < 1) throw UsageError("count must be ≥ 1");
  Generator gen(RandomSource{o.seed, o.stream});
  Output out;
  Json perms = Json::array();
  for (long long i = 0; i < o.count; ++i) {
    const auto p = sample(model, gen, method);
    if (csv) {
      std::string line;
      for (std::size_t j = 0; j < n; ++j) {
        if (j) line.push_back(',');
        line += std::to_string(p.ranks()[j]);
      }
      out.csv += line + "\n";
    } else {
      perms.push_back(std::vector<Rank>(p.ranks().begin(), p.ranks().end()));
    }
  }
  if (!csv)
    out.json = {{"n", n}, {"q", model.q()}, {"seed", o.seed}, {"stream", o.stream}, {"method", o.method},
                {"permutations", std::move(perms)}};
  return out;
}

Output cmd_simulate(const Options& o, bool csv) {
  const std::size_t n = require_n(o);
  const TiltedModel model(n, require_q(o));
  const std::size_t m = require_m(o, n);
  const TrialPlan plan{model, {m}, require_trials(o), RandomSource{o.seed, o.stream}, require_method(o)};
  const auto r = estimate(plan);
  Output out;
  if (csv) {
    out.csv = csv_line({"n", "q", "m", "trials", "seed", "successes", "p_hat", "ci95", "exact_ref"}) +
              csv_line({str(n), format_double(model.q()), str(m), str(r.trials, 0), str(o.seed, 0),
                        str(r.successes, 0), format_double(r.p_hat), format_double(r.ci95_half_width),
                        r.exact_ref ? format_double(*r.exact_ref) : std::string{}});
  } else {
    out.json = {{"n", n},
                {"q", model.q()},
                {"m", m},
                {"trials", r.trials},
                {"seed", o.seed},
                {"method", o.method},
                {"successes", r.successes},
                {"p_hat", r.p_hat},
                {"ci95", r.ci95_half_width}};
    out.json["exact_ref"] = r.exact_ref ? Json(*r.exact_ref) : Json(nullptr);
  }
  return out;
}

Output cmd_regime(const Options& o, bool csv) {
  const auto spec = require_sequence(o);
  const auto report = classify(spec);
  const bool with_n = o.n != 0;
  std::size_t n = 0;
  if (with_n) n = require_n(o);
  Output out;
  if (csv) {
    out.csv = csv_line({"regime", "L", "limit_prob", "m_rec"}) +
              csv_line({std::string(regime_label(report.regime)), report.L ? std::to_string(*report.L) : "",
                        format_double(report.limit_prob), with_n ? str(report.recommend(n)) : ""});
    return out;
  }
  out.json = {{"regime", regime_label(report.regime)}};
  out.json["L"] = report.L ? Json(*report.L) : Json(nullptr);
  out.json["limit_prob"] = report.limit_prob;
  out.json["a"] = spec.a;
  out.json["alpha"] = spec.alpha;
  out.json["beta"] = spec.beta;
  out.json["mstar_rule"] = report.mstar_rule;
  out.json["rejection_fraction"] = report.rejection_fraction_limit();
  out.json["floor_ok"] = limiting_probability_floor_check(report);
  out.json["notes"] = report.notes;
  if (with_n) {
    out.json["n"] = n;
    out.json["q"] = spec.q_at(n);
    out.json["m_rec"] = report.recommend(n);
  }
  return out;
}

Output cmd_validate(const Options& o, bool csv) {
  const auto& s = o.suite;
  if (s != "all" && s != "enumeration" && s != "sampler" && s != "independence" && s != "montecarlo")
    throw UsageError("suite must be all, enumeration, sampler, independence or montecarlo");
  const std::uint64_t trials = require_trials(o);
  const RandomSource rng{o.seed, o.stream};
  Json checks = Json::array();
  bool all_pass = true;
  auto add = [&](std::string name, double value, double threshold, bool pass) {
    checks.push_back({{"name", std::move(name)}, {"value", value}, {"threshold", threshold}, {"pass", pass}});
    all_pass = all_pass && pass;
  };
  const bool every = s == "all";
  if (every || s == "enumeration") {
    const auto fc = formula_vs_enumeration(8, {0.1, 0.5, 1.0, 2.0, 10.0});
    add("formula_vs_enumeration", fc.max_abs_error, 1e-12, fc.max_abs_error <= 1e-12);
  }
  if (every || s == "independence") {
    double worst = 0.0;
    for (std::size_t n = 2; n <= 7; ++n)
      for (double q : {0.5, 2.0}) worst = std::max(worst, record_independence_defect(TiltedModel(n, q)));
    add("record_independence_exact", worst, 1e-12, worst <= 1e-12);
  }
  if (every || s == "sampler") {
    std::uint64_t id = 0;
    for (double q : {0.5, 1.0, 2.0}) {
      for (auto method : {SamplerMethod::location, SamplerMethod::insertion}) {
        const auto f = sampler_fidelity(TiltedModel(5, q), trials, rng.substream(id++), method);
        const std::string tag = std::string(method == SamplerMethod::location ? "location" : "insertion") +
                                "_q" + format_double(q);
        add("sampler_tv_" + tag, f.total_variation, 0.02, f.total_variation < 0.02);
        add("sampler_record_z_" + tag, f.max_record_z, kSigmaGate, f.max_record_z <= kSigmaGate);
      }
    }
  }
  if (every || s == "montecarlo") {
    const auto cells = monte_carlo_grid({10, 100, 1000}, {0.3, 1.0, 4.0}, trials, rng.substream(1000));
    double worst = 0.0;
    bool pass = true;
    for (const auto& c : cells) {
      worst = std::max(worst, c.z);
      pass = pass && c.pass;
    }
    add("montecarlo_grid_max_z", worst, kSigmaGate, pass);
  }
  Output out;
  if (csv) {
    out.csv = "name,value,threshold,pass\n";
    for (const auto& c : checks)
      out.csv += csv_line({c["name"].get<std::string>(), format_double(c["value"].get<double>()),
                           format_double(c["threshold"].get<double>()), c["pass"].get<bool>() ? "true" : "false"});
  } else {
    out.json = {{"suite", s}, {"seed", o.seed}, {"trials", trials}, {"all_pass", all_pass}, {"checks", checks}};
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal cutoff strategies for the secretary problem under left-to-right-minimum tilted arrivals",
               "tiltedstop"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format: json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", o.output, "Write to this file instead of standard output");
  };
  auto add_nq = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Number of items")->required();
    sub->add_option("--q", o.q, "Tilt parameter q > 0")->required();
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--stream", o.stream, "RNG stream id");
  };

  std::map<CLI::App*, std::function<Output(const Options&, bool)>> handlers;

  auto* exact = app.add_subcommand("exact", "Exact success probability of one cutoff");
  add_nq(exact);
  exact->add_option("--m", o.m, "Cutoff: reject the first m items")->required();
  add_format(exact);
  handlers[exact] = cmd_exact;

  auto* scan = app.add_subcommand("scan", "Exact success probability of every cutoff m = 0..n-1");
  add_nq(scan);
  add_format(scan);
  handlers[scan] = cmd_scan;

  auto* optimal = app.add_subcommand("optimal", "Exact optimal cutoff by full scan");
  add_nq(optimal);
  add_format(optimal);
  handlers[optimal] = cmd_optimal;

  auto* expect = app.add_subcommand("expect", "Expected number of left-to-right minima");
  expect->add_option("--n", o.n, "Number of items")->required();
  auto* eq = expect->add_option("--q", o.q, "Tilt parameter q > 0");
  auto* ea = expect->add_option("--a", o.a, "q-sequence coefficient a");
  expect->add_option("--alpha", o.alpha, "q-sequence exponent of n");
  expect->add_option("--beta", o.beta, "q-sequence exponent of log n");
  eq->excludes(ea);
  add_format(expect);
  handlers[expect] = cmd_expect;

  auto* samp = app.add_subcommand("sample", "Draw permutations from the tilted law");
  add_nq(samp);
  samp->add_option("--count", o.count, "Number of permutations");
  samp->add_option("--method", o.method, "location or insertion");
  add_seed(samp);
  add_format(samp);
  handlers[samp] = cmd_sample;

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo estimate of a cutoff's success probability");
  add_nq(sim);
  sim->add_option("--m", o.m, "Cutoff: reject the first m items")->required();
  sim->add_option("--trials", o.trials, "Number of games");
  sim->add_option("--method", o.method, "location or insertion");
  add_seed(sim);
  add_format(sim);
  handlers[sim] = cmd_simulate;

  auto* regime = app.add_subcommand("regime", "Classify q_n = a n^alpha (log n)^beta");
  regime->add_option("--a", o.a, "Coefficient a > 0")->required();
  regime->add_option("--alpha", o.alpha, "Exponent of n")->required();
  regime->add_option("--beta", o.beta, "Exponent of log n")->required();
  regime->add_option("--n", o.n, "Also report the finite-n recommended cutoff");
  add_format(regime);
  handlers[regime] = cmd_regime;

  auto* validate = app.add_subcommand("validate", "Run the enumeration and Monte-Carlo validation suites");
  validate->add_option("--suite", o.suite, "all, enumeration, sampler, independence or montecarlo");
  validate->add_option("--trials", o.trials, "Draws per statistical check");
  add_seed(validate);
  add_format(validate);
  handlers[validate] = cmd_validate;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  o.have_sequence = chosen == expect && ea->count() > 0;
  if (chosen == expect && !o.have_sequence && eq->count() == 0) {
    err << "error: expect needs --q or --a/--alpha/--beta\n";
    return kExitUsage;
  }

  const bool csv = o.format == "csv";
  Output result;
  try {
    result = handlers.at(chosen)(o, csv);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  const std::string text = csv ? result.csv : result.json.dump() + "\n";
  if (o.output.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text) || !file.flush()) {
    err << "error: cannot write " << o.output << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace tiltedstop::cli
