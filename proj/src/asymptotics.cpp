#include "tiltedstop/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tiltedstop {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

std::size_t round_clamped(double x, std::size_t n) {
  if (!(x > 0.0)) return 0;
  const double r = std::floor(x + 0.5);
  if (r >= static_cast<double>(n - 1)) return n - 1;
  return static_cast<std::size_t>(r);
}

}  // namespace

void QSequenceSpec::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("a must be positive and finite");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw std::invalid_argument("alpha and beta must be finite");
}

double QSequenceSpec::q_at(std::size_t n) const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n == 1) return a;
  const double nd = static_cast<double>(n);
  return a * std::pow(nd, alpha) * std::pow(std::log(nd), beta);
}

std::string_view regime_label(Regime r) {
  switch (r) {
    case Regime::i: return "i";
    case Regime::ii: return "ii";
    case Regime::iii: return "iii";
    case Regime::iv: return "iv";
    case Regime::v: return "v";
    case Regime::vi: return "vi";
    case Regime::vii: return "vii";
    case Regime::viii: return "viii";
    case Regime::ix: return "ix";
  }
  return "?";
}

int regime_vii_L(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("regime vii needs 0 < a < 1");
  int L = std::max(2, static_cast<int>(std::ceil(1.0 / a)));
  // ceil(1/a) can land one off when 1/a is not exactly representable.
  while (1.0 / L > a) ++L;
  while (L > 2 && 1.0 / (L - 1) <= a) --L;
  return L;
}

RegimeReport classify(const QSequenceSpec& spec) {
  spec.validate();
  RegimeReport r;
  r.spec = spec;
  const double a = spec.a;
  const double alpha = spec.alpha;
  const double beta = spec.beta;

  auto set = [&](Regime regime, double limit, std::string rule, std::string notes = {}) {
    r.regime = regime;
    r.limit_prob = limit;
    r.mstar_rule = std::move(rule);
    r.notes = std::move(notes);
  };

  if (alpha < 0.0 || (alpha == 0.0 && beta < -1.0)) {
    set(Regime::i, 1.0, "M* = 0", "the optimal strategy is to choose the first item");
  } else if (alpha == 0.0 && beta == -1.0) {
    if (a < 1.0)
      set(Regime::ii, std::exp(-a), "M* = 0", "the optimal strategy is to choose the first item");
    else if (a == 1.0)
      set(Regime::iii, kInvE, "M* = 0",
          "optimum is not unique: any fixed M* = k >= 1, or M* -> infinity with "
          "log M* / log n -> 0, is also asymptotically optimal");
    else
      set(Regime::iv, kInvE, "M* = round(n exp(-1/q_n))",
          "one member of the optimal class q_n log(n / M*) ~ 1");
  } else if (alpha == 0.0 && beta > -1.0 && beta < 0.0) {
    set(Regime::iv, kInvE, "M* = round(n exp(-1/q_n))", "one member of the optimal class q_n log(n / M*) ~ 1");
  } else if (alpha == 0.0 && beta == 0.0) {
    set(Regime::v, kInvE, "M* = round(n exp(-1/q))");
  } else if ((alpha == 0.0 && beta > 0.0) || (alpha > 0.0 && alpha < 1.0) || (alpha == 1.0 && beta < 0.0)) {
    set(Regime::vi, kInvE, "M* = n - round(n / q_n)");
  } else if (alpha == 1.0 && beta == 0.0) {
    if (a < 1.0) {
      const int L = regime_vii_L(a);
      r.L = L;
      // Extended precision keeps the result correctly rounded, e.g. exactly 0.46875 at a = 0.6.
      const long double la = a;
      const auto limit = static_cast<double>(la * L / std::pow(1.0L + la, L));
      set(Regime::vii, limit, "M* = n - L", "L is the integer with 1/L <= a < 1/(L-1)");
    } else {
      set(Regime::viii, a / (1.0 + a), "M* = n - 1", "the optimal strategy is to choose the last item");
    }
  } else {
    set(Regime::ix, 1.0, "M* = n - 1", "the optimal strategy is to choose the last item");
  }
  return r;
}

std::size_t RegimeReport::recommend(std::size_t n) const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const double nd = static_cast<double>(n);
  switch (regime) {
    case Regime::i:
    case Regime::ii:
    case Regime::iii:
      return 0;
    case Regime::iv:
      return round_clamped(nd * std::exp(-1.0 / spec.q_at(n)), n);
    case Regime::v:
      return round_clamped(nd * std::exp(-1.0 / spec.a), n);
    case Regime::vi: {
      const double tail = std::floor(nd / spec.q_at(n) + 0.5);
      return tail >= nd ? 0 : round_clamped(nd - tail, n);
    }
    case Regime::vii: {
      const auto back = static_cast<std::size_t>(*L);
      return back >= n ? 0 : n - back;
    }
    case Regime::viii:
    case Regime::ix:
      return n - 1;
  }
  return 0;
}

double RegimeReport::rejection_fraction_limit() const {
  switch (regime) {
    case Regime::i:
    case Regime::ii:
    case Regime::iii:
    case Regime::iv:
      return 0.0;
    case Regime::v:
      return std::exp(-1.0 / spec.a);
    default:
      return 1.0;
  }
}

int expectation_regime(const QSequenceSpec& spec) {
  spec.validate();
  const double alpha = spec.alpha;
  const double beta = spec.beta;
  if (alpha < 0.0 || (alpha == 0.0 && beta < -1.0)) return 1;
  if (alpha == 0.0 && beta == -1.0) return 2;
  if (alpha == 0.0 && beta <= 0.0) return 3;
  if ((alpha == 0.0 && beta > 0.0) || (alpha > 0.0 && alpha < 1.0) || (alpha == 1.0 && beta < 0.0)) return 4;
  if (alpha == 1.0 && beta == 0.0) return 5;
  return 6;
}

double expected_lr_asymptotic(const QSequenceSpec& spec, std::size_t n) {
  if (n < 2) throw std::invalid_argument("expected_lr_asymptotic needs n >= 2");
  const double nd = static_cast<double>(n);
  const double q = spec.q_at(n);
  switch (expectation_regime(spec)) {
    case 1: return 1.0;
    case 2: return 1.0 + spec.a;
    case 3: return q * std::log(nd);
    case 4: return q * std::log((nd + q) / (1.0 + q));
    case 5: return spec.a * std::log((1.0 + spec.a) / spec.a) * nd;
    default: return nd;
  }
}

bool limiting_probability_floor_check(const RegimeReport& report) {
  return report.limit_prob >= kInvE - 1e-12;
}

}  // namespace tiltedstop
