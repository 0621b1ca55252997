#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace tiltedstop {

// q_n = a * n^alpha * (log n)^beta for n >= 2, and q_1 = a.
struct QSequenceSpec {
  double a = 1.0;
  double alpha = 0.0;
  double beta = 0.0;

  // Throws std::invalid_argument unless a > 0 and alpha, beta are finite.
  void validate() const;
  double q_at(std::size_t n) const;
};

// The nine asymptotic classes of the optimal cutoff problem, ordered from
// "take the first item" (i) to "take the last item" (ix).
enum class Regime { i, ii, iii, iv, v, vi, vii, viii, ix };

std::string_view regime_label(Regime r);

struct RegimeReport {
  QSequenceSpec spec;
  Regime regime = Regime::i;
  double limit_prob = 1.0;
  // Only set for regime vii: the optimal cutoff is n - L.
  std::optional<int> L;
  std::string mstar_rule;
  std::string notes;

  // Finite-n cutoff recommendation, rounded half-up and clamped to [0, n-1].
  std::size_t recommend(std::size_t n) const;
  // lim m_rec(n) / n.
  double rejection_fraction_limit() const;
};

RegimeReport classify(const QSequenceSpec& spec);

// Smallest L >= 2 with 1/L <= a; then a < 1/(L-1). Requires 0 < a < 1.
int regime_vii_L(double a);

// Leading-order approximation of the expected number of left-to-right minima
// under q_n, by the matching expectation regime. Requires n >= 2.
double expected_lr_asymptotic(const QSequenceSpec& spec, std::size_t n);

// Which of the six expectation regimes (1..6) the sequence falls in.
int expectation_regime(const QSequenceSpec& spec);

// True iff the limiting optimal success probability is at least 1/e.
bool limiting_probability_floor_check(const RegimeReport& report);

}  // namespace tiltedstop
