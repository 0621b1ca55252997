#pragma once

#include <cmath>

namespace tiltedstop {

// Neumaier-compensated running sum.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log(l / (l - 1 + q)) written to stay accurate when q is close to 1.
inline double log_ratio_term(double l, double q) noexcept { return -std::log1p((q - 1.0) / l); }

}  // namespace tiltedstop
