#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace polyvfe {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Neumaier-compensated running sum. Accumulation order is the call order.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// exp(2 pi i r / d) for an exactly reduced residue 0 <= r < d.
inline std::complex<double> root_of_unity(std::int64_t r, std::int64_t d) {
  const double angle = kTwoPi * static_cast<double>(r) / static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

/// Principal value in (-pi, pi].
inline double wrap_angle(double x) noexcept {
  double r = std::remainder(x, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

/// Distance from x to the nearest integer multiple of 2 pi.
inline double phase_distance(double x) noexcept { return std::abs(std::remainder(x, kTwoPi)); }

}  // namespace polyvfe
