#pragma once

// Generalized quadratic Gauss sums G(-p, n, q) = sum_k exp(2 pi i (-p k^2 + n k) / q),
// their arguments, and the quadratic normal form of those arguments.

#include <complex>
#include <optional>
#include <vector>

#include "polyvfe/arith.hpp"

namespace polyvfe {

struct GaussSumValue {
  std::complex<double> value;
  double modulus = 0.0;
  std::optional<double> argument;  // principal value in (-pi, pi]; empty when vanishing
  bool vanishing = false;
};

struct ThetaSequence {
  Int p = 0;
  Int q = 1;
  std::vector<GaussSumValue> entries;  // indexed by n in [0, q)

  /// Argument of G(-p, n, q). Throws Errc::UndefinedTheta when it vanishes.
  double theta(Int n) const;
  bool defined(Int n) const { return !entries.at(static_cast<std::size_t>(n)).vanishing; }
};

/// theta_n = 2 pi a / q * (n / (2 - delta))^2 + b  (mod 2 pi) on admissible n.
struct QuadraticPhase {
  Int a = 0;
  double b = 0.0;
  int delta = 0;
  std::optional<int> epsilon;

  double model(Int n, Int q) const;
};

/// Moduli below this are treated as exact zeros.
double vanishing_threshold(Int q) noexcept;

GaussSumValue gauss_sum(Int p, Int q, Int n);
ThetaSequence theta_sequence(Int p, Int q);
QuadraticPhase quadratic_phase(Int p, Int q);
std::vector<bool> vanishing_pattern(Int q, Int p);

}  // namespace polyvfe
