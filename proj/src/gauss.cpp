#include "polyvfe/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyvfe/error.hpp"
#include "polyvfe/numeric.hpp"

namespace polyvfe {
namespace {

void require_coprime(Int p, Int q) {
  if (q < 1) throw Error(Errc::InvalidArgument, "q must be positive");
  if (gcd(p, q) != 1) {
    throw Error(Errc::NotCoprime, "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
}

GaussSumValue classify(std::complex<double> value, Int q) {
  GaussSumValue out;
  out.value = value;
  out.modulus = std::abs(value);
  out.vanishing = out.modulus < vanishing_threshold(q);
  if (!out.vanishing) out.argument = wrap_angle(std::arg(value));
  return out;
}

// Unchecked direct summation; exponents reduced exactly before conversion.
std::complex<double> raw_gauss_sum(Int p, Int q, Int n) {
  const Int pr = mod(p, q);
  const Int nr = mod(n, q);
  CompensatedComplexSum acc;
  for (Int k = 0; k < q; ++k) {
    const Int quad = mod(pr * mod(k * k, q), q);
    const Int r = mod(nr * k - quad, q);
    acc.add(root_of_unity(r, q));
  }
  return acc.value();
}

}  // namespace

double ThetaSequence::theta(Int n) const {
  const auto& e = entries.at(static_cast<std::size_t>(n));
  if (e.vanishing) {
    throw Error(Errc::UndefinedTheta, "theta_" + std::to_string(n) + " undefined for q=" + std::to_string(q));
  }
  return *e.argument;
}

double QuadraticPhase::model(Int n, Int q) const {
  const double m = static_cast<double>(n) / static_cast<double>(2 - delta);
  return kTwoPi * static_cast<double>(a) / static_cast<double>(q) * m * m + b;
}

double vanishing_threshold(Int q) noexcept {
  return 1e-9 * std::max(1.0, std::sqrt(static_cast<double>(q)));
}

GaussSumValue gauss_sum(Int p, Int q, Int n) {
  require_coprime(p, q);
  if (n < 0 || n >= q) throw Error(Errc::RangeError, "n must lie in [0, q)");
  return classify(raw_gauss_sum(p, q, n), q);
}

ThetaSequence theta_sequence(Int p, Int q) {
  require_coprime(p, q);
  ThetaSequence seq{p, q, {}};
  seq.entries.reserve(static_cast<std::size_t>(q));
  for (Int n = 0; n < q; ++n) seq.entries.push_back(classify(raw_gauss_sum(p, q, n), q));
  return seq;
}

QuadraticPhase quadratic_phase(Int p, Int q) {
  require_coprime(p, q);
  const ParityInfo parity = parity_info(q);
  QuadraticPhase out;
  out.delta = parity.delta;
  out.epsilon = parity.epsilon;

  std::complex<double> reference;
  if (parity.delta == 1) {
    out.a = mod_inverse(4 * p, q);
    reference = raw_gauss_sum(p, q, 0);
  } else {
    const int eps = *parity.epsilon;
    out.a = mod_inverse(p, q);
    const double shift = -std::numbers::pi * eps * static_cast<double>(out.a) / (2.0 * static_cast<double>(q));
    reference = raw_gauss_sum(p, q, eps % q) * std::polar(1.0, shift);
  }
  if (std::abs(reference) < vanishing_threshold(q)) {
    throw Error(Errc::InternalVanishing, "reference Gauss sum vanishes for q=" + std::to_string(q));
  }
  out.b = wrap_angle(std::arg(reference));
  return out;
}

std::vector<bool> vanishing_pattern(Int q, Int p) {
  const ThetaSequence seq = theta_sequence(p, q);
  std::vector<bool> out;
  out.reserve(seq.entries.size());
  for (const auto& e : seq.entries) out.push_back(e.vanishing);
  return out;
}

}  // namespace polyvfe
