#pragma once

// The alternating trigonometric sum T_k over the Gauss-sum arguments and the
// quadratic exponential sum E_k that carries the same real part.

#include <complex>
#include <optional>
#include <vector>

#include "polyvfe/arith.hpp"
#include "polyvfe/gauss.hpp"

namespace polyvfe {

inline constexpr Int kDefaultSumBudget = 10'000'000;

struct SumReport {
  Int p = 0;
  Int q = 1;
  Int k = 0;
  double t_value = 0.0;
  std::complex<double> e_value;
  Int term_count = 0;
  double residual = 0.0;  // max(|T|, |Re E|, |T - Re E|)

  bool passes(double tol) const;
};

/// sum over admissible n in I_{2k}^q of cos(theta_{n1} - theta_{n2} + ... - theta_{n2k}).
double trig_sum(const ThetaSequence& theta, Int k);

/// sum over the same tuples of exp(2 pi i a Q(n) / ((2 - delta)^2 q)), a from quadratic_phase.
std::complex<double> exp_sum(Int p, Int q, Int k);
std::complex<double> exp_sum(const QuadraticPhase& phase, Int q, Int k);

/// Number of admissible tuples in I_{2k}^q.
Int admissible_term_count(Int q, Int k);

/// Sum of C(q, 2k) over 0 < 2k <= q, k <= k_max.
Int enumeration_cost(Int q, std::optional<Int> k_max = {});

SumReport sum_report(const ThetaSequence& theta, const QuadraticPhase& phase, Int k);

/// One report per k with 0 < 2k <= q (capped by k_max). Throws
/// Errc::ComplexityBudgetExceeded when enumeration_cost exceeds budget.
std::vector<SumReport> verify_sum_identities(Int p, Int q, std::optional<Int> k_max = {},
                                             Int budget = kDefaultSumBudget);

}  // namespace polyvfe
