#include "polyvfe/sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polyvfe/error.hpp"
#include "polyvfe/numeric.hpp"

namespace polyvfe {
namespace {

void require_k(Int q, Int k) {
  if (k < 1 || 2 * k > q) {
    throw Error(Errc::RangeError, "need 0 < 2k <= q, got k=" + std::to_string(k) + " q=" + std::to_string(q));
  }
}

IndexVectorEnumerator admissible_tuples(Int q, Int k) {
  return IndexVectorEnumerator(2 * k, q, [q](Int n) { return admissible(n, q); });
}

}  // namespace

bool SumReport::passes(double tol) const {
  return std::isfinite(residual) && residual <= tol * std::max<double>(1.0, static_cast<double>(term_count));
}

double trig_sum(const ThetaSequence& theta, Int k) {
  const Int q = theta.q;
  require_k(q, k);
  auto tuples = admissible_tuples(q, k);
  CompensatedSum acc;
  while (tuples.next()) {
    const auto n = tuples.current();
    double phase = 0.0;
    for (std::size_t j = 0; j < n.size(); j += 2) phase += theta.theta(n[j]) - theta.theta(n[j + 1]);
    acc.add(std::cos(phase));
  }
  return acc.value();
}

std::complex<double> exp_sum(const QuadraticPhase& phase, Int q, Int k) {
  require_k(q, k);
  const Int denom = (2 - phase.delta) * (2 - phase.delta) * q;
  auto tuples = admissible_tuples(q, k);
  CompensatedComplexSum acc;
  while (tuples.next()) {
    const Int quad = mod(alternating_quadratic(tuples.current()), denom);
    acc.add(root_of_unity(mod(phase.a * quad, denom), denom));
  }
  return acc.value();
}

std::complex<double> exp_sum(Int p, Int q, Int k) { return exp_sum(quadratic_phase(p, q), q, k); }

Int admissible_term_count(Int q, Int k) {
  Int count = 0;
  for (Int n = 0; n < q; ++n) count += admissible(n, q) ? 1 : 0;
  return binomial(count, 2 * k);
}

Int enumeration_cost(Int q, std::optional<Int> k_max) {
  Int total = 0;
  for (Int k = 1; 2 * k <= q && (!k_max || k <= *k_max); ++k) {
    const Int c = binomial(q, 2 * k);
    if (c > std::numeric_limits<Int>::max() - total) return std::numeric_limits<Int>::max();
    total += c;
  }
  return total;
}

SumReport sum_report(const ThetaSequence& theta, const QuadraticPhase& phase, Int k) {
  SumReport r;
  r.p = theta.p;
  r.q = theta.q;
  r.k = k;
  r.t_value = trig_sum(theta, k);
  r.e_value = exp_sum(phase, theta.q, k);
  r.term_count = admissible_term_count(theta.q, k);
  const double re = r.e_value.real();
  r.residual = std::max({std::abs(r.t_value), std::abs(re), std::abs(r.t_value - re)});
  return r;
}

std::vector<SumReport> verify_sum_identities(Int p, Int q, std::optional<Int> k_max, Int budget) {
  const ThetaSequence theta = theta_sequence(p, q);
  const Int cost = enumeration_cost(q, k_max);
  if (cost > budget) {
    throw Error(Errc::ComplexityBudgetExceeded,
                std::to_string(cost) + " summands for q=" + std::to_string(q) + " exceed budget " +
                    std::to_string(budget));
  }
  const QuadraticPhase phase = quadratic_phase(p, q);
  std::vector<SumReport> out;
  for (Int k = 1; 2 * k <= q && (!k_max || k <= *k_max); ++k) out.push_back(sum_report(theta, phase, k));
  return out;
}

}  // namespace polyvfe
