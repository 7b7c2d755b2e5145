#include "polyvfe/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "polyvfe/error.hpp"
#include "polyvfe/numeric.hpp"

namespace polyvfe {

Fraction::Fraction(Int p, Int q) : p_(p), q_(q) {
  if (q < 1) throw Error(Errc::InvalidArgument, "denominator must be positive, got " + std::to_string(q));
  if (gcd(p, q) != 1) {
    throw Error(Errc::NotCoprime, std::to_string(p) + "/" + std::to_string(q) + " is not irreducible");
  }
}

Int gcd(Int a, Int b) noexcept { return std::gcd(a, b); }

Int mod(Int a, Int q) noexcept {
  const Int r = a % q;
  return r < 0 ? r + q : r;
}

Int mod_inverse(Int a, Int q) {
  if (q < 1) throw Error(Errc::InvalidArgument, "modulus must be positive");
  // Extended Euclid on (a mod q, q).
  Int old_r = mod(a, q), r = q;
  Int old_s = 1, s = 0;
  while (r != 0) {
    const Int quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  if (old_r != 1 && q != 1) {
    throw Error(Errc::NotCoprime,
                std::to_string(a) + " has no inverse modulo " + std::to_string(q));
  }
  return mod(old_s, q);
}

ParityInfo parity_info(Int q) {
  if (q < 1) throw Error(Errc::InvalidArgument, "q must be positive");
  ParityInfo info;
  info.delta = static_cast<int>(q % 2);
  if (info.delta == 0) {
    info.q_half = q / 2;
    info.epsilon = static_cast<int>(info.q_half % 2);
  }
  return info;
}

bool admissible(Int n, Int q) {
  if (q % 2 != 0) return true;
  return mod(2 * n + 2 - q, 4) != 0;
}

IndexVector::IndexVector(std::vector<Int> components, Int bound)
    : components_(std::move(components)), bound_(bound) {
  if (bound < 1) throw Error(Errc::InvalidArgument, "index bound must be positive");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const Int c = components_[i];
    if (c < 0 || c >= bound || (i > 0 && components_[i - 1] >= c)) {
      throw Error(Errc::InvalidArgument, "index vector is not strictly increasing in [0, N)");
    }
  }
}

IndexVectorEnumerator::IndexVectorEnumerator(Int k, Int bound, const Filter& filter)
    : bound_(bound) {
  if (bound < 1 || k < 0 || k > bound) {
    throw Error(Errc::InvalidArgument,
                "need 0 <= k <= N, got k=" + std::to_string(k) + " N=" + std::to_string(bound));
  }
  for (Int n = 0; n < bound; ++n) {
    if (!filter || filter(n)) pool_.push_back(n);
  }
  pos_.resize(static_cast<std::size_t>(k));
  current_.resize(static_cast<std::size_t>(k));
  if (pos_.size() > pool_.size()) done_ = true;
}

bool IndexVectorEnumerator::next() {
  if (done_) return false;
  const std::size_t k = pos_.size();
  const std::size_t m = pool_.size();
  if (!started_) {
    started_ = true;
    std::iota(pos_.begin(), pos_.end(), std::size_t{0});
  } else {
    // Rightmost position that can still move.
    std::size_t i = k;
    while (i > 0 && pos_[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) {
      done_ = true;
      return false;
    }
    ++pos_[i - 1];
    for (std::size_t j = i; j < k; ++j) pos_[j] = pos_[j - 1] + 1;
  }
  for (std::size_t j = 0; j < k; ++j) current_[j] = pool_[pos_[j]];
  return true;
}

std::vector<IndexVector> enumerate_index_vectors(Int k, Int bound,
                                                 const IndexVectorEnumerator::Filter& filter) {
  std::vector<IndexVector> out;
  IndexVectorEnumerator e(k, bound, filter);
  while (e.next()) out.push_back(e.current_vector());
  return out;
}

Int binomial(Int n, Int k) noexcept {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int r = 1;
  for (Int i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact at every step.
    const Int num = n - k + i;
    if (r > std::numeric_limits<Int>::max() / num) return std::numeric_limits<Int>::max();
    r = r * num / i;
  }
  return r;
}

IndexVector shift_map(const IndexVector& v, Int h) {
  const Int n = v.bound();
  std::vector<Int> shifted(v.components().begin(), v.components().end());
  for (Int& c : shifted) c = mod(c + h, n);
  // The reduced tuple is a rotation of an increasing one, so sorting is the
  // circular permutation.
  std::sort(shifted.begin(), shifted.end());
  if (std::adjacent_find(shifted.begin(), shifted.end()) != shifted.end()) {
    throw Error(Errc::ComponentCollision, "two components coincide modulo N");
  }
  return IndexVector(std::move(shifted), n);
}

Int alternating_linear(std::span<const Int> v) {
  if (v.empty() || v.size() % 2 != 0) throw Error(Errc::OddLength, "alternating form needs even length >= 2");
  Int s = 0;
  for (std::size_t j = 0; j < v.size(); j += 2) s += v[j + 1] - v[j];
  return s;
}

Int alternating_linear(const IndexVector& v) { return alternating_linear(v.components()); }

Int alternating_quadratic(std::span<const Int> v) {
  if (v.empty() || v.size() % 2 != 0) throw Error(Errc::OddLength, "alternating form needs even length >= 2");
  Int s = 0;
  for (std::size_t j = 0; j < v.size(); j += 2) s += v[j] * v[j] - v[j + 1] * v[j + 1];
  return s;
}

Int alternating_quadratic(const IndexVector& v) { return alternating_quadratic(v.components()); }

std::complex<double> unity_sum(Int c, Int q) {
  if (q < 1) throw Error(Errc::InvalidArgument, "q must be positive");
  const Int step = mod(c, q);
  CompensatedComplexSum acc;
  Int r = 0;
  for (Int h = 0; h < q; ++h) {
    acc.add(root_of_unity(r, q));
    r = (r + step) % q;
  }
  return acc.value();
}

}  // namespace polyvfe
