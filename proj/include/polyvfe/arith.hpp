#pragma once

// Exact integer and combinatorial primitives: modular inverses, parity
// flags, strictly increasing index tuples, the cyclic shift map and the
// alternating forms L and Q.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace polyvfe {

using Int = std::int64_t;

/// Irreducible fraction p/q with q >= 1. p keeps its sign.
class Fraction {
 public:
  Fraction(Int p, Int q);

  Int p() const noexcept { return p_; }
  Int q() const noexcept { return q_; }

  friend bool operator==(const Fraction&, const Fraction&) = default;

 private:
  Int p_;
  Int q_;
};

struct ParityInfo {
  int delta = 0;               // 1 for odd q, 0 for even q
  std::optional<int> epsilon;  // common parity of admissible n (even q only)
  Int q_half = 0;              // q/2 for even q, 0 otherwise
};

Int gcd(Int a, Int b) noexcept;

/// Nonnegative residue of a modulo q (q >= 1).
Int mod(Int a, Int q) noexcept;

/// x in [0, q) with a*x = 1 (mod q). Throws Errc::NotCoprime.
Int mod_inverse(Int a, Int q);

ParityInfo parity_info(Int q);

/// True iff 4 does not divide 2n+2-q. Always true for odd q.
bool admissible(Int n, Int q);

/// Element of I_k^N: 0 <= v_1 < ... < v_k < N.
class IndexVector {
 public:
  IndexVector(std::vector<Int> components, Int bound);

  std::span<const Int> components() const noexcept { return components_; }
  Int bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return components_.size(); }
  Int operator[](std::size_t i) const { return components_[i]; }

  friend bool operator==(const IndexVector&, const IndexVector&) = default;
  friend auto operator<=>(const IndexVector& a, const IndexVector& b) {
    return a.components_ <=> b.components_;
  }

 private:
  std::vector<Int> components_;
  Int bound_;
};

/// Lexicographic stream over I_k^N. With a filter, only tuples whose every
/// component passes it are produced; the order is still lexicographic.
///
///   IndexVectorEnumerator e(2, 4);
///   while (e.next()) use(e.current());
class IndexVectorEnumerator {
 public:
  using Filter = std::function<bool(Int)>;

  IndexVectorEnumerator(Int k, Int bound, const Filter& filter = {});

  /// Advances to the next tuple; false once exhausted. The first call
  /// positions on the first tuple.
  bool next();

  std::span<const Int> current() const noexcept { return current_; }
  IndexVector current_vector() const { return IndexVector(current_, bound_); }

 private:
  Int bound_;
  std::vector<Int> pool_;         // allowed component values, increasing
  std::vector<std::size_t> pos_;  // positions into pool_
  std::vector<Int> current_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<IndexVector> enumerate_index_vectors(
    Int k, Int bound, const IndexVectorEnumerator::Filter& filter = {});

/// Number of k-subsets of an n-set, saturating at INT64_MAX.
Int binomial(Int n, Int k) noexcept;

/// f_h: reduce v + h*1 modulo N and rotate back into increasing order.
IndexVector shift_map(const IndexVector& v, Int h);

/// (v_2 - v_1) + (v_4 - v_3) + ... for tuples of even length.
Int alternating_linear(std::span<const Int> v);
Int alternating_linear(const IndexVector& v);

/// v_1^2 - v_2^2 + v_3^2 - ... for tuples of even length.
Int alternating_quadratic(std::span<const Int> v);
Int alternating_quadratic(const IndexVector& v);

/// sum_{h=0}^{q-1} exp(2 pi i c h / q) by direct summation.
std::complex<double> unity_sum(Int c, Int q);

}  // namespace polyvfe
