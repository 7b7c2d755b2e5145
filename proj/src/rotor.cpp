#include "polyvfe/rotor.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "polyvfe/error.hpp"
#include "polyvfe/numeric.hpp"

namespace polyvfe {
namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kRotationTol = 1e-9;
constexpr double kCrossCheckTol = 1e-10;

void require_unit_axis(const Vec3& axis) {
  if (std::abs(norm(axis) - 1.0) > kUnitTol) throw Error(Errc::NonUnitAxis, "axis norm is not 1");
}

template <typename Visit>
void for_each_factor(const ThetaSequence& theta, Visit&& visit) {
  const Int q = theta.q;
  for (Int n = 0; n < q; ++n) {
    if (mod(q - 2 * n, 4) == 0) continue;
    const Int m = q - 1 - n;
    if (!theta.defined(m)) {
      throw Error(Errc::UndefinedTheta, "factor n=" + std::to_string(n) + " needs theta_" +
                                            std::to_string(m) + ", which vanishes");
    }
    visit(theta.theta(m));
  }
}

using Mat2 = std::array<std::complex<double>, 4>;  // row-major 2x2

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

}  // namespace

RotationMatrix::RotationMatrix() noexcept : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}

double RotationMatrix::determinant() const noexcept {
  return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
         m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
         m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
}

RotationMatrix RotationMatrix::transpose() const noexcept {
  Rows t{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t[r][c] = m_[c][r];
  return RotationMatrix(t);
}

double RotationMatrix::orthogonality_defect() const noexcept {
  const RotationMatrix g = transpose() * *this;
  double worst = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(g(r, c) - (r == c ? 1.0 : 0.0)));
  return worst;
}

double RotationMatrix::max_abs_diff(const RotationMatrix& o) const noexcept {
  double worst = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(m_[r][c] - o.m_[r][c]));
  return worst;
}

Vec3 RotationMatrix::apply(const Vec3& v) const noexcept {
  return {m_[0][0] * v.x + m_[0][1] * v.y + m_[0][2] * v.z,
          m_[1][0] * v.x + m_[1][1] * v.y + m_[1][2] * v.z,
          m_[2][0] * v.x + m_[2][1] * v.y + m_[2][2] * v.z};
}

RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) noexcept {
  RotationMatrix::Rows out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out[r][c] = a.m_[r][0] * b.m_[0][c] + a.m_[r][1] * b.m_[1][c] + a.m_[r][2] * b.m_[2][c];
  return RotationMatrix(out);
}

RotationMatrix rotation_from_axis_angle(const Vec3& axis, double angle) {
  require_unit_axis(axis);
  // Rodrigues: R = cI + s[n]_x + (1-c) n n^T
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  const double x = axis.x, y = axis.y, z = axis.z;
  return RotationMatrix({{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
                          {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
                          {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}});
}

Spinor spinor_from_axis_angle(const Vec3& axis, double angle) {
  require_unit_axis(axis);
  const double s = std::sin(angle / 2.0);
  return {std::cos(angle / 2.0), s * axis.x, s * axis.y, s * axis.z};
}

RotationMatrix spinor_to_rotation(const Spinor& q) {
  if (std::abs(q.norm() - 1.0) > kUnitTol) throw Error(Errc::NonUnitSpinor, "spinor norm is not 1");
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  return RotationMatrix({{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
                          {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
                          {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}});
}

double rotation_angle(const RotationMatrix& r) {
  if (r.orthogonality_defect() > kRotationTol || std::abs(r.determinant() - 1.0) > kRotationTol) {
    throw Error(Errc::NotARotation, "matrix is not proper orthogonal");
  }
  const double c = (r.trace() - 1.0) / 2.0;
  if (c > 1.0 + kRotationTol || c < -1.0 - kRotationTol) {
    throw Error(Errc::NotARotation, "trace out of range");
  }
  return std::acos(std::clamp(c, -1.0, 1.0));
}

AxisAngle axis_angle(const RotationMatrix& r) {
  AxisAngle out;
  out.angle = rotation_angle(r);
  const Vec3 skew{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  const double len = norm(skew);  // = 2 sin(angle)
  if (len > 1e-6) {
    out.axis = (1.0 / len) * skew;
    out.axis_reliable = true;
    return out;
  }
  out.axis_reliable = false;
  if (out.angle < std::numbers::pi / 2) {
    out.axis = {1.0, 0.0, 0.0};
    return out;
  }
  // Near pi: R + I = 2 n n^T; take the column with the largest diagonal.
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (r(i, i) > r(best, best)) best = i;
  Vec3 col{r(0, best), r(1, best), r(2, best)};
  if (best == 0) col.x += 1.0;
  if (best == 1) col.y += 1.0;
  if (best == 2) col.z += 1.0;
  out.axis = (1.0 / norm(col)) * col;
  return out;
}

double rho_angle(Int sides, Int q) {
  if (sides < 3) throw Error(Errc::InvalidArgument, "M must be at least 3");
  if (q < 1) throw Error(Errc::InvalidArgument, "q must be positive");
  const double c = std::cos(std::numbers::pi / static_cast<double>(sides));
  const double exponent = (q % 2 == 1 ? 1.0 : 2.0) / static_cast<double>(q);
  return 2.0 * std::acos(std::pow(c, exponent));
}

Spinor ordered_spinor_product(const ThetaSequence& theta, double rho) {
  Spinor acc;
  for_each_factor(theta, [&](double phi) { acc = acc * spinor_from_axis_angle(planar_axis(phi), rho); });
  return acc;
}

RotationMatrix ordered_rotation_product(const ThetaSequence& theta, double rho) {
  if (!(rho > 0.0 && rho < std::numbers::pi)) throw Error(Errc::RangeError, "rho must lie in (0, pi)");
  RotationMatrix acc;
  for_each_factor(theta, [&](double phi) { acc = acc * rotation_from_axis_angle(planar_axis(phi), rho); });
  Spinor s = ordered_spinor_product(theta, rho);
  const double n = s.norm();
  s = {s.w / n, s.x / n, s.y / n, s.z / n};
  if (acc.max_abs_diff(spinor_to_rotation(s)) > kCrossCheckTol) {
    throw Error(Errc::CrossCheckFailed, "matrix and quaternion products disagree");
  }
  return acc;
}

Theorem2Report verify_rotation_product(Int sides, Int p, Int q) {
  const ThetaSequence theta = theta_sequence(p, q);
  const double target = kTwoPi / static_cast<double>(sides);
  Theorem2Report out;
  out.rho = rho_angle(sides, q);
  out.angle = rotation_angle(ordered_rotation_product(theta, out.rho));
  out.angle_error = std::abs(out.angle - target);
  double margin = std::numeric_limits<double>::infinity();
  for (double scale : {0.95, 1.05}) {
    const double a = rotation_angle(ordered_rotation_product(theta, scale * out.rho));
    margin = std::min(margin, std::abs(a - target));
  }
  out.falsification_margin = margin;
  return out;
}

TraceIdentity trace_identity(double x, std::span<const double> phis) {
  if (phis.empty()) throw Error(Errc::InvalidArgument, "need at least one angle");
  const std::complex<double> i(0.0, 1.0);
  Mat2 prod{1.0, 0.0, 0.0, 1.0};
  for (double phi : phis) {
    // v . sigma = [[0, e^{-i phi}], [e^{i phi}, 0]]
    const Mat2 factor{x, i * std::polar(1.0, -phi), i * std::polar(1.0, phi), x};
    prod = mul(prod, factor);
  }
  TraceIdentity out;
  out.lhs = 0.5 * (prod[0] + prod[3]).real();

  const Int n = static_cast<Int>(phis.size());
  CompensatedSum rhs;
  for (Int k = 0; 2 * k <= n; ++k) {
    CompensatedSum inner;
    IndexVectorEnumerator tuples(2 * k, n);
    while (tuples.next()) {
      const auto idx = tuples.current();
      double phase = 0.0;
      for (std::size_t j = 0; j < idx.size(); j += 2) {
        phase += phis[static_cast<std::size_t>(idx[j])] - phis[static_cast<std::size_t>(idx[j + 1])];
      }
      inner.add(std::cos(phase));
    }
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    rhs.add(sign * std::pow(x, static_cast<double>(n - 2 * k)) * inner.value());
  }
  out.rhs = rhs.value();
  return out;
}

}  // namespace polyvfe
