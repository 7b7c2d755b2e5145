#pragma once

// Rotations of R^3 and their unit-quaternion lifts.
//
// Conventions: quaternions are scalar-first (w, x, y, z) with Hamilton
// products; a unit quaternion s acts on v as s v s^-1, so the spinor of
// (axis, angle) is (cos(angle/2), sin(angle/2) axis) and rotates right-handedly.
// Matrix products compose left to right as written: (A * B) v = A (B v).

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "polyvfe/gauss.hpp"

namespace polyvfe {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3& operator+=(const Vec3& o) noexcept { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) noexcept { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) noexcept { x *= s; y *= s; z *= s; return *this; }

  friend Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
  friend Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
  friend Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
  friend Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }

/// The in-plane unit vector e^{i phi} = (cos phi, sin phi, 0).
inline Vec3 planar_axis(double phi) noexcept { return {std::cos(phi), std::sin(phi), 0.0}; }

class RotationMatrix {
 public:
  using Rows = std::array<std::array<double, 3>, 3>;

  RotationMatrix() noexcept;  // identity
  explicit RotationMatrix(const Rows& rows) noexcept : m_(rows) {}

  double operator()(int r, int c) const noexcept { return m_[r][c]; }
  const Rows& rows() const noexcept { return m_; }

  double trace() const noexcept { return m_[0][0] + m_[1][1] + m_[2][2]; }
  double determinant() const noexcept;
  RotationMatrix transpose() const noexcept;
  /// max |(R^T R - I)_{ij}|
  double orthogonality_defect() const noexcept;
  double max_abs_diff(const RotationMatrix& o) const noexcept;

  Vec3 apply(const Vec3& v) const noexcept;
  friend RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) noexcept;

 private:
  Rows m_;
};

struct Spinor {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const noexcept { return std::sqrt(w * w + x * x + y * y + z * z); }
  Spinor conjugate() const noexcept { return {w, -x, -y, -z}; }

  friend Spinor operator*(const Spinor& a, const Spinor& b) noexcept {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend Spinor operator-(const Spinor& s) noexcept { return {-s.w, -s.x, -s.y, -s.z}; }
  friend bool operator==(const Spinor&, const Spinor&) = default;
};

struct AxisAngle {
  Vec3 axis;
  double angle = 0.0;         // in [0, pi]
  bool axis_reliable = true;  // false near angle 0 (axis arbitrary) or pi (sign ambiguous)
};

RotationMatrix rotation_from_axis_angle(const Vec3& axis, double angle);
Spinor spinor_from_axis_angle(const Vec3& axis, double angle);
RotationMatrix spinor_to_rotation(const Spinor& s);

/// Angle in [0, pi] read off the trace. Throws Errc::NotARotation when R is
/// not proper orthogonal within 1e-9.
double rotation_angle(const RotationMatrix& r);
AxisAngle axis_angle(const RotationMatrix& r);

/// Side angle of the skew polygon: 2 arccos(cos(pi/M)^{1/q}) for odd q and
/// 2 arccos(cos(pi/M)^{2/q}) for even q.
double rho_angle(Int sides, Int q);

/// Ordered product over n = 0..q-1 with 4 not dividing q-2n of
/// R(e^{i theta_{q-1-n}}, rho), the n = 0 factor leftmost.
RotationMatrix ordered_rotation_product(const ThetaSequence& theta, double rho);
/// Same product in quaternion form.
Spinor ordered_spinor_product(const ThetaSequence& theta, double rho);

struct Theorem2Report {
  double rho = 0.0;
  double angle = 0.0;
  double angle_error = 0.0;
  double falsification_margin = 0.0;
};

Theorem2Report verify_rotation_product(Int sides, Int p, Int q);

struct TraceIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs: half the real trace of prod_n (x I + i v_n . sigma), v_n = e^{i phi_n},
/// by 2x2 complex products. rhs: sum_k (-1)^k x^{N-2k} sum over I_{2k}^N of
/// cos(phi_{n1} - phi_{n2} + ... - phi_{n2k}).
TraceIdentity trace_identity(double x, std::span<const double> phis);

}  // namespace polyvfe
