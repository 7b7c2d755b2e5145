#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "polyvfe/rotor.hpp"
#include "support.hpp"

using namespace polyvfe;
using std::numbers::pi;

namespace {

Spinor random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Spinor s{g(rng), g(rng), g(rng), g(rng)};
  const double n = s.norm();
  return {s.w / n, s.x / n, s.y / n, s.z / n};
}

}  // namespace

TEST_CASE("rotation_from_axis_angle examples") {
  CHECK(rotation_from_axis_angle({1, 0, 0}, 0.0).max_abs_diff(RotationMatrix()) == 0.0);
  const Vec3 v = rotation_from_axis_angle({0, 0, 1}, pi / 2).apply({1, 0, 0});
  CHECK(norm(v - Vec3{0, 1, 0}) < 1e-15);
  CHECK(rotation_from_axis_angle({1, 0, 0}, 2 * pi / 5).trace() == doctest::Approx(1 + 2 * std::cos(2 * pi / 5)));
  CHECK_ERRC(rotation_from_axis_angle({1, 1, 0}, 1.0), Errc::NonUnitAxis);
}

TEST_CASE("spinor_from_axis_angle examples") {
  CHECK(spinor_from_axis_angle({0, 1, 0}, 0.0) == Spinor{1, 0, 0, 0});
  const Spinor half = spinor_from_axis_angle({1, 0, 0}, pi);
  CHECK(std::abs(half.w) < 1e-16);
  CHECK(half.x == doctest::Approx(1.0));
  const Spinor full = spinor_from_axis_angle({0, 0, 1}, 2 * pi);
  CHECK(full.w == doctest::Approx(-1.0));
  CHECK(spinor_to_rotation(full).max_abs_diff(RotationMatrix()) < 1e-15);
  CHECK_ERRC(spinor_from_axis_angle({0, 0, 2}, 1.0), Errc::NonUnitAxis);
}

TEST_CASE("spinor_to_rotation examples") {
  CHECK(spinor_to_rotation(Spinor{}).max_abs_diff(RotationMatrix()) == 0.0);
  const RotationMatrix rz = spinor_to_rotation(Spinor{0, 0, 0, 1});
  CHECK(rz.max_abs_diff(rotation_from_axis_angle({0, 0, 1}, pi)) < 1e-15);
  CHECK_ERRC(spinor_to_rotation(Spinor{1, 1, 0, 0}), Errc::NonUnitSpinor);
}

TEST_CASE("double cover is a homomorphism") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Spinor a = random_spinor(rng), b = random_spinor(rng);
    const RotationMatrix lhs = spinor_to_rotation(a * b);
    const RotationMatrix rhs = spinor_to_rotation(a) * spinor_to_rotation(b);
    CHECK(lhs.max_abs_diff(rhs) <= 1e-10);
    CHECK(spinor_to_rotation(a).max_abs_diff(spinor_to_rotation(-a)) == 0.0);
  }
}

TEST_CASE("spinor and matrix agree on axis-angle input") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int i = 0; i < 200; ++i) {
    const Vec3 axis = planar_axis(u(rng));
    const double angle = u(rng);
    CHECK(spinor_to_rotation(spinor_from_axis_angle(axis, angle)).max_abs_diff(rotation_from_axis_angle(axis, angle)) <
          1e-14);
  }
}

TEST_CASE("rotation_angle") {
  CHECK(rotation_angle(RotationMatrix()) == 0.0);
  CHECK(rotation_angle(rotation_from_axis_angle({0, 0, 1}, 2 * pi / 3)) == doctest::Approx(2 * pi / 3));
  CHECK(rotation_angle(rotation_from_axis_angle({0, 1, 0}, pi)) == doctest::Approx(pi));
  const RotationMatrix scaled({{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  CHECK_ERRC(rotation_angle(scaled), Errc::NotARotation);
  const RotationMatrix reflection({{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  CHECK_ERRC(rotation_angle(reflection), Errc::NotARotation);
}

TEST_CASE("axis_angle") {
  const Vec3 axis{0, 0.6, 0.8};
  const AxisAngle aa = axis_angle(rotation_from_axis_angle(axis, 1.0));
  CHECK(aa.axis_reliable);
  CHECK(aa.angle == doctest::Approx(1.0));
  CHECK(norm(aa.axis - axis) < 1e-12);

  const AxisAngle flip = axis_angle(rotation_from_axis_angle(axis, pi));
  CHECK_FALSE(flip.axis_reliable);
  CHECK(std::abs(std::abs(dot(flip.axis, axis)) - 1.0) < 1e-12);

  CHECK_FALSE(axis_angle(RotationMatrix()).axis_reliable);
}

TEST_CASE("rho_angle") {
  CHECK(std::abs(rho_angle(5, 3) - 0.74295) <= 5e-5);
  for (Int m = 3; m <= 12; ++m) {
    CHECK(rho_angle(m, 1) == doctest::Approx(2 * pi / static_cast<double>(m)));
    CHECK(rho_angle(m, 2) == doctest::Approx(2 * pi / static_cast<double>(m)));
    for (Int q = 1; q <= 20; ++q) {
      const double rho = rho_angle(m, q);
      CHECK(rho > 0.0);
      CHECK(rho < pi);
      const double lhs = std::pow(std::cos(rho / 2), static_cast<double>(q));
      const double c = std::cos(pi / static_cast<double>(m));
      CHECK(lhs == doctest::Approx(q % 2 == 1 ? c : c * c).epsilon(1e-12));
    }
  }
  CHECK_ERRC(rho_angle(2, 1), Errc::InvalidArgument);
  CHECK_ERRC(rho_angle(5, 0), Errc::InvalidArgument);
}

TEST_CASE("ordered product examples") {
  const double rho5 = 2 * pi / 5;
  const RotationMatrix r1 = ordered_rotation_product(theta_sequence(1, 1), 0.3);
  CHECK(r1.max_abs_diff(rotation_from_axis_angle({1, 0, 0}, 0.3)) < 1e-15);
  const RotationMatrix r2 = ordered_rotation_product(theta_sequence(1, 2), rho5);
  CHECK(r2.max_abs_diff(rotation_from_axis_angle({1, 0, 0}, rho5)) < 1e-15);
  const RotationMatrix r3 = ordered_rotation_product(theta_sequence(1, 3), rho_angle(5, 3));
  CHECK(std::abs(rotation_angle(r3) - rho5) <= 1e-9);
  CHECK_ERRC(ordered_rotation_product(theta_sequence(1, 3), 0.0), Errc::RangeError);
  CHECK_ERRC(ordered_rotation_product(theta_sequence(1, 3), pi), Errc::RangeError);
}

TEST_CASE("ordering matters") {
  // Reversing the factors of a non-commuting product changes the matrix.
  const ThetaSequence seq = theta_sequence(1, 3);
  const double rho = rho_angle(5, 3);
  RotationMatrix reversed;
  for (Int n = 2; n >= 0; --n) reversed = reversed * rotation_from_axis_angle(planar_axis(seq.theta(2 - n)), rho);
  CHECK(ordered_rotation_product(seq, rho).max_abs_diff(reversed) > 1e-3);
}

TEST_CASE("undefined theta in a required factor is reported") {
  ThetaSequence seq = theta_sequence(1, 3);
  seq.entries[1].vanishing = true;
  seq.entries[1].argument.reset();
  CHECK_ERRC(ordered_rotation_product(seq, 0.5), Errc::UndefinedTheta);
}

TEST_CASE("ordered product angle matches the long-double quaternion oracle") {
  for (Int q = 1; q <= 16; ++q) {
    for (Int p = 1; p <= q; ++p) {
      if (gcd(p, q) != 1) continue;
      for (Int m : {3, 5, 8}) {
        const double rho = rho_angle(m, q);
        const double got = rotation_angle(ordered_rotation_product(theta_sequence(p, q), rho));
        CHECK(std::abs(got - static_cast<double>(oracle::product_angle(p, q, rho))) < 1e-10);
      }
    }
  }
}

TEST_CASE("verify_rotation_product") {
  const Theorem2Report a = verify_rotation_product(5, 1, 3);
  CHECK(a.angle_error <= 1e-9);
  CHECK(verify_rotation_product(3, 1, 1).angle_error <= 1e-14);
  const Theorem2Report c = verify_rotation_product(5, 1, 2);
  CHECK(c.angle_error <= 1e-12);
  CHECK(c.falsification_margin == doctest::Approx(0.05 * 2 * pi / 5));
  for (Int m = 3; m <= 10; ++m) {
    for (Int q = 1; q <= 16; ++q) {
      for (Int p = 1; p <= q; ++p) {
        if (gcd(p, q) != 1) continue;
        const Theorem2Report r = verify_rotation_product(m, p, q);
        CHECK(r.angle_error <= 1e-9);
        CHECK(r.falsification_margin > 1e-4);
      }
    }
  }
}

TEST_CASE("spinor half-trace equals cos(pi/M)") {
  for (Int m = 3; m <= 10; ++m) {
    for (Int q = 1; q <= 16; ++q) {
      for (Int p = 1; p <= q; ++p) {
        if (gcd(p, q) != 1) continue;
        const Spinor s = ordered_spinor_product(theta_sequence(p, q), rho_angle(m, q));
        CHECK(std::abs(std::abs(s.w) - std::cos(pi / static_cast<double>(m))) < 1e-10);
      }
    }
  }
}

TEST_CASE("q = 1 product is the planar exterior angle") {
  for (Int m = 3; m <= 12; ++m) {
    const double ext = 2 * pi / static_cast<double>(m);
    CHECK(rotation_angle(ordered_rotation_product(theta_sequence(1, 1), ext)) == doctest::Approx(ext));
  }
}

TEST_CASE("trace identity examples") {
  const double single[] = {0.7};
  const TraceIdentity t1 = trace_identity(1.3, single);
  CHECK(t1.lhs == doctest::Approx(1.3));
  CHECK(t1.rhs == doctest::Approx(1.3));

  const double opposite[] = {0.0, pi};
  const TraceIdentity t2 = trace_identity(1.0, opposite);
  CHECK(t2.lhs == doctest::Approx(2.0));
  CHECK(t2.rhs == doctest::Approx(2.0));

  const double quarter[] = {0.0, pi / 2};
  const TraceIdentity t3 = trace_identity(1.0, quarter);
  CHECK(t3.lhs == doctest::Approx(1.0));
  CHECK(t3.rhs == doctest::Approx(1.0));

  CHECK_ERRC(trace_identity(1.0, std::span<const double>()), Errc::InvalidArgument);
}

TEST_CASE("trace identity on random draws") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> xs(-2, 2), phis(0, 2 * pi);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> phi(static_cast<std::size_t>(size(rng)));
    for (double& f : phi) f = phis(rng);
    const double x = xs(rng);
    const TraceIdentity t = trace_identity(x, phi);
    CHECK(std::abs(t.lhs - t.rhs) <= 1e-10 * std::pow(1 + std::abs(x), static_cast<double>(phi.size())));
  }
}
