#include <doctest.h>

#include <numbers>

#include "polyvfe/numeric.hpp"
#include "polyvfe/vfe.hpp"
#include "support.hpp"

using namespace polyvfe;
using std::numbers::pi;

namespace {

double max_norm_defect(const TangentField& f) {
  double worst = 0.0;
  for (const Vec3& v : f.samples) worst = std::max(worst, std::abs(norm(v) - 1.0));
  return worst;
}

SimulationConfig config(Int m, Int p, Int q, Int grid = 0, Scheme scheme = Scheme::pseudo_spectral_rk4) {
  SimulationConfig c;
  c.sides = m;
  c.p = p;
  c.q = q;
  c.grid_points = grid;
  c.scheme = scheme;
  return c;
}

}  // namespace

TEST_CASE("initial tangent") {
  const TangentField f = initial_tangent(3, 6);
  const double h = std::sqrt(3.0) / 2;
  const Vec3 want[] = {{1, 0, 0}, {1, 0, 0}, {-0.5, h, 0}, {-0.5, h, 0}, {-0.5, -h, 0}, {-0.5, -h, 0}};
  REQUIRE(f.size() == 6);
  for (std::size_t j = 0; j < 6; ++j) CHECK(norm(f.samples[j] - want[j]) < 1e-15);
  CHECK(f.time == 0.0);

  for (Int m = 3; m <= 9; ++m) {
    const TangentField g = initial_tangent(m, 4 * m);
    Vec3 sum;
    for (std::size_t j = 0; j < g.size(); j += 4) sum += g.samples[j];
    CHECK(norm(sum) < 1e-14);
    CHECK(max_norm_defect(g) < 1e-15);
    for (const Vec3& v : g.samples) CHECK(v.z == 0.0);
  }
  CHECK_ERRC(initial_tangent(5, 12), Errc::GridNotDivisible);
}

TEST_CASE("config validation") {
  CHECK(config(5, 1, 3).resolved_grid_points() == 1920);
  CHECK(config(5, 1, 3).expected_sides() == 15);
  CHECK(config(3, 1, 2).expected_sides() == 3);
  CHECK(config(5, 1, 1).rational_time() == doctest::Approx(2 * pi / 25));
  CHECK_ERRC(config(2, 1, 1).validate(), Errc::InvalidArgument);
  CHECK_ERRC(config(5, 2, 4).validate(), Errc::NotCoprime);
  CHECK_ERRC(config(5, 1, 3, 100).validate(), Errc::GridNotDivisible);
  SimulationConfig bad = config(5, 1, 1);
  bad.dt_factor = 0.0;
  CHECK_ERRC(bad.validate(), Errc::InvalidArgument);
}

TEST_CASE("scheme names round-trip") {
  for (Scheme s : {Scheme::pseudo_spectral_rk4, Scheme::central_fd_rk4}) CHECK(scheme_from_string(to_string(s)) == s);
  CHECK_ERRC(scheme_from_string("euler"), Errc::InvalidArgument);
}

TEST_CASE("evolve trivial cases") {
  const TangentField f = initial_tangent(5, 200);
  const TangentField same = evolve(f, 0.0, config(5, 1, 1));
  CHECK(same.samples == f.samples);

  TangentField flat;
  flat.samples.assign(64, Vec3{1, 0, 0});
  for (Scheme s : {Scheme::pseudo_spectral_rk4, Scheme::central_fd_rk4}) {
    const TangentField g = evolve(flat, 0.5, config(5, 1, 1, 0, s));
    CHECK(g.time == 0.5);
    for (const Vec3& v : g.samples) CHECK(norm(v - Vec3{1, 0, 0}) < 1e-14);
  }
  CHECK_ERRC(evolve(f, -1.0, config(5, 1, 1)), Errc::InvalidArgument);
}

TEST_CASE("oversized steps abort with BlowUp") {
  SimulationConfig c = config(5, 1, 1, 200, Scheme::central_fd_rk4);
  c.dt_factor = 5.0;
  CHECK_ERRC(evolve(initial_tangent(5, 200), 0.05, c), Errc::BlowUp);
}

TEST_CASE("evolution keeps unit norm and is deterministic") {
  for (Scheme s : {Scheme::pseudo_spectral_rk4, Scheme::central_fd_rk4}) {
    const SimulationConfig c = config(3, 1, 3, 288, s);
    const TangentField start = initial_tangent(3, 288);
    const TangentField a = evolve(start, c.rational_time(), c);
    const TangentField b = evolve(start, c.rational_time(), c);
    CHECK(max_norm_defect(a) <= 1e-8);
    CHECK(a.samples == b.samples);
    CHECK(a.time == c.rational_time());
  }
}

TEST_CASE("pre-normalization drift per step stays below 1e-6 at the default step") {
  const SimulationConfig c = config(5, 1, 1);
  EvolveStats stats;
  evolve(initial_tangent(5, c.resolved_grid_points()), c.rational_time(), c, &stats);
  CHECK(stats.steps > 0);
  CHECK(stats.max_norm_drift <= 1e-6);
}

TEST_CASE("measure_plateaus on synthetic fields") {
  const TangentField f = initial_tangent(6, 120);
  const PlateauReport r = measure_plateaus(f, 6);
  CHECK(r.plateau_means.size() == 6);
  CHECK(r.adjacent_angles.size() == 6);
  for (double a : r.adjacent_angles) CHECK(a == doctest::Approx(2 * pi / 6));
  CHECK(r.angle_spread < 1e-12);
  CHECK(r.max_block_rms < 1e-15);

  // 15 plateaus on a cone, adjacent directions separated by a fixed angle.
  TangentField cone;
  const double tilt = 0.3;
  for (int j = 0; j < 15 * 20; ++j) {
    const double phi = kTwoPi * static_cast<double>(j / 20) / 15.0;
    cone.samples.push_back({std::cos(tilt) * std::cos(phi), std::cos(tilt) * std::sin(phi), std::sin(tilt)});
  }
  const Vec3 a = cone.samples[0], b = cone.samples[20];
  const PlateauReport rc = measure_plateaus(cone, 15, 0.1);
  for (double x : rc.adjacent_angles) CHECK(x == doctest::Approx(std::acos(dot(a, b))));
  CHECK(rc.angle_spread < 1e-12);

  CHECK_ERRC(measure_plateaus(f, 7), Errc::GridNotDivisible);
  CHECK_ERRC(measure_plateaus(f, 6, 0.5), Errc::InvalidArgument);
}

TEST_CASE("half-block offsets") {
  CHECK(plateau_block_offset(1) == 0.0);
  CHECK(plateau_block_offset(3) == 0.0);
  CHECK(plateau_block_offset(2) == 0.5);
  CHECK(plateau_block_offset(4) == 0.0);
  CHECK(plateau_block_offset(6) == 0.5);
}

TEST_CASE("plateau detection") {
  CHECK(detect_plateau_count(initial_tangent(5, 200), 40) == 5);
  CHECK(detect_plateau_count(initial_tangent(7, 210), 40) == 7);
  TangentField flat;
  flat.samples.assign(120, Vec3{0, 0, 1});
  CHECK_FALSE(detect_plateau_count(flat, 40).has_value());
}

TEST_CASE("curve reconstruction") {
  const TangentField f = initial_tangent(5, 500);
  const CurveSample c = reconstruct_curve(f);
  CHECK(c.positions.size() == 501);
  CHECK(c.closure_gap() <= 1e-10);
  CHECK(c.mean_height == 0.0);

  TangentField flat;
  flat.samples.assign(100, Vec3{0, 1, 0});
  const CurveSample line = reconstruct_curve(flat, {1, 2, 3});
  CHECK(norm(line.positions.back() - Vec3{1, 2 + kTwoPi, 3}) < 1e-12);
  CHECK(line.positions[50].x == 1.0);
}

TEST_CASE("evolved pentagon at t = 2 pi / 75") {
  const SimulationConfig c = config(5, 1, 3, 960);
  EvolveStats stats;
  const TangentField f = evolve(initial_tangent(5, 960), c.rational_time(), c, &stats);
  const CurveSample curve = curve_at_time(f);
  CHECK(curve.mean_height > 0.0);
  double zmax = 0.0;
  for (const Vec3& v : f.samples) zmax = std::max(zmax, std::abs(v.z));
  CHECK(zmax > 0.01);
  const double ds = f.spacing();
  for (std::size_t j = 0; j + 1 < curve.positions.size(); ++j) {
    CHECK(std::abs(norm(curve.positions[j + 1] - curve.positions[j]) / ds - 1.0) <= 1e-6);
  }
  CHECK(detect_plateau_count(f, 60) == 15);
  const PlateauReport r = measure_plateaus(f, 15);
  CHECK(std::abs(r.angle_median - rho_angle(5, 3)) / rho_angle(5, 3) <= 0.10);
}

TEST_CASE("theorem 1 numerics on small grids") {
  const Theorem1Report q1 = verify_theorem1_numeric(config(5, 1, 1, 640));
  CHECK(q1.sides == 5);
  CHECK(q1.relative_error <= 0.05);
  CHECK(q1.detected_sides == 5);

  const Theorem1Report even = verify_theorem1_numeric(config(3, 1, 2, 384));
  CHECK(even.sides == 3);
  CHECK(even.block_offset == 0.5);
  CHECK(even.relative_error <= 0.10);

  const Theorem1Report p1 = verify_theorem1_numeric(config(3, 1, 3, 576));
  const Theorem1Report p2 = verify_theorem1_numeric(config(3, 2, 3, 576));
  CHECK(p1.sides == 9);
  CHECK(p2.sides == 9);
  CHECK(p1.predicted_rho == p2.predicted_rho);
  CHECK(p1.relative_error <= 0.10);
  CHECK(p2.relative_error <= 0.10);
  CHECK(p1.max_abs_z > 0.01);
}

TEST_CASE("rms distance") {
  const TangentField a = initial_tangent(5, 100);
  CHECK(rms_distance(a, a) == 0.0);
  TangentField b = a;
  for (Vec3& v : b.samples) v = -v;
  CHECK(rms_distance(a, b) == doctest::Approx(2.0));
  CHECK_ERRC(rms_distance(a, initial_tangent(5, 50)), Errc::InvalidArgument);
}
