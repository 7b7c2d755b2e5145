#pragma once

// Direct simulation of the Schroedinger map T_t = T x T_ss on the periodic
// arc-length interval [0, 2 pi), started from the tangent of a regular planar
// M-gon, and measurement of the piecewise-constant tangent it develops at
// rational times t = 2 pi p / (q M^2).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polyvfe/arith.hpp"
#include "polyvfe/rotor.hpp"

namespace polyvfe {

/// Discretization of T_ss; time stepping is classical RK4 for both.
enum class Scheme {
  pseudo_spectral_rk4,  // FFT second derivative, exact k^2 dispersion
  central_fd_rk4,       // second-order periodic central differences
};

const char* to_string(Scheme scheme) noexcept;
/// Throws Errc::InvalidArgument for unknown names.
Scheme scheme_from_string(const std::string& name);

struct SimulationConfig {
  Int sides = 5;  // M
  Int p = 1;
  Int q = 1;
  Int grid_points = 0;  // 0 selects default_grid_points()
  // dt = 4 dt_factor / lambda_max, lambda_max the spectral radius of the
  // discrete second derivative: dt_factor ds^2 for central differences,
  // 4 dt_factor ds^2 / pi^2 for the spectral operator.
  double dt_factor = 0.4;
  Scheme scheme = Scheme::pseudo_spectral_rk4;

  Int default_grid_points() const noexcept { return 128 * sides * q; }
  Int resolved_grid_points() const noexcept { return grid_points > 0 ? grid_points : default_grid_points(); }
  /// t_{p/q} = 2 pi p / (q M^2)
  double rational_time() const noexcept;
  /// Mq for odd q, Mq/2 for even q.
  Int expected_sides() const noexcept;
  double time_step(double ds) const noexcept;
  /// Throws Errc::InvalidArgument / NotCoprime / GridNotDivisible.
  void validate() const;
};

struct TangentField {
  double time = 0.0;
  std::vector<Vec3> samples;  // at s_j = 2 pi j / samples.size()
  Vec3 centroid_shift;        // displacement of the curve's centroid since t = 0

  std::size_t size() const noexcept { return samples.size(); }
  double spacing() const noexcept;
};

struct EvolveStats {
  std::size_t steps = 0;
  double max_norm_drift = 0.0;  // largest | |T_j| - 1 | before renormalization
};

struct PlateauReport {
  Int expected_sides = 0;
  std::vector<Vec3> plateau_means;
  std::vector<double> adjacent_angles;  // angle between mean j and mean j+1 (cyclic)
  double angle_median = 0.0;
  double angle_spread = 0.0;
  double max_block_rms = 0.0;  // RMS distance of trimmed samples from their block mean, worst block
};

struct CurveSample {
  std::vector<Vec3> positions;  // X(s_j), plus the closing point X(2 pi)
  double mean_height = 0.0;
  double closure_gap() const noexcept;
};

struct Theorem1Report {
  Int sides = 0;
  double angle_median = 0.0;
  double angle_spread = 0.0;
  double predicted_rho = 0.0;
  double relative_error = 0.0;
  double block_offset = 0.0;
  Int detected_sides = 0;  // 0 when no plateau count fits
  double max_abs_z = 0.0;
  EvolveStats stats;
};

TangentField initial_tangent(Int sides, Int grid_points);

TangentField evolve(const TangentField& field, double t_target, const SimulationConfig& config,
                    EvolveStats* stats = nullptr);

/// Block j covers samples [(j + offset) B, (j + 1 + offset) B) with
/// B = N / expected_sides, cyclically; only its central (1 - 2 trim) part is
/// averaged. offset is a fraction of a block.
PlateauReport measure_plateaus(const TangentField& field, Int expected_sides, double trim_fraction = 0.25,
                               double block_offset = 0.0);

/// Offset (in blocks) of the first corner after s = 0 at time t_{p/q}: corners
/// sit at s = 2 pi n / (M q) for admissible n, which for even q with q/2 odd
/// are the odd n.
double plateau_block_offset(Int q);

/// Smallest side count n <= max_sides (n dividing the grid, block offset 0 or
/// 1/2) whose blocks look like distinct plateaus: every trimmed block stays
/// within 0.2 * min(median angle, 1) (RMS) of its mean and no adjacent angle falls
/// below half the median.
std::optional<Int> detect_plateau_count(const TangentField& field, Int max_sides, double trim_fraction = 0.25);

/// Integrates X_s = T from X(0) = base_point.
CurveSample reconstruct_curve(const TangentField& field, const Vec3& base_point = {});

/// The curve placed so that its centroid is field.centroid_shift, i.e. the
/// initial polygon is centred at the origin and the centroid then follows
/// X_t = T x T_s. mean_height is the centroid height.
CurveSample curve_at_time(const TangentField& field);

Theorem1Report verify_theorem1_numeric(const SimulationConfig& config);

/// Root-mean-square of |a_j - b_j| over the grid.
double rms_distance(const TangentField& a, const TangentField& b);

}  // namespace polyvfe
