#include "polyvfe/vfe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <memory>
#include <string>
#include <type_traits>

#include <fftw3.h>

#include "polyvfe/error.hpp"
#include "polyvfe/numeric.hpp"

namespace polyvfe {
namespace {

constexpr double kMinNorm = 0.5;
constexpr double kMaxNorm = 2.0;

// Evaluates T x T_ss on the periodic grid. The diagonal term of the central
// stencil drops out of the cross product.
class SchroedingerMapRhs {
 public:
  SchroedingerMapRhs(Scheme scheme, std::size_t n, double ds)
      : scheme_(scheme), n_(n), inv_ds2_(1.0 / (ds * ds)) {
    if (scheme_ != Scheme::pseudo_spectral_rk4) return;
    const int len = static_cast<int>(n_);
    const std::size_t modes = n_ / 2 + 1;
    real_.reset(fftw_alloc_real(3 * n_));
    spec_.reset(fftw_alloc_complex(3 * modes));
    forward_.reset(fftw_plan_many_dft_r2c(1, &len, 3, real_.get(), nullptr, 1, len, spec_.get(), nullptr, 1,
                                          static_cast<int>(modes), FFTW_ESTIMATE));
    backward_.reset(fftw_plan_many_dft_c2r(1, &len, 3, spec_.get(), nullptr, 1, static_cast<int>(modes),
                                           real_.get(), nullptr, 1, len, FFTW_ESTIMATE));
    if (!forward_ || !backward_) throw Error(Errc::InvalidArgument, "FFT planning failed");
    // ds = 2 pi / n, so wavenumbers are integers; 1/n undoes the unnormalized round trip.
    symbol_.resize(modes);
    for (std::size_t k = 0; k < modes; ++k) {
      symbol_[k] = -static_cast<double>(k * k) / static_cast<double>(n_);
    }
  }

  void operator()(const std::vector<Vec3>& t, std::vector<Vec3>& out) {
    if (scheme_ == Scheme::central_fd_rk4) {
      for (std::size_t j = 0; j < n_; ++j) {
        const Vec3& prev = t[j == 0 ? n_ - 1 : j - 1];
        const Vec3& next = t[j + 1 == n_ ? 0 : j + 1];
        out[j] = inv_ds2_ * cross(t[j], prev + next);
      }
      return;
    }
    double* x = real_.get();
    for (std::size_t j = 0; j < n_; ++j) {
      x[j] = t[j].x;
      x[n_ + j] = t[j].y;
      x[2 * n_ + j] = t[j].z;
    }
    fftw_execute(forward_.get());
    const std::size_t modes = symbol_.size();
    for (std::size_t c = 0; c < 3; ++c) {
      fftw_complex* row = spec_.get() + c * modes;
      for (std::size_t k = 0; k < modes; ++k) {
        row[k][0] *= symbol_[k];
        row[k][1] *= symbol_[k];
      }
    }
    fftw_execute(backward_.get());
    for (std::size_t j = 0; j < n_; ++j) out[j] = cross(t[j], Vec3{x[j], x[n_ + j], x[2 * n_ + j]});
  }

 private:
  struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
  };
  struct PlanFree {
    void operator()(fftw_plan p) const noexcept { fftw_destroy_plan(p); }
  };

  Scheme scheme_;
  std::size_t n_;
  double inv_ds2_;
  std::unique_ptr<double, FftwFree> real_;
  std::unique_ptr<fftw_complex, FftwFree> spec_;
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanFree> forward_;
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanFree> backward_;
  std::vector<double> symbol_;
};

// d/dt of the centroid (1/2pi) int X ds, with X_t = T x T_s.
Vec3 centroid_velocity(const std::vector<Vec3>& t) {
  const std::size_t n = t.size();
  CompensatedSum x, y, z;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3& prev = t[j == 0 ? n - 1 : j - 1];
    const Vec3& next = t[j + 1 == n ? 0 : j + 1];
    const Vec3 c = cross(t[j], next - prev);
    x.add(c.x);
    y.add(c.y);
    z.add(c.z);
  }
  const double scale = 1.0 / (4.0 * std::numbers::pi);
  return {scale * x.value(), scale * y.value(), scale * z.value()};
}

Vec3 normalized(const Vec3& v) { return (1.0 / norm(v)) * v; }

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

const char* to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::pseudo_spectral_rk4: return "pseudo_spectral_rk4";
    case Scheme::central_fd_rk4: return "central_fd_rk4";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "pseudo_spectral_rk4") return Scheme::pseudo_spectral_rk4;
  if (name == "central_fd_rk4") return Scheme::central_fd_rk4;
  throw Error(Errc::InvalidArgument, "unknown scheme " + name);
}

double SimulationConfig::time_step(double ds) const noexcept {
  const double base = dt_factor * ds * ds;
  return scheme == Scheme::central_fd_rk4 ? base : 4.0 * base / (std::numbers::pi * std::numbers::pi);
}

double SimulationConfig::rational_time() const noexcept {
  return kTwoPi * static_cast<double>(p) / (static_cast<double>(q) * static_cast<double>(sides * sides));
}

Int SimulationConfig::expected_sides() const noexcept { return q % 2 == 1 ? sides * q : sides * q / 2; }

void SimulationConfig::validate() const {
  if (sides < 3) throw Error(Errc::InvalidArgument, "M must be at least 3");
  if (q < 1) throw Error(Errc::InvalidArgument, "q must be positive");
  if (gcd(p, q) != 1) throw Error(Errc::NotCoprime, "p/q must be irreducible");
  if (p < 0) throw Error(Errc::InvalidArgument, "p must be nonnegative (time runs forward)");
  if (!(dt_factor > 0.0)) throw Error(Errc::InvalidArgument, "dt_factor must be positive");
  const Int g = resolved_grid_points();
  if (g < 1 || g % (sides * q) != 0) {
    throw Error(Errc::GridNotDivisible, "grid_points " + std::to_string(g) + " is not a multiple of M*q");
  }
}

double TangentField::spacing() const noexcept { return kTwoPi / static_cast<double>(samples.size()); }

double CurveSample::closure_gap() const noexcept {
  if (positions.size() < 2) return 0.0;
  return norm(positions.back() - positions.front());
}

TangentField initial_tangent(Int sides, Int grid_points) {
  if (sides < 1 || grid_points < 1 || grid_points % sides != 0) {
    throw Error(Errc::GridNotDivisible, "grid_points must be a positive multiple of M");
  }
  TangentField field;
  field.samples.reserve(static_cast<std::size_t>(grid_points));
  for (Int j = 0; j < grid_points; ++j) {
    const Int k = j * sides / grid_points;
    field.samples.push_back(planar_axis(kTwoPi * static_cast<double>(k) / static_cast<double>(sides)));
  }
  return field;
}

TangentField evolve(const TangentField& field, double t_target, const SimulationConfig& config,
                    EvolveStats* stats) {
  if (t_target < field.time) throw Error(Errc::InvalidArgument, "cannot evolve backwards in time");
  if (!(config.dt_factor > 0.0)) throw Error(Errc::InvalidArgument, "dt_factor must be positive");
  TangentField out = field;
  EvolveStats local;
  const std::size_t n = field.size();
  if (n == 0 || t_target == field.time) {
    if (stats) *stats = local;
    return out;
  }

  const double ds = field.spacing();
  const double dt_full = config.time_step(ds);
  SchroedingerMapRhs rhs(config.scheme, n, ds);
  const double span = t_target - field.time;
  auto full_steps = static_cast<std::size_t>(std::floor(span / dt_full));
  double tail = span - static_cast<double>(full_steps) * dt_full;
  if (tail <= 1e-12 * dt_full) tail = 0.0;

  std::vector<Vec3> k1(n), k2(n), k3(n), k4(n), stage(n);
  std::vector<Vec3>& t = out.samples;

  auto step = [&](double dt) {
    rhs(t, k1);
    const Vec3 c1 = centroid_velocity(t);
    for (std::size_t j = 0; j < n; ++j) stage[j] = t[j] + (0.5 * dt) * k1[j];
    rhs(stage, k2);
    const Vec3 c2 = centroid_velocity(stage);
    for (std::size_t j = 0; j < n; ++j) stage[j] = t[j] + (0.5 * dt) * k2[j];
    rhs(stage, k3);
    const Vec3 c3 = centroid_velocity(stage);
    for (std::size_t j = 0; j < n; ++j) stage[j] = t[j] + dt * k3[j];
    rhs(stage, k4);
    const Vec3 c4 = centroid_velocity(stage);

    const double w = dt / 6.0;
    for (std::size_t j = 0; j < n; ++j) {
      Vec3 next = t[j] + w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      const double len = norm(next);
      if (!(len >= kMinNorm && len <= kMaxNorm)) {
        throw Error(Errc::BlowUp, "sample norm " + std::to_string(len) + " at t=" + std::to_string(out.time) +
                                      "; reduce dt_factor");
      }
      local.max_norm_drift = std::max(local.max_norm_drift, std::abs(len - 1.0));
      t[j] = (1.0 / len) * next;
    }
    out.centroid_shift += w * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
    ++local.steps;
  };

  for (std::size_t i = 0; i < full_steps; ++i) {
    step(dt_full);
    out.time = field.time + static_cast<double>(i + 1) * dt_full;
  }
  if (tail > 0.0) step(tail);
  out.time = t_target;
  if (stats) *stats = local;
  return out;
}

PlateauReport measure_plateaus(const TangentField& field, Int expected_sides, double trim_fraction,
                               double block_offset) {
  const auto n = static_cast<std::size_t>(field.size());
  if (expected_sides < 1 || n % static_cast<std::size_t>(expected_sides) != 0) {
    throw Error(Errc::GridNotDivisible, "grid is not divisible into " + std::to_string(expected_sides) + " blocks");
  }
  if (!(trim_fraction >= 0.0 && trim_fraction < 0.5)) {
    throw Error(Errc::InvalidArgument, "trim_fraction must lie in [0, 0.5)");
  }
  const auto sides = static_cast<std::size_t>(expected_sides);
  const std::size_t block = n / sides;
  const auto lo = static_cast<std::size_t>(std::floor(trim_fraction * static_cast<double>(block)));
  const std::size_t hi = std::max(block - lo, lo + 1);
  const auto shift = static_cast<std::size_t>(std::floor(block_offset * static_cast<double>(block)));

  PlateauReport report;
  report.expected_sides = expected_sides;
  for (std::size_t b = 0; b < sides; ++b) {
    Vec3 sum;
    for (std::size_t i = lo; i < hi; ++i) sum += field.samples[(b * block + shift + i) % n];
    const Vec3 mean = normalized(sum);
    double sq = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const Vec3 d = field.samples[(b * block + shift + i) % n] - mean;
      sq += dot(d, d);
    }
    report.max_block_rms = std::max(report.max_block_rms, std::sqrt(sq / static_cast<double>(hi - lo)));
    report.plateau_means.push_back(mean);
  }
  for (std::size_t b = 0; b < sides; ++b) {
    const double c = dot(report.plateau_means[b], report.plateau_means[(b + 1) % sides]);
    report.adjacent_angles.push_back(std::acos(std::clamp(c, -1.0, 1.0)));
  }
  report.angle_median = median(report.adjacent_angles);
  const auto [mn, mx] = std::minmax_element(report.adjacent_angles.begin(), report.adjacent_angles.end());
  report.angle_spread = *mx - *mn;
  return report;
}

double plateau_block_offset(Int q) {
  const ParityInfo parity = parity_info(q);
  if (parity.delta == 1) return 0.0;
  return 0.5 * static_cast<double>(*parity.epsilon);
}

std::optional<Int> detect_plateau_count(const TangentField& field, Int max_sides, double trim_fraction) {
  const auto n = static_cast<Int>(field.size());
  for (Int sides = 2; sides <= max_sides; ++sides) {
    if (n % sides != 0 || n / sides < 4) continue;
    for (double offset : {0.0, 0.5}) {
      const PlateauReport r = measure_plateaus(field, sides, trim_fraction, offset);
      const double min_angle = *std::min_element(r.adjacent_angles.begin(), r.adjacent_angles.end());
      if (r.angle_median > 0.0 && r.max_block_rms <= 0.2 * std::min(r.angle_median, 1.0) &&
          min_angle >= 0.5 * r.angle_median) {
        return sides;
      }
    }
  }
  return std::nullopt;
}

CurveSample reconstruct_curve(const TangentField& field, const Vec3& base_point) {
  CurveSample curve;
  const std::size_t n = field.size();
  curve.positions.reserve(n + 1);
  curve.positions.push_back(base_point);
  const double ds = field.spacing();
  // Trapezoidal step with the averaged tangent put back on the sphere, so
  // every chord has length ds even across a corner.
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3 mid = field.samples[j] + field.samples[(j + 1) % n];
    const double len = norm(mid);
    const Vec3 dir = len > 0.0 ? (1.0 / len) * mid : field.samples[j];
    curve.positions.push_back(curve.positions.back() + ds * dir);
  }
  double z = 0.0;
  for (std::size_t j = 0; j < n; ++j) z += curve.positions[j].z;
  curve.mean_height = n > 0 ? z / static_cast<double>(n) : 0.0;
  return curve;
}

CurveSample curve_at_time(const TangentField& field) {
  CurveSample curve = reconstruct_curve(field);
  const std::size_t n = field.size();
  if (n == 0) return curve;
  Vec3 centroid;
  for (std::size_t j = 0; j < n; ++j) centroid += curve.positions[j];
  centroid = (1.0 / static_cast<double>(n)) * centroid;
  const Vec3 shift = field.centroid_shift - centroid;
  for (Vec3& x : curve.positions) x += shift;
  curve.mean_height = field.centroid_shift.z;
  return curve;
}

double rms_distance(const TangentField& a, const TangentField& b) {
  if (a.size() != b.size()) throw Error(Errc::InvalidArgument, "fields have different grids");
  if (a.size() == 0) return 0.0;
  double sq = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Vec3 d = a.samples[j] - b.samples[j];
    sq += dot(d, d);
  }
  return std::sqrt(sq / static_cast<double>(a.size()));
}

Theorem1Report verify_theorem1_numeric(const SimulationConfig& config) {
  config.validate();
  const Int grid = config.resolved_grid_points();
  const TangentField start = initial_tangent(config.sides, grid);
  Theorem1Report report;
  const TangentField end = evolve(start, config.rational_time(), config, &report.stats);

  report.sides = config.expected_sides();
  report.block_offset = plateau_block_offset(config.q);
  const PlateauReport plateaus = measure_plateaus(end, report.sides, 0.25, report.block_offset);
  report.angle_median = plateaus.angle_median;
  report.angle_spread = plateaus.angle_spread;
  report.predicted_rho = rho_angle(config.sides, config.q);
  report.relative_error = std::abs(report.angle_median - report.predicted_rho) / report.predicted_rho;
  report.detected_sides = detect_plateau_count(end, 4 * config.sides * config.q).value_or(0);
  for (const Vec3& v : end.samples) report.max_abs_z = std::max(report.max_abs_z, std::abs(v.z));
  return report;
}

}  // namespace polyvfe
