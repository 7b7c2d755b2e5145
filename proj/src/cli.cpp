#include "polyvfe/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "polyvfe/arith.hpp"
#include "polyvfe/error.hpp"
#include "polyvfe/gauss.hpp"
#include "polyvfe/numeric.hpp"
#include "polyvfe/rotor.hpp"
#include "polyvfe/sums.hpp"
#include "polyvfe/vfe.hpp"

namespace polyvfe::cli {
namespace {

using nlohmann::json;

constexpr double kVanishingAbsTol = 1e-9;
constexpr double kModulusTol = 1e-9;
constexpr double kLemma4Tol = 1e-8;
constexpr double kSumTol = 1e-8;
constexpr double kTheorem2Tol = 1e-9;
constexpr double kFalsificationFloor = 1e-4;
constexpr double kLemma3Tol = 1e-10;
constexpr double kSimulationRelTol = 0.10;
constexpr int kLemma3Draws = 100;
constexpr std::uint64_t kLemma3Seed = 20240917;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

RunManifest make_manifest(std::string command, std::map<std::string, std::string> params,
                          std::map<std::string, double> tolerances = {}) {
  RunManifest m;
  m.command = std::move(command);
  m.parameters = std::move(params);
  m.timestamp = utc_timestamp();
  m.tolerances = std::move(tolerances);
  return m;
}

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json gauss_json(const GaussSumValue& g) {
  json j;
  j["value"] = complex_json(g.value);
  j["modulus"] = g.modulus;
  j["arg"] = g.argument ? json(*g.argument) : json(nullptr);
  j["vanishing"] = g.vanishing;
  return j;
}

double round_significant(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::vector<Int> coprime_residues(Int q) {
  std::vector<Int> out;
  for (Int p = 1; p <= q; ++p)
    if (gcd(p, q) == 1) out.push_back(p);
  return out;
}

std::string case_id(std::initializer_list<std::pair<const char*, Int>> parts, const std::string& suite) {
  std::string id = suite;
  for (const auto& [key, value] : parts) id += "/" + std::string(key) + "=" + std::to_string(value);
  return id;
}

VerificationOutcome outcome(std::string id, double residual, double tol, bool extra_ok = true) {
  VerificationOutcome o;
  o.case_id = std::move(id);
  o.residual = residual;
  o.tolerance = tol;
  o.passed = extra_ok && std::isfinite(residual) && residual <= tol;
  return o;
}

// CSV rendering for tabular results; scalar documents become key,value rows.
void write_csv(std::ostream& out, const json& doc, const char* table_key) {
  if (table_key != nullptr && doc.contains(table_key) && doc[table_key].is_array() && !doc[table_key].empty()) {
    const json& rows = doc[table_key];
    std::vector<std::string> keys;
    for (const auto& [k, v] : rows.front().items()) {
      if (v.is_object()) {
        for (const auto& [k2, v2] : v.items()) keys.push_back(k + "." + k2);
      } else {
        keys.push_back(k);
      }
    }
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << '\n';
    for (const json& row : rows) {
      for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto dot = keys[i].find('.');
        const json& cell = dot == std::string::npos ? row[keys[i]] : row[keys[i].substr(0, dot)][keys[i].substr(dot + 1)];
        out << (i ? "," : "") << (cell.is_string() ? cell.get<std::string>() : cell.dump());
      }
      out << '\n';
    }
    return;
  }
  out << "key,value\n";
  for (const auto& [k, v] : doc.items()) {
    if (k == "manifest" || v.is_structured()) continue;
    out << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
}

void emit(std::ostream& out, const json& doc, const std::string& format, const char* table_key = nullptr) {
  if (format == "csv") {
    write_csv(out, doc, table_key);
  } else {
    out << doc.dump(2) << '\n';
  }
}

// --- suites -----------------------------------------------------------------

void suite_vanishing(const VerifyOptions& opt, std::vector<VerificationOutcome>& out) {
  for (Int q = 1; q <= opt.q_max; ++q) {
    const double expected = std::sqrt(static_cast<double>(q % 2 == 1 ? q : 2 * q));
    const double tol = kModulusTol * std::sqrt(static_cast<double>(q));
    for (Int p : coprime_residues(q)) {
      const ThetaSequence seq = theta_sequence(p, q);
      bool pattern_ok = true;
      double residual = 0.0;
      for (Int n = 0; n < q; ++n) {
        const double m = seq.entries[static_cast<std::size_t>(n)].modulus;
        const bool zero = m < kVanishingAbsTol;
        pattern_ok = pattern_ok && (zero == !admissible(n, q));
        residual = std::max(residual, zero ? m : std::abs(m - expected));
      }
      out.push_back(outcome(case_id({{"p", p}, {"q", q}}, "vanishing"), residual, tol, pattern_ok));
    }
  }
}

void suite_lemma4(const VerifyOptions& opt, std::vector<VerificationOutcome>& out) {
  for (Int q = 1; q <= opt.q_max; ++q) {
    for (Int p : coprime_residues(q)) {
      const ThetaSequence seq = theta_sequence(p, q);
      const QuadraticPhase phase = quadratic_phase(p, q);
      double residual = 0.0;
      for (Int n = 0; n < q; ++n) {
        if (!admissible(n, q)) continue;
        residual = std::max(residual, phase_distance(phase.model(n, q) - seq.theta(n)));
      }
      out.push_back(outcome(case_id({{"p", p}, {"q", q}}, "lemma4"), residual, kLemma4Tol));
    }
  }
}

void suite_sums(const VerifyOptions& opt, std::vector<VerificationOutcome>& out) {
  for (Int q = 2; q <= opt.q_max; ++q) {
    for (Int p : coprime_residues(q)) {
      const ThetaSequence seq = theta_sequence(p, q);
      const QuadraticPhase phase = quadratic_phase(p, q);
      Int spent = 0;
      for (Int k = 1; 2 * k <= q; ++k) {
        const Int cost = binomial(q, 2 * k);
        const double tol = kSumTol * std::max(1.0, static_cast<double>(cost));
        const std::string id = case_id({{"p", p}, {"q", q}, {"k", k}}, "sums");
        if (cost > opt.budget - spent) {
          VerificationOutcome skipped;
          skipped.case_id = id;
          skipped.tolerance = tol;
          skipped.budget_skipped = true;
          skipped.residual = std::nan("");
          out.push_back(skipped);
          continue;
        }
        spent += cost;
        const SumReport r = sum_report(seq, phase, k);
        out.push_back(outcome(id, r.residual, tol));
      }
    }
  }
}

void suite_theorem2(const VerifyOptions& opt, std::vector<VerificationOutcome>& out) {
  for (Int m = 3; m <= opt.m_max; ++m) {
    for (Int q = 1; q <= opt.q_max; ++q) {
      for (Int p : coprime_residues(q)) {
        const Theorem2Report r = verify_rotation_product(m, p, q);
        out.push_back(outcome(case_id({{"M", m}, {"p", p}, {"q", q}}, "theorem2"), r.angle_error, kTheorem2Tol,
                              r.falsification_margin > kFalsificationFloor));
      }
    }
  }
}

void suite_lemma3(std::vector<VerificationOutcome>& out) {
  std::mt19937_64 rng(kLemma3Seed);
  std::uniform_int_distribution<int> size_dist(1, 8);
  std::uniform_real_distribution<double> x_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> phi_dist(0.0, kTwoPi);
  for (int i = 0; i < kLemma3Draws; ++i) {
    const int n = size_dist(rng);
    const double x = x_dist(rng);
    std::vector<double> phis(static_cast<std::size_t>(n));
    for (double& phi : phis) phi = phi_dist(rng);
    const TraceIdentity t = trace_identity(x, phis);
    const double scaled = std::abs(t.lhs - t.rhs) / std::pow(1.0 + std::abs(x), n);
    out.push_back(outcome(case_id({{"draw", i}, {"N", n}}, "lemma3"), scaled, kLemma3Tol));
  }
  const std::vector<double> phis{0.0, std::numbers::pi};
  const TraceIdentity t = trace_identity(1.0, phis);
  out.push_back(outcome("lemma3/sign-witness", std::max(std::abs(t.lhs - 2.0), std::abs(t.rhs - 2.0)), kLemma3Tol));
}

// --- commands ---------------------------------------------------------------

struct Flags {
  long long p = 1;
  long long q = 1;
  long long m = 5;
  std::optional<long long> n;
  std::optional<long long> k;
  long long q_max = 16;
  long long m_max = 10;
  long long budget = kDefaultSumBudget;
  long long grid = 0;
  double dt_factor = 0.4;
  std::string scheme = "pseudo_spectral_rk4";
  std::string out_prefix;
  std::string format = "json";
  std::string suite = "all";
};

int cmd_gauss(const Flags& f, std::ostream& out) {
  json doc;
  std::map<std::string, std::string> params{{"p", std::to_string(f.p)}, {"q", std::to_string(f.q)}};
  if (f.n) params["n"] = std::to_string(*f.n);
  doc["manifest"] = make_manifest("gauss", params, {{"vanishing_threshold", vanishing_threshold(f.q)}}).to_json();
  doc["p"] = f.p;
  doc["q"] = f.q;
  if (f.n) {
    const GaussSumValue g = gauss_sum(f.p, f.q, *f.n);
    doc["n"] = *f.n;
    const json body = gauss_json(g);
    doc.update(body);
    doc["re"] = g.value.real();
    doc["im"] = g.value.imag();
    emit(out, doc, f.format);
  } else {
    const ThetaSequence seq = theta_sequence(f.p, f.q);
    json rows = json::array();
    for (Int n = 0; n < f.q; ++n) {
      json row{{"n", n}};
      row.update(gauss_json(seq.entries[static_cast<std::size_t>(n)]));
      rows.push_back(row);
    }
    doc["entries"] = rows;
    emit(out, doc, f.format, "entries");
  }
  return kExitOk;
}

int cmd_theta(const Flags& f, std::ostream& out) {
  const ThetaSequence seq = theta_sequence(f.p, f.q);
  const QuadraticPhase phase = quadratic_phase(f.p, f.q);
  json doc;
  doc["manifest"] = make_manifest("theta", {{"p", std::to_string(f.p)}, {"q", std::to_string(f.q)}},
                                  {{"vanishing_threshold", vanishing_threshold(f.q)}})
                        .to_json();
  doc["p"] = f.p;
  doc["q"] = f.q;
  doc["quadratic_phase"] = {{"a", phase.a},
                            {"b", phase.b},
                            {"delta", phase.delta},
                            {"epsilon", phase.epsilon ? json(*phase.epsilon) : json(nullptr)}};
  json rows = json::array();
  for (Int n = 0; n < f.q; ++n) {
    const auto& e = seq.entries[static_cast<std::size_t>(n)];
    json row{{"n", n}, {"theta", e.argument ? json(*e.argument) : json(nullptr)}, {"defined", !e.vanishing}};
    row["model_defect"] = e.argument ? json(phase_distance(phase.model(n, f.q) - *e.argument)) : json(nullptr);
    rows.push_back(row);
  }
  doc["entries"] = rows;
  emit(out, doc, f.format, "entries");
  return kExitOk;
}

int cmd_sums(const Flags& f, std::ostream& out) {
  const ThetaSequence seq = theta_sequence(f.p, f.q);
  const QuadraticPhase phase = quadratic_phase(f.p, f.q);
  json doc;
  std::map<std::string, std::string> params{
      {"p", std::to_string(f.p)}, {"q", std::to_string(f.q)}, {"budget", std::to_string(f.budget)}};
  if (f.k) params["k"] = std::to_string(*f.k);
  doc["manifest"] = make_manifest("sums", params, {{"relative_residual", kSumTol}}).to_json();
  json rows = json::array();
  bool all_ok = true;
  Int spent = 0;
  const Int k_lo = f.k ? *f.k : 1;
  const Int k_hi = f.k ? *f.k : f.q / 2;
  if (f.k && (*f.k < 1 || 2 * *f.k > f.q)) throw Error(Errc::RangeError, "need 0 < 2k <= q");
  for (Int k = k_lo; k <= k_hi; ++k) {
    const Int cost = binomial(f.q, 2 * k);
    json row{{"k", k}, {"term_count", admissible_term_count(f.q, k)}};
    if (cost > f.budget - spent) {
      row["budget_skipped"] = true;
      row["passed"] = false;
      rows.push_back(row);
      continue;
    }
    spent += cost;
    const SumReport r = sum_report(seq, phase, k);
    const double tol = kSumTol * std::max(1.0, static_cast<double>(cost));
    row["t_value"] = r.t_value;
    row["e_value"] = complex_json(r.e_value);
    row["residual"] = r.residual;
    row["tolerance"] = tol;
    row["budget_skipped"] = false;
    row["passed"] = r.residual <= tol;
    all_ok = all_ok && r.residual <= tol;
    rows.push_back(row);
  }
  doc["p"] = f.p;
  doc["q"] = f.q;
  doc["reports"] = rows;
  emit(out, doc, f.format, "reports");
  return all_ok ? kExitOk : kExitVerificationFailed;
}

int cmd_rho(const Flags& f, std::ostream& out) {
  const double rho = rho_angle(f.m, f.q);
  json doc;
  doc["manifest"] = make_manifest("rho", {{"M", std::to_string(f.m)}, {"q", std::to_string(f.q)}}).to_json();
  doc["M"] = f.m;
  doc["q"] = f.q;
  doc["rho"] = round_significant(rho, 12);
  emit(out, doc, f.format);
  return kExitOk;
}

int cmd_rotation(const Flags& f, std::ostream& out) {
  const ThetaSequence seq = theta_sequence(f.p, f.q);
  const double rho = rho_angle(f.m, f.q);
  const RotationMatrix r = ordered_rotation_product(seq, rho);
  const AxisAngle aa = axis_angle(r);
  json doc;
  doc["manifest"] = make_manifest("rotation",
                                  {{"M", std::to_string(f.m)}, {"p", std::to_string(f.p)}, {"q", std::to_string(f.q)}},
                                  {{"angle_error", kTheorem2Tol}})
                        .to_json();
  json rows = json::array();
  for (const auto& row : r.rows()) rows.push_back(json(row));
  doc["matrix"] = rows;
  doc["rho"] = rho;
  doc["angle"] = aa.angle;
  doc["angle_error"] = std::abs(aa.angle - kTwoPi / static_cast<double>(f.m));
  doc["axis"] = {aa.axis.x, aa.axis.y, aa.axis.z};
  doc["axis_reliable"] = aa.axis_reliable;
  emit(out, doc, f.format);
  return kExitOk;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  VerifyOptions opt;
  opt.suite = f.suite;
  opt.q_max = f.q_max;
  opt.m_max = f.m_max;
  opt.budget = f.budget;
  const std::vector<VerificationOutcome> outcomes = run_verification(opt);
  std::size_t passed = 0, failed = 0, skipped = 0;
  json rows = json::array();
  for (const auto& o : outcomes) {
    rows.push_back(o.to_json());
    if (o.budget_skipped) ++skipped;
    else if (o.passed) ++passed;
    else ++failed;
  }
  json doc;
  doc["manifest"] = make_manifest("verify",
                                  {{"suite", f.suite},
                                   {"q_max", std::to_string(f.q_max)},
                                   {"m_max", std::to_string(f.m_max)},
                                   {"budget", std::to_string(f.budget)}},
                                  {{"vanishing_abs", kVanishingAbsTol},
                                   {"modulus_rel_sqrt_q", kModulusTol},
                                   {"lemma4_phase", kLemma4Tol},
                                   {"sums_per_term", kSumTol},
                                   {"theorem2_angle", kTheorem2Tol},
                                   {"theorem2_falsification_floor", kFalsificationFloor},
                                   {"lemma3_scaled", kLemma3Tol}})
                        .to_json();
  doc["suite"] = f.suite;
  doc["outcomes"] = rows;
  doc["summary"] = {{"total", outcomes.size()}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}};
  emit(out, doc, f.format, "outcomes");
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  SimulationConfig cfg;
  cfg.sides = f.m;
  cfg.p = f.p;
  cfg.q = f.q;
  cfg.grid_points = f.grid;
  cfg.dt_factor = f.dt_factor;
  cfg.scheme = scheme_from_string(f.scheme);
  cfg.validate();

  const Int grid = cfg.resolved_grid_points();
  const TangentField start = initial_tangent(cfg.sides, grid);
  EvolveStats stats;
  const TangentField end = evolve(start, cfg.rational_time(), cfg, &stats);
  const Int sides = cfg.expected_sides();
  const double offset = plateau_block_offset(cfg.q);
  const PlateauReport plateaus = measure_plateaus(end, sides, 0.25, offset);
  const double predicted = rho_angle(cfg.sides, cfg.q);
  const double rel = std::abs(plateaus.angle_median - predicted) / predicted;
  const CurveSample curve = curve_at_time(end);
  double max_z = 0.0;
  for (const Vec3& v : end.samples) max_z = std::max(max_z, std::abs(v.z));

  json doc;
  doc["manifest"] = make_manifest("simulate",
                                  {{"M", std::to_string(f.m)},
                                   {"p", std::to_string(f.p)},
                                   {"q", std::to_string(f.q)},
                                   {"grid", std::to_string(grid)},
                                   {"dt_factor", std::to_string(f.dt_factor)},
                                   {"trim_fraction", "0.25"},
                                   {"scheme", f.scheme}},
                                  {{"relative_error", kSimulationRelTol}})
                        .to_json();
  doc["time"] = end.time;
  doc["steps"] = stats.steps;
  doc["max_norm_drift"] = stats.max_norm_drift;
  doc["sides"] = sides;
  doc["detected_sides"] = detect_plateau_count(end, 4 * cfg.sides * cfg.q).value_or(0);
  doc["block_offset"] = offset;
  doc["angle_median"] = plateaus.angle_median;
  doc["angle_spread"] = plateaus.angle_spread;
  doc["predicted_rho"] = predicted;
  doc["relative_error"] = rel;
  doc["rms_to_initial"] = rms_distance(end, start);
  doc["max_abs_z"] = max_z;
  doc["mean_height"] = curve.mean_height;
  doc["passed"] = rel <= kSimulationRelTol;

  if (!f.out_prefix.empty()) {
    std::ofstream tangent(f.out_prefix + ".tangent.csv");
    std::ofstream pos(f.out_prefix + ".curve.csv");
    std::ofstream summary(f.out_prefix + ".summary.json");
    if (!tangent || !pos || !summary) throw Error(Errc::InvalidArgument, "cannot write to prefix " + f.out_prefix);
    const double ds = end.spacing();
    tangent << std::setprecision(17) << "s,Tx,Ty,Tz\n";
    for (std::size_t j = 0; j < end.size(); ++j) {
      const Vec3& v = end.samples[j];
      tangent << ds * static_cast<double>(j) << ',' << v.x << ',' << v.y << ',' << v.z << '\n';
    }
    pos << std::setprecision(17) << "s,Xx,Xy,Xz\n";
    for (std::size_t j = 0; j < curve.positions.size(); ++j) {
      const Vec3& x = curve.positions[j];
      pos << ds * static_cast<double>(j) << ',' << x.x << ',' << x.y << ',' << x.z << '\n';
    }
    summary << doc.dump(2) << '\n';
  }
  emit(out, doc, f.format);
  return rel <= kSimulationRelTol ? kExitOk : kExitVerificationFailed;
}

}  // namespace

json RunManifest::to_json() const {
  return {{"command", command},
          {"parameters", parameters},
          {"tool_version", tool_version},
          {"timestamp", timestamp},
          {"tolerances", tolerances}};
}

json VerificationOutcome::to_json() const {
  return {{"case_id", case_id},
          {"passed", passed},
          {"residual", std::isfinite(residual) ? json(residual) : json(nullptr)},
          {"tolerance", tolerance},
          {"budget_skipped", budget_skipped}};
}

std::vector<VerificationOutcome> run_verification(const VerifyOptions& opt) {
  static const std::vector<std::string> kSuites{"sums", "theorem2", "lemma3", "lemma4", "vanishing", "all"};
  if (std::find(kSuites.begin(), kSuites.end(), opt.suite) == kSuites.end()) {
    throw Error(Errc::InvalidArgument, "unknown suite " + opt.suite);
  }
  if (opt.q_max < 1 || opt.m_max < 3 || opt.budget < 0) throw Error(Errc::InvalidArgument, "invalid ranges");
  const bool all = opt.suite == "all";
  std::vector<VerificationOutcome> out;
  if (all || opt.suite == "vanishing") suite_vanishing(opt, out);
  if (all || opt.suite == "lemma4") suite_lemma4(opt, out);
  if (all || opt.suite == "sums") suite_sums(opt, out);
  if (all || opt.suite == "theorem2") suite_theorem2(opt, out);
  if (all || opt.suite == "lemma3") suite_lemma3(out);
  std::stable_sort(out.begin(), out.end(),
                   [](const VerificationOutcome& a, const VerificationOutcome& b) { return a.case_id < b.case_id; });
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauss sums, rotation products and polygonal vortex filament checks", "polyvfe"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Flags f;

  const auto add_pq = [&](CLI::App* sub) {
    sub->add_option("--p", f.p, "numerator p (coprime with q)")->required();
    sub->add_option("--q", f.q, "denominator q >= 1")->required()->check(CLI::PositiveNumber);
  };
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* gauss = app.add_subcommand("gauss", "generalized Gauss sum G(-p, n, q)");
  add_pq(gauss);
  gauss->add_option("--n", f.n, "linear coefficient n in [0, q); omit for the full table");
  add_format(gauss);

  auto* theta = app.add_subcommand("theta", "arguments theta_n and their quadratic model");
  add_pq(theta);
  add_format(theta);

  auto* sums = app.add_subcommand("sums", "trigonometric and quadratic exponential sums");
  add_pq(sums);
  sums->add_option("--k", f.k, "single k with 0 < 2k <= q");
  sums->add_option("--budget", f.budget, "maximum summands per (p, q)")->check(CLI::NonNegativeNumber);
  add_format(sums);

  auto* rho = app.add_subcommand("rho", "side angle of the skew polygon");
  rho->add_option("--M", f.m, "polygon sides M >= 3")->required();
  rho->add_option("--q", f.q, "denominator q >= 1")->required()->check(CLI::PositiveNumber);
  add_format(rho);

  auto* rotation = app.add_subcommand("rotation", "ordered rotation product");
  rotation->add_option("--M", f.m, "polygon sides M >= 3")->required();
  add_pq(rotation);
  add_format(rotation);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", f.suite, "suite to run")
      ->check(CLI::IsMember({"sums", "theorem2", "lemma3", "lemma4", "vanishing", "all"}));
  verify->add_option("--q-max", f.q_max, "largest q")->check(CLI::PositiveNumber);
  verify->add_option("--m-max", f.m_max, "largest M")->check(CLI::Range(3LL, 1000000LL));
  verify->add_option("--budget", f.budget, "maximum summands per (p, q)")->check(CLI::NonNegativeNumber);
  add_format(verify);

  auto* simulate = app.add_subcommand("simulate", "evolve the polygon and measure plateaus");
  simulate->add_option("--M", f.m, "polygon sides M >= 3")->required();
  add_pq(simulate);
  simulate->add_option("--grid", f.grid, "grid points (multiple of M*q; default 128*M*q)");
  simulate->add_option("--dt-factor", f.dt_factor, "time step as a fraction of the stability-scaled ds^2 step")->check(CLI::PositiveNumber);
  simulate->add_option("--scheme", f.scheme, "spatial discretization")
      ->check(CLI::IsMember({"pseudo_spectral_rk4", "central_fd_rk4"}));
  simulate->add_option("--out", f.out_prefix, "prefix for .tangent.csv, .curve.csv, .summary.json");
  add_format(simulate);

  std::vector<const char*> argv{"polyvfe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*gauss) return cmd_gauss(f, out);
    if (*theta) return cmd_theta(f, out);
    if (*sums) return cmd_sums(f, out);
    if (*rho) return cmd_rho(f, out);
    if (*rotation) return cmd_rotation(f, out);
    if (*verify) return cmd_verify(f, out);
    if (*simulate) return cmd_simulate(f, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::BlowUp:
        return kExitNumericalAbort;
      case Errc::NotCoprime:
      case Errc::InvalidArgument:
      case Errc::RangeError:
      case Errc::GridNotDivisible:
      case Errc::ComplexityBudgetExceeded:
        return kExitUsage;
      default:
        return kExitVerificationFailed;
    }
  }
  return kExitUsage;
}

}  // namespace polyvfe::cli
