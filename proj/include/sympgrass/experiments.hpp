#pragma once

// Seeded experiment suites. Each suite draws random instances, checks the
// geometric identities it is named after against fixed thresholds and
// returns an ExperimentReport whose `pass` is the conjunction of all checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "sympgrass/io.hpp"
#include "sympgrass/lagrangian.hpp"
#include "sympgrass/metrics.hpp"
#include "sympgrass/random.hpp"
#include "sympgrass/symplectic.hpp"

namespace sympgrass {

struct ExperimentConfig {
  int n = 1;  // largest half-dimension drawn by the suite
  std::uint64_t seed = 0;
  int trials = 1;
  int grid_points = 1001;
  std::map<std::string, double> tolerances;  // overrides of the suite defaults
  std::string output_path;

  void validate() const {
    require(n >= 1, ErrorCode::InvalidInput, "config: n must be >= 1");
    require(trials >= 1, ErrorCode::InvalidInput, "config: trials must be >= 1");
    require(grid_points >= 2, ErrorCode::InvalidInput, "config: grid must be >= 2");
  }

  double tol(const std::string& key) const {
    auto it = tolerances.find(key);
    require(it != tolerances.end(), ErrorCode::Internal, "config: tolerance '" + key + "' missing");
    return it->second;
  }
};

struct ExperimentReport {
  std::string name;
  bool pass = true;
  std::map<std::string, double> metrics;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> per_trial;
  ExperimentConfig config;
};

namespace suites {

// ---------------------------------------------------------------------------
// Random instances

inline int draw_n(Rng& rng, int max_n) { return rng.integer(1, max_n); }

/// exp of [[A, -B], [B, A]] with A antisymmetric and B symmetric: an
/// orthogonal symplectic map commuting with J.
inline SymplecticElement random_rotation(Eigen::Index n, Rng& rng, double scale) {
  const Matrix a = rng.uniform_matrix(n, n);
  const Matrix anti = 0.5 * scale * (a - a.transpose());
  const Matrix sym = rng.symmetric_matrix(n, scale);
  Matrix x(2 * n, 2 * n);
  x << anti, -sym, sym, anti;
  return SymplecticElement(matrix_exp(x));
}

inline LagrangianSubspace random_lagrangian(Eigen::Index n, Rng& rng) {
  return act(random_rotation(n, rng, std::numbers::pi), LagrangianSubspace::vertical(n));
}

/// Shear 1 - J psi^ P_L for a random symmetric psi.
inline SymplecticElement random_shear(const LagrangianSubspace& l, Rng& rng, double scale) {
  return chart_inverse(l, rng.symmetric_matrix(l.n(), scale)).f;
}

inline SymplecticElement random_symplectic(Eigen::Index n, Rng& rng, double shear_scale) {
  const auto rot = random_rotation(n, rng, std::numbers::pi);
  return random_shear(LagrangianSubspace::vertical(n), rng, shear_scale) * rot;
}

inline double relative_error(const Matrix& approx, const Matrix& exact) {
  return (approx - exact).norm() / std::max(1.0, exact.norm());
}

/// Accumulates per-trial rows and the overall verdict.
class Table {
 public:
  explicit Table(ExperimentReport& report) : report_(report) {}

  void row(std::initializer_list<std::pair<const char*, double>> values) {
    if (report_.columns.empty())
      for (const auto& [k, v] : values) report_.columns.emplace_back(k);
    std::vector<double> r;
    r.reserve(values.size());
    for (const auto& [k, v] : values) r.push_back(v);
    report_.per_trial.push_back(std::move(r));
  }

  /// Records `value <= limit` and tracks the worst value under `metric`.
  void check(const std::string& metric, double value, double limit) {
    const bool ok = value <= limit;  // NaN fails
    report_.pass = report_.pass && ok;
    auto [it, inserted] = report_.metrics.try_emplace("max_" + metric, value);
    if (!inserted && !(it->second >= value)) it->second = value;
    report_.metrics["limit_" + metric] = limit;
  }

  void check_min(const std::string& metric, double value, double limit) {
    const bool ok = value >= limit;
    report_.pass = report_.pass && ok;
    auto [it, inserted] = report_.metrics.try_emplace("min_" + metric, value);
    if (!inserted && !(it->second <= value)) it->second = value;
    report_.metrics["limit_" + metric] = limit;
  }

  void metric(const std::string& name, double value) { report_.metrics[name] = value; }

 private:
  ExperimentReport& report_;
};

// ---------------------------------------------------------------------------
// Suites

inline void projector(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double tol = cfg.tol("projector");
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const int n = draw_n(rng, cfg.n);
    const auto g = random_symplectic(n, rng, 1.0);
    const Matrix q = g.matrix() * LagrangianSubspace::vertical(n).projector() * g.inverse().matrix();
    const Matrix p = projection_from_idempotent(q);
    const Matrix basis = qr_orthonormal_range(q);
    const Matrix oracle = basis * basis.transpose();
    const double err = (p - oracle).norm();
    const double sym = asymmetry(p);
    const double idem = (p * p - p).norm();
    table.check("oracle_error", err, tol);
    table.check("symmetry_error", sym, tol);
    table.check("idempotence_error", idem, tol);
    table.check("rank_mismatch", std::abs(static_cast<double>(basis.cols() - n)), 0.0);
    table.row({{"n", n}, {"oracle_error", err}, {"symmetry_error", sym}, {"idempotence_error", idem},
               {"hs_deviation", g.hs_deviation()}});
  }
}

inline void strict_inclusion(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double tol = cfg.tol("strict");
  for (int n = 1; n <= cfg.n; ++n) {
    const auto r = strict_inclusion_demo(n);
    const double norm_err = std::abs(r.hs_norm - std::sqrt(static_cast<double>(n)));
    const double corner_err = std::abs(r.corner_block_value + 0.5);
    table.check("norm_error", norm_err, tol);
    table.check("corner_error", corner_err, tol);
    table.check("corner_deviation", r.corner_block_deviation, tol);
    table.row({{"n", n}, {"hs_norm", r.hs_norm}, {"sqrt_n", std::sqrt(static_cast<double>(n))},
               {"corner_block_value", r.corner_block_value}, {"norm_error", norm_err}});
  }
}

inline void charts(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double tol = cfg.tol("chart");
  const double hs_tol = cfg.tol("hs");
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const int n = draw_n(rng, cfg.n);
    const auto l = random_lagrangian(n, rng);
    const Matrix psi = rng.symmetric_matrix(n, 1.0);

    const auto inv = chart_inverse(l, psi);
    const double fwd_inv = (chart_forward(l, inv.w).psi - psi).norm();
    const double symp = symplectic_defect(inv.f.matrix());
    const double hs = std::abs(inv.f.hs_deviation() - psi.norm());
    const double lag = lagrangian_defect(inv.w.projector());

    const auto w = act(random_rotation(n, rng, 0.5), l);
    const auto back = chart_inverse(l, chart_forward(l, w).psi).w;
    const double inv_fwd = subspace_distance(back, w);

    table.check("forward_inverse_error", fwd_inv, tol);
    table.check("inverse_forward_error", inv_fwd, tol);
    table.check("symplectic_defect", symp, tol);
    table.check("hs_error", hs, hs_tol);
    table.check("lagrangian_defect", lag, tol);
    table.row({{"n", n}, {"forward_inverse_error", fwd_inv}, {"inverse_forward_error", inv_fwd},
               {"symplectic_defect", symp}, {"hs_error", hs}, {"psi_norm", psi.norm()}});
  }
}

inline void differential(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double tol = cfg.tol("fd");
  const double roundtrip_tol = cfg.tol("roundtrip");
  constexpr double h = 1e-4;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const int n = draw_n(rng, cfg.n);
    const Matrix j = standard_J(n).matrix();

    // Action differential against the chart at g(L).
    const auto g = random_symplectic(n, rng, 0.5);
    const auto l = random_lagrangian(n, rng);
    const auto x = random_algebra_element(n, 1.0, rng);
    const auto tangent = action_differential(g, l, x);
    const auto& w = tangent.base();
    auto moved = [&](double s) { return chart_forward(w, act(matrix_exp(s * x.matrix()) * g.matrix(), l)).psi; };
    const double action_err = relative_error((moved(h) - moved(-h)) / (2 * h), tangent.coords());

    // Chart differential along exp(s z)(W) with z the minimal lift of H.
    const auto base = random_lagrangian(n, rng);
    const Matrix psi = rng.symmetric_matrix(n, 1.0);
    const auto wp = chart_inverse(base, psi).w;
    const auto hvec = TangentVector::from_coords(wp, rng.symmetric_matrix(n, 1.0));
    const auto z = minimal_lift(hvec);
    auto along = [&](double s) { return chart_forward(base, act(group_exp(z * s), wp)).psi; };
    const Matrix exact_fwd = chart_differential(base, hvec);
    const double chart_err = relative_error((along(h) - along(-h)) / (2 * h), exact_fwd);

    // Inverse chart differential along psi + s K, velocity from projectors.
    const Matrix k = rng.symmetric_matrix(n, 1.0);
    const auto exact_inv = chart_differential_inverse(base, wp, k);
    const Matrix dp =
        (chart_inverse(base, psi + h * k).w.projector() - chart_inverse(base, psi - h * k).w.projector()) / (2 * h);
    const double inverse_err = relative_error(TangentVector::compress(wp, j * dp).hat(), exact_inv.hat());

    const double roundtrip = relative_error(chart_differential(base, exact_inv), k);

    table.check("action_fd_error", action_err, tol);
    table.check("chart_fd_error", chart_err, tol);
    table.check("chart_inverse_fd_error", inverse_err, tol);
    table.check("roundtrip_error", roundtrip, roundtrip_tol);
    table.row({{"n", n}, {"action_fd_error", action_err}, {"chart_fd_error", chart_err},
               {"chart_inverse_fd_error", inverse_err}, {"roundtrip_error", roundtrip}});
  }
}

inline void section(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double tol = cfg.tol("section");
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const int n = draw_n(rng, cfg.n);
    const auto l0 = LagrangianSubspace::vertical(n);
    // Rotations of moderate size stay inside ||eps_L - eps_L0|| < 2.
    double scale = 0.5;
    auto l = act(random_rotation(n, rng, scale), l0);
    while (operator_norm(l.symmetry() - l0.symmetry()) >= 1.9) {
      scale *= 0.5;
      l = act(random_rotation(n, rng, scale), l0);
    }
    const auto u = cross_section(l0, l);
    const Matrix j = standard_J(n).matrix();
    const double image = subspace_distance(act(u, l0), l);
    const double commute = (u.matrix() * j - j * u.matrix()).norm();
    const double symp = symplectic_defect(u.matrix());
    const double radius = operator_norm(l.symmetry() - l0.symmetry());
    table.check("image_error", image, tol);
    table.check("commutator", commute, tol);
    table.check("symplectic_defect", symp, tol);
    table.row({{"n", n}, {"image_error", image}, {"commutator", commute}, {"symplectic_defect", symp},
               {"symmetry_distance", radius}});
  }
}

inline void metrics(const ExperimentConfig& cfg, ExperimentReport& rep) {
  require(cfg.n <= 8, ErrorCode::InvalidInput, "metrics: the least-squares oracle needs n <= 8");
  Table table(rep);
  const double ineq_tol = cfg.tol("inequality");
  const double oracle_tol = cfg.tol("oracle");
  const double lift_tol = cfg.tol("lift");
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const int n = draw_n(rng, cfg.n);
    const auto w = random_lagrangian(n, rng);
    const auto v = TangentVector::from_coords(w, rng.symmetric_matrix(n, 2.0));
    const double a = ambient_metric(v);
    const double q = quotient_metric(v);
    const double qo = quotient_metric_oracle(v);

    const auto z0 = minimal_lift(v);
    const Matrix& p = w.projector();
    const Matrix id = Matrix::Identity(2 * n, 2 * n);
    double lift_err = algebra_defect(z0.matrix());
    lift_err = std::max(lift_err, (action_differential(w, z0).hat() - v.hat()).norm());
    lift_err = std::max(lift_err, ((id - p) * z0.matrix() * p - z0.matrix()).norm());
    double ortho = 0.0;
    for (int k = 0; k < 4; ++k) {
      const auto y = isotropy_projection(w, random_algebra_element(n, 1.0, rng));
      if (y.norm() > 0.0) ortho = std::max(ortho, std::abs((z0.matrix().array() * y.matrix().array()).sum()) / y.norm());
    }

    table.check("inequality_excess", a - q, ineq_tol);
    table.check("oracle_error", std::abs(q - qo), oracle_tol);
    table.check("lift_error", lift_err, lift_tol);
    table.check("isotropy_inner_product", ortho, lift_tol);
    table.metric("max_ambient_quotient_gap", std::max(rep.metrics["max_ambient_quotient_gap"], std::abs(a - q)));
    table.row({{"n", n}, {"ambient", a}, {"quotient", q}, {"quotient_oracle", qo}, {"lift_error", lift_err},
               {"isotropy_inner_product", ortho}});
  }
}

/// xi(t) = chart_inverse(L, t psi1 + t^2 psi2) sampled on a uniform grid.
inline OrbitCurve random_chart_curve(int n, Rng& rng, std::size_t points, double scale) {
  const auto l = random_lagrangian(n, rng);
  const Matrix psi1 = rng.symmetric_matrix(n, scale);
  const Matrix psi2 = rng.symmetric_matrix(n, scale);
  auto grid = uniform_grid(0.0, 1.0, points);
  std::vector<LagrangianSubspace> pts;
  pts.reserve(points);
  for (double t : grid) pts.push_back(chart_inverse(l, t * psi1 + t * t * psi2).w);
  return OrbitCurve(std::move(grid), std::move(pts));
}

inline void lift(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double track_tol = cfg.tol("track");
  const double iso_tol = cfg.tol("isometry");
  const double dual_tol = cfg.tol("duality");
  const double symp_tol = cfg.tol("symplectic");
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const int n = draw_n(rng, cfg.n);
    const auto curve = random_chart_curve(n, rng, static_cast<std::size_t>(cfg.grid_points), 0.5);
    const auto phi = isometric_lift(curve);
    double track = 0.0, symp = 0.0;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      track = std::max(track, subspace_distance(act(phi.points[i], curve.points.front()), curve.points[i]));
      symp = std::max(symp, symplectic_defect(phi.points[i].matrix()));
    }
    const double la = curve_length_ambient(curve);
    const double lr = curve_length_right(phi);
    const double ll_inv = curve_length_left(invert_curve(phi));
    table.check("tracking_error", track, track_tol);
    table.check("isometry_error", std::abs(lr - la), iso_tol);
    table.check("duality_error", std::abs(ll_inv - lr), dual_tol);
    table.check("symplectic_defect", symp, symp_tol);
    table.row({{"n", n}, {"ambient_length", la}, {"right_length", lr}, {"left_length_of_inverse", ll_inv},
               {"tracking_error", track}, {"symplectic_defect", symp}});
  }
}

inline LagrangianSubspace line(double x, double y) {
  Matrix f(2, 1);
  f << x, y;
  return LagrangianSubspace::from_frame(f);
}

inline void geodesic(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double closed_tol = cfg.tol("closed_form");
  const double fd_tol = cfg.tol("fd");
  const double lag_tol = cfg.tol("lagrangian");
  const double horizontal_tol = cfg.tol("horizontal");
  const double theta_tol = cfg.tol("theta");
  constexpr double h = 1e-4;

  // Distance recovery for the n = 1 rotation geodesic.
  {
    const double theta = 0.3;
    const auto report = distance_upper_bounds(LagrangianSubspace::vertical(1), line(std::sin(theta), std::cos(theta)));
    const double err = report.geodesic_path.available ? std::abs(report.geodesic_path.length - theta)
                                                      : std::numeric_limits<double>::quiet_NaN();
    table.check("theta_recovery_error", err, theta_tol);
  }

  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));

    // n = 1: xi(t) = span{(sin st, cos st)}.
    const double s = rng.uniform(-3.0, 3.0);
    const auto l0 = LagrangianSubspace::vertical(1);
    const auto w1 = TangentVector::from_coords(l0, Matrix::Constant(1, 1, s));
    double closed = 0.0;
    for (double t : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      closed = std::max(closed, subspace_distance(orbit_geodesic(l0, w1, t), line(std::sin(s * t), std::cos(s * t))));
    }
    if (std::abs(s) > 1e-3) closed = std::max(closed, subspace_distance(orbit_geodesic(l0, w1, std::numbers::pi / s), l0));

    // Random n: start point, velocity, Lagrangian points, horizontal lift.
    const int n = draw_n(rng, cfg.n);
    const auto l = random_lagrangian(n, rng);
    const auto w = TangentVector::from_coords(l, rng.symmetric_matrix(n, 1.0));
    const double start = subspace_distance(orbit_geodesic(l, w, 0.0), l);
    const Matrix fd = (chart_forward(l, orbit_geodesic(l, w, h)).psi - chart_forward(l, orbit_geodesic(l, w, -h)).psi) / (2 * h);
    const double fd_err = relative_error(fd, w.coords());
    const auto curve = orbit_geodesic_curve(l, w, uniform_grid(0.0, 1.0, 101));
    double lag = 0.0;
    for (const auto& p : curve.points) lag = std::max(lag, lagrangian_defect(p.projector()));
    const double horizontal = (lift_generators(curve).front() - minimal_lift(w).matrix()).norm();

    table.check("closed_form_error", closed, closed_tol);
    table.check("start_error", start, closed_tol);
    table.check("fd_velocity_error", fd_err, fd_tol);
    table.check("lagrangian_defect", lag, lag_tol);
    table.check("horizontal_error", horizontal, horizontal_tol);
    table.row({{"speed", s}, {"closed_form_error", closed}, {"n", n}, {"fd_velocity_error", fd_err},
               {"lagrangian_defect", lag}, {"horizontal_error", horizontal}});
  }
}

inline void duality(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double tol = cfg.tol("duality");
  const double length_tol = cfg.tol("length");
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const int n = draw_n(rng, cfg.n);
    const auto x = random_algebra_element(n, 0.5, rng);
    const auto g0 = random_symplectic(n, rng, 0.5);
    const auto grid = uniform_grid(0.0, 1.0, static_cast<std::size_t>(cfg.grid_points));
    std::vector<SymplecticElement> pts;
    pts.reserve(grid.size());
    // Right-invariant speed of exp(t x) g0 is ||x||_F.
    for (double t : grid) pts.push_back(group_exp(x * t) * g0);
    const GroupCurve alpha(grid, std::move(pts));
    const double lr = curve_length_right(alpha);
    const double ll_inv = curve_length_left(invert_curve(alpha));
    table.check("duality_error", std::abs(ll_inv - lr), tol);
    table.check("length_error", std::abs(lr - x.norm()), length_tol);
    table.row({{"n", n}, {"right_length", lr}, {"left_length_of_inverse", ll_inv}, {"generator_norm", x.norm()}});
  }
}

inline void distance(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double tol = cfg.tol("endpoint");
  const double theta_tol = cfg.tol("theta");
  DistanceOptions opt;
  opt.endpoint_tol = tol;
  {
    const double theta = 0.3;
    const auto r = distance_upper_bounds(LagrangianSubspace::vertical(1), line(std::sin(theta), std::cos(theta)), opt);
    for (const auto* p : {&r.chart_path, &r.geodesic_path, &r.section_path}) {
      const double err = p->available ? std::abs(p->length - theta) : std::numeric_limits<double>::quiet_NaN();
      table.check("theta_recovery_error", err, theta_tol);
    }
  }
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const int n = draw_n(rng, cfg.n);
    const auto s = random_lagrangian(n, rng);
    const auto t = chart_inverse(s, rng.symmetric_matrix(n, 0.5)).w;
    const auto r = distance_upper_bounds(s, t, opt);
    double endpoint = 0.0;
    int available = 0;
    for (const auto* p : {&r.chart_path, &r.geodesic_path, &r.section_path}) {
      if (!p->available) continue;
      ++available;
      endpoint = std::max(endpoint, p->endpoint_error);
    }
    table.check_min("available_paths", available, 1.0);
    table.check_min("minimum_length", r.minimum(), 0.0);
    table.check("endpoint_error", endpoint, tol);
    auto value = [](const PathEstimate& p) { return p.available ? p.length : std::numeric_limits<double>::quiet_NaN(); };
    table.row({{"n", n}, {"chart_path", value(r.chart_path)}, {"geodesic_path", value(r.geodesic_path)},
               {"section_path", value(r.section_path)}, {"minimum", r.minimum()}, {"endpoint_error", endpoint}});
  }
}

/// L_k = exp(z_k)(L_{k-1}) with ||z_k||_F = c r^k. Consecutive points are
/// joined by exp-curves of ambient length <= ||z_k||, and ||P'|| = sqrt(2) A,
/// so ||P_m - P_k||_F <= sqrt(2) sum_{j>k} ||z_j||.
inline void cauchy(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Table table(rep);
  const double slack = cfg.tol("slack");
  constexpr int terms = 30;
  constexpr double ratio = 0.6;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const int n = draw_n(rng, cfg.n);
    std::vector<LagrangianSubspace> seq{random_lagrangian(n, rng)};
    std::vector<double> norms;
    double segment_excess = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= terms; ++k) {
      const auto raw = random_algebra_element(n, 1.0, rng);
      const auto z = raw * (0.5 * std::pow(ratio, k) / raw.norm());
      const auto seg = exp_curve(seq.back(), z, uniform_grid(0.0, 1.0, 33));
      segment_excess = std::max(segment_excess, curve_length_ambient(seg) - z.norm());
      norms.push_back(z.norm());
      seq.push_back(seg.points.back());
    }
    // tail[k] = sqrt(2) * sum_{j > k} ||z_j||, indices aligned with seq.
    std::vector<double> tail(seq.size(), 0.0);
    for (int k = terms - 1; k >= 0; --k) tail[k] = tail[k + 1] + std::sqrt(2.0) * norms[k];
    double worst_ratio = 0.0;
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      double sup = 0.0;
      for (std::size_t m = k + 1; m < seq.size(); ++m) sup = std::max(sup, subspace_distance(seq[m], seq[k]));
      worst_ratio = std::max(worst_ratio, sup / tail[k]);
    }
    const double last_step = subspace_distance(seq[seq.size() - 1], seq[seq.size() - 2]);
    table.check("tail_ratio", worst_ratio, 1.0 + slack);
    table.check("segment_excess", segment_excess, slack);
    table.check("last_step_over_bound", last_step / tail[seq.size() - 2], 1.0 + slack);
    table.row({{"n", n}, {"tail_ratio", worst_ratio}, {"segment_excess", segment_excess}, {"last_step", last_step},
               {"lift_norm_sum", tail.front() / std::sqrt(2.0)}});
  }
}

struct SuiteInfo {
  const char* name;
  int n;
  int trials;
  int grid;
  std::map<std::string, double> tolerances;
  void (*run)(const ExperimentConfig&, ExperimentReport&);
};

inline const std::vector<SuiteInfo>& registry() {
  static const std::vector<SuiteInfo> suites = {
      {"projector", 8, 500, 2, {{"projector", 1e-8}}, projector},
      {"strict-inclusion", 64, 1, 2, {{"strict", 1e-10}}, strict_inclusion},
      {"charts", 8, 500, 2, {{"chart", 1e-8}, {"hs", 1e-10}}, charts},
      {"differential", 4, 200, 2, {{"fd", 1e-5}, {"roundtrip", 1e-8}}, differential},
      {"section", 8, 200, 2, {{"section", 1e-8}}, section},
      {"metrics", 6, 500, 2, {{"inequality", 1e-10}, {"oracle", 1e-7}, {"lift", 1e-10}}, metrics},
      {"lift", 4, 100, 1001, {{"track", 1e-5}, {"isometry", 1e-5}, {"duality", 1e-6}, {"symplectic", 1e-7}}, lift},
      {"geodesic", 4, 100, 2,
       {{"closed_form", 1e-8}, {"fd", 1e-5}, {"lagrangian", 1e-7}, {"horizontal", 1e-6}, {"theta", 1e-4}},
       geodesic},
      {"duality", 4, 100, 1001, {{"duality", 1e-6}, {"length", 1e-4}}, duality},
      {"distance", 4, 50, 2, {{"endpoint", 1e-6}, {"theta", 1e-4}}, distance},
      {"cauchy", 4, 50, 2, {{"slack", 1e-6}}, cauchy},
  };
  return suites;
}

inline const SuiteInfo& find(const std::string& name) {
  for (const auto& s : registry())
    if (name == s.name) return s;
  fail(ErrorCode::UsageError, "unknown suite '" + name + "'");
}

}  // namespace suites

inline std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& s : suites::registry()) names.emplace_back(s.name);
  return names;
}

/// Suite defaults: the sizes, trial counts and thresholds of the acceptance runs.
inline ExperimentConfig default_config(const std::string& name) {
  const auto& info = suites::find(name);
  ExperimentConfig cfg;
  cfg.n = info.n;
  cfg.trials = info.trials;
  cfg.grid_points = info.grid;
  return cfg;
}

/// Deterministic in (name, cfg). Tolerance overrides must name keys the suite
/// knows; the report's config carries the effective tolerances.
inline ExperimentReport run_suite(const std::string& name, const ExperimentConfig& cfg) {
  const auto& info = suites::find(name);
  cfg.validate();
  ExperimentConfig effective = cfg;
  effective.tolerances = info.tolerances;
  for (const auto& [key, value] : cfg.tolerances) {
    require(info.tolerances.count(key) == 1, ErrorCode::UsageError,
            "suite '" + name + "' has no tolerance '" + key + "'");
    require(value >= 0.0, ErrorCode::UsageError, "tolerance '" + key + "' must be >= 0");
    effective.tolerances[key] = value;
  }
  ExperimentReport report;
  report.name = name;
  report.config = effective;
  info.run(effective, report);
  return report;
}

inline Json report_to_json(const ExperimentReport& r) {
  Json per_trial = Json::array();
  for (const auto& row : r.per_trial) {
    Json rec = Json::object();
    for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) rec[r.columns[i]] = row[i];
    per_trial.push_back(std::move(rec));
  }
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  Json tolerances = Json::object();
  for (const auto& [k, v] : r.config.tolerances) tolerances[k] = v;
  return {
      {"name", r.name},
      {"pass", r.pass},
      {"metrics", metrics},
      {"per_trial", per_trial},
      {"config",
       {{"n", r.config.n},
        {"seed", r.config.seed},
        {"trials", r.config.trials},
        {"grid_points", r.config.grid_points},
        {"tolerances", tolerances}}},
      {"seed_algorithm", std::string(Rng::algorithm)},
  };
}

inline std::string report_json_text(const ExperimentReport& r) { return report_to_json(r).dump(2) + "\n"; }

inline void write_report(const ExperimentReport& r, const std::string& path) {
  write_text_file(path, report_json_text(r));
}

/// Header row of column names, one row per trial, 17 significant digits, LF.
inline std::string csv_text(const ExperimentReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += r.columns[i];
  }
  out += '\n';
  for (const auto& row : r.per_trial) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline void emit_csv(const ExperimentReport& r, const std::string& path) { write_text_file(path, csv_text(r)); }

}  // namespace sympgrass
