#pragma once

// Ambient and quotient metrics on the orbit of a Lagrangian subspace, minimal
// (horizontal) lifts, curve lengths, the isometric lifting ODE, closed-form
// orbit geodesics and distance upper bounds.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sympgrass/lagrangian.hpp"
#include "sympgrass/numerics.hpp"
#include "sympgrass/symplectic.hpp"

namespace sympgrass {

/// A(W, v) = tr_W(v^T v)^{1/2} = ||v P_W||_F.
inline double ambient_metric(const TangentVector& v) { return (v.hat() * v.base().projector()).norm(); }

/// The unique lift z0 = -J v^ of v that is orthogonal to the isotropy algebra
/// of its base. It satisfies P J z0 P = v and z0 = (1 - P) z0 P.
inline AlgebraElement minimal_lift(const TangentVector& v) {
  const Matrix j = standard_J(v.base().n()).matrix();
  return AlgebraElement(-j * v.hat());
}

/// Q(W, v) = inf { ||z||_F : z in sp, P_W J z P_W = v }, attained at the
/// minimal lift.
inline double quotient_metric(const TangentVector& v) { return minimal_lift(v).norm(); }

/// Frobenius-orthonormal basis of sp(2n) = J * Sym(2n), of size n(2n+1).
inline std::vector<Matrix> algebra_basis(Eigen::Index n) {
  const Matrix j = standard_J(n).matrix();
  const Eigen::Index d = 2 * n;
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(n * (2 * n + 1)));
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = r; c < d; ++c) {
      Matrix s = Matrix::Zero(d, d);
      if (r == c) {
        s(r, r) = 1.0;
      } else {
        s(r, c) = s(c, r) = 1.0 / std::sqrt(2.0);
      }
      basis.push_back(j * s);
    }
  }
  return basis;
}

/// Quotient metric straight from its definition: the minimum-norm solution of
/// the linear constraint F^T J z F = coords(v) over an orthonormal basis of
/// the algebra, solved by complete orthogonal decomposition.
inline double quotient_metric_oracle(const TangentVector& v) {
  const Eigen::Index n = v.base().n();
  require(n <= 8, ErrorCode::InvalidInput, "quotient_metric_oracle: n must be <= 8");
  const Matrix j = standard_J(n).matrix();
  const Matrix& f = v.base().frame();
  const auto basis = algebra_basis(n);
  Matrix constraint(n * n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Matrix image = f.transpose() * j * basis[k] * f;
    constraint.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Vector>(image.data(), n * n);
  }
  const Matrix target = v.coords();
  const Vector rhs = Eigen::Map<const Vector>(target.data(), n * n);
  const Vector c = constraint.completeOrthogonalDecomposition().solve(rhs);
  require((constraint * c - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()), ErrorCode::Internal,
          "quotient_metric_oracle: inconsistent tangent constraint");
  return c.norm();
}

/// Q_W(z) = z - minimal_lift(d pi_W(z)), the component of z in the isotropy
/// algebra of W.
inline AlgebraElement isotropy_projection(const LagrangianSubspace& w, const AlgebraElement& z) {
  return z - minimal_lift(action_differential(w, z));
}

// ---------------------------------------------------------------------------
// Curves in the orbit

struct OrbitCurve {
  std::vector<double> times;
  std::vector<LagrangianSubspace> points;
  std::optional<std::vector<TangentVector>> velocities;

  OrbitCurve(std::vector<double> t, std::vector<LagrangianSubspace> p,
             std::optional<std::vector<TangentVector>> v = std::nullopt)
      : times(std::move(t)), points(std::move(p)), velocities(std::move(v)) {
    require(times.size() == points.size(), ErrorCode::InvalidInput, "OrbitCurve: times/points size mismatch");
    require(!velocities || velocities->size() == points.size(), ErrorCode::InvalidInput,
            "OrbitCurve: velocities size mismatch");
    require_grid(times, 1, "OrbitCurve");
  }
};

/// Velocities of a sampled curve from projector finite differences:
/// v^ = P sym(J dP/dt) P. The compression by J picks out the tangent vector
/// from the off-diagonal block of dP/dt, since P J P' P = J (1 - P) P' P.
inline std::vector<TangentVector> estimate_velocities(std::span<const double> times,
                                                      std::span<const LagrangianSubspace> points) {
  require(points.size() >= 2, ErrorCode::InvalidInput, "estimate_velocities: need >= 2 points");
  std::vector<Matrix> proj;
  proj.reserve(points.size());
  for (const auto& p : points) proj.push_back(p.projector());
  const auto dp = grid_derivative<Matrix>(times, proj);
  const Matrix j = standard_J(points.front().n()).matrix();
  std::vector<TangentVector> v;
  v.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) v.push_back(TangentVector::compress(points[i], j * dp[i]));
  return v;
}

inline std::vector<TangentVector> curve_velocities(const OrbitCurve& c) {
  if (c.velocities) return *c.velocities;
  return estimate_velocities(c.times, c.points);
}

inline double curve_length_ambient(const OrbitCurve& c) {
  require(c.points.size() >= 2, ErrorCode::InvalidInput, "curve_length_ambient: need >= 2 points");
  const auto v = curve_velocities(c);
  std::vector<double> speed;
  speed.reserve(v.size());
  for (const auto& vi : v) speed.push_back(ambient_metric(vi));
  return trapezoid(c.times, speed);
}

inline double curve_length_quotient(const OrbitCurve& c) {
  require(c.points.size() >= 2, ErrorCode::InvalidInput, "curve_length_quotient: need >= 2 points");
  const auto v = curve_velocities(c);
  std::vector<double> speed;
  speed.reserve(v.size());
  for (const auto& vi : v) speed.push_back(quotient_metric(vi));
  return trapezoid(c.times, speed);
}

/// Largest operator-norm jump between consecutive projectors.
inline double max_projector_step(const OrbitCurve& c) {
  double step = 0.0;
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i)
    step = std::max(step, operator_norm(c.points[i + 1].projector() - c.points[i].projector()));
  return step;
}

/// X(t_i) = -J xi'(t_i) P_{xi(t_i)} at every node.
inline std::vector<Matrix> lift_generators(const OrbitCurve& c) {
  const auto v = curve_velocities(c);
  std::vector<Matrix> x;
  x.reserve(v.size());
  for (const auto& vi : v) x.push_back(minimal_lift(vi).matrix());
  return x;
}

/// Solves phi' = X(t) phi, phi(0) = 1 with X(t) = -J xi' P_xi. Then
/// phi(t)(xi(0)) = xi(t) and the right invariant length of phi equals the
/// ambient length of xi. X between nodes is cubic interpolation of the node
/// values.
inline GroupCurve isometric_lift(const OrbitCurve& c, double max_step = 0.1) {
  require(c.points.size() >= 2, ErrorCode::InvalidInput, "isometric_lift: need >= 2 points");
  require(max_projector_step(c) < max_step, ErrorCode::RefineGrid,
          "isometric_lift: consecutive projectors differ by >= " + std::to_string(max_step));
  const auto x = lift_generators(c);
  const std::span<const double> t(c.times);
  const std::span<const Matrix> xs(x);
  MatrixField field = [&](double s) { return interpolate_cubic(t, xs, s); };
  const Eigen::Index d = c.points.front().dim();
  const auto phi = rk4_linear_ode(field, c.times, Matrix::Identity(d, d));
  std::vector<SymplecticElement> points;
  points.reserve(phi.size());
  for (const auto& m : phi) points.emplace_back(m);
  return GroupCurve(c.times, std::move(points));
}

/// xi(t) = exp(t (v^T - v)) exp(-t v^T) (L) with v the minimal lift of -w.
inline LagrangianSubspace orbit_geodesic(const LagrangianSubspace& l, const TangentVector& w, double t) {
  require(w.base().dim() == l.dim() && subspace_distance(w.base(), l) <= Tolerances::verification,
          ErrorCode::InvalidInput, "orbit_geodesic: w is not based at L");
  const Matrix v = minimal_lift(w.scaled(-1.0)).matrix();
  const Matrix vt = v.transpose();
  return act(matrix_exp(t * (vt - v)) * matrix_exp(-t * vt), l);
}

/// Samples of the geodesic together with exact velocities
/// P J Y P, Y = (v^T - v) - exp(t (v^T - v)) v^T exp(-t (v^T - v)).
inline OrbitCurve orbit_geodesic_curve(const LagrangianSubspace& l, const TangentVector& w,
                                       std::vector<double> t_grid) {
  require(subspace_distance(w.base(), l) <= Tolerances::verification, ErrorCode::InvalidInput,
          "orbit_geodesic_curve: w is not based at L");
  const Matrix v = minimal_lift(w.scaled(-1.0)).matrix();
  const Matrix vt = v.transpose();
  const Matrix rot = vt - v;
  std::vector<LagrangianSubspace> pts;
  std::vector<TangentVector> vel;
  pts.reserve(t_grid.size());
  vel.reserve(t_grid.size());
  for (double t : t_grid) {
    const Matrix er = matrix_exp(t * rot);
    const SymplecticElement phi(er * matrix_exp(-t * vt));
    const AlgebraElement y(project_to_algebra(rot - er * vt * er.inverse()));
    vel.push_back(action_differential(phi, l, y));
    pts.push_back(vel.back().base());
  }
  return OrbitCurve(std::move(t_grid), std::move(pts), std::move(vel));
}

/// t -> exp(t z)(L) with exact velocities P J z P.
inline OrbitCurve exp_curve(const LagrangianSubspace& l, const AlgebraElement& z, std::vector<double> t_grid) {
  std::vector<LagrangianSubspace> pts;
  std::vector<TangentVector> vel;
  pts.reserve(t_grid.size());
  vel.reserve(t_grid.size());
  for (double t : t_grid) {
    vel.push_back(action_differential(group_exp(z * t), l, z));
    pts.push_back(vel.back().base());
  }
  return OrbitCurve(std::move(t_grid), std::move(pts), std::move(vel));
}

// ---------------------------------------------------------------------------
// Distance upper bounds

struct PathEstimate {
  bool available = false;
  double length = std::numeric_limits<double>::quiet_NaN();
  double endpoint_error = std::numeric_limits<double>::quiet_NaN();
  std::string reason;  // why the path is unavailable
};

struct DistanceReport {
  PathEstimate chart_path;
  PathEstimate geodesic_path;
  PathEstimate section_path;

  /// Smallest available length; NaN if no path is available.
  double minimum() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto* p : {&chart_path, &geodesic_path, &section_path})
      if (p->available) m = std::min(m, p->length);
    return std::isinf(m) ? std::numeric_limits<double>::quiet_NaN() : m;
  }
};

struct DistanceOptions {
  std::size_t grid_points = 201;
  double endpoint_tol = 1e-6;
  int max_bisection = 200;
};

namespace detail {

inline PathEstimate chart_path(const LagrangianSubspace& s, const LagrangianSubspace& t,
                               const DistanceOptions& opt) {
  PathEstimate out;
  try {
    const Matrix psi_t = chart_forward(s, t).psi;
    const auto grid = uniform_grid(0.0, 1.0, opt.grid_points);
    std::vector<double> speed;
    speed.reserve(grid.size());
    for (double tau : grid) {
      const auto w = chart_inverse(s, tau * psi_t).w;
      speed.push_back(ambient_metric(chart_differential_inverse(s, w, psi_t)));
    }
    out.length = trapezoid(grid, speed);
    out.endpoint_error = subspace_distance(chart_inverse(s, psi_t).w, t);
    out.available = out.endpoint_error <= opt.endpoint_tol;
    if (!out.available) out.reason = "endpoint mismatch";
  } catch (const Error& e) {
    out.reason = e.what();
  }
  return out;
}

/// Geodesic from S whose endpoint is T. In the chart at S the geodesic with
/// initial velocity d has endpoint coordinate tan(d) (spectrally), so the
/// direction is fixed to arctan(psi_T) and the speed is found by bisection
/// on the monotone scalar <psi(endpoint) - psi_T, d>.
inline PathEstimate geodesic_path(const LagrangianSubspace& s, const LagrangianSubspace& t,
                                  const DistanceOptions& opt) {
  PathEstimate out;
  try {
    const Matrix psi_t = chart_forward(s, t).psi;
    const auto eig = sym_eig(psi_t);
    const Matrix angle = spectral_apply(eig, [](double x) { return std::atan(x); });
    const double angle_norm = angle.norm();
    if (angle_norm == 0.0) {
      out.available = true;
      out.length = 0.0;
      out.endpoint_error = subspace_distance(s, t);
      return out;
    }
    const Matrix dir = angle / angle_norm;
    const double max_eig = eig.eigenvalues.cwiseAbs().maxCoeff();
    const double max_dir = std::atan(max_eig) / angle_norm;
    const double speed_limit = 0.5 * std::numbers::pi / max_dir;

    auto endpoint = [&](double speed) {
      return orbit_geodesic(s, TangentVector::from_coords(s, speed * dir), 1.0);
    };
    auto mismatch = [&](double speed) {
      try {
        const Matrix psi = chart_forward(s, endpoint(speed)).psi;
        return ((psi - psi_t).array() * dir.array()).sum();
      } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    double lo = 0.0, hi = speed_limit;
    for (int it = 0; it < opt.max_bisection && hi - lo > 1e-15 * speed_limit; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mismatch(mid) < 0.0) lo = mid; else hi = mid;
    }
    const double speed = 0.5 * (lo + hi);
    const auto w = TangentVector::from_coords(s, speed * dir);
    out.length = curve_length_ambient(orbit_geodesic_curve(s, w, uniform_grid(0.0, 1.0, opt.grid_points)));
    out.endpoint_error = subspace_distance(endpoint(speed), t);
    out.available = out.endpoint_error <= opt.endpoint_tol;
    if (!out.available) out.reason = "shooting did not reach the endpoint";
  } catch (const Error& e) {
    out.reason = e.what();
  }
  return out;
}

/// exp(t z)(S) with z = log of the cross section taking S to T. The logarithm
/// is only used for ||u - 1|| < 1.
inline PathEstimate section_path(const LagrangianSubspace& s, const LagrangianSubspace& t,
                                 const DistanceOptions& opt) {
  PathEstimate out;
  try {
    const SymplecticElement u = cross_section(s, t);
    const Matrix id = Matrix::Identity(s.dim(), s.dim());
    if (operator_norm(u.matrix() - id) >= 1.0) {
      out.reason = "section element outside the logarithm domain";
      return out;
    }
    const AlgebraElement z(project_to_algebra(matrix_log(u.matrix())));
    const auto curve = exp_curve(s, z, uniform_grid(0.0, 1.0, opt.grid_points));
    out.length = curve_length_ambient(curve);
    out.endpoint_error = subspace_distance(curve.points.back(), t);
    out.available = out.endpoint_error <= opt.endpoint_tol;
    if (!out.available) out.reason = "endpoint mismatch";
  } catch (const Error& e) {
    out.reason = e.what();
  }
  return out;
}

}  // namespace detail

/// Three candidate curve lengths joining S and T, each an upper bound for the
/// ambient geodesic distance: the chart-linear path, the orbit geodesic found
/// by shooting, and the exponential of the cross-section logarithm.
inline DistanceReport distance_upper_bounds(const LagrangianSubspace& s, const LagrangianSubspace& t,
                                            const DistanceOptions& opt = {}) {
  require(s.dim() == t.dim(), ErrorCode::InvalidInput, "distance_upper_bounds: dimension mismatch");
  return {detail::chart_path(s, t, opt), detail::geodesic_path(s, t, opt), detail::section_path(s, t, opt)};
}

}  // namespace sympgrass
