#pragma once

// Dense real linear-algebra and integration primitives. Everything here is a
// pure function of its arguments.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "sympgrass/error.hpp"

namespace sympgrass {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default tolerance tiers. Operations take explicit tolerance arguments
/// defaulted from here.
struct Tolerances {
  static constexpr double construction = 1e-10;
  static constexpr double verification = 1e-8;
  static constexpr double ode = 1e-6;
  static constexpr double rank_cutoff = 1e-10;
};

inline bool all_finite(const Matrix& a) { return a.allFinite(); }

inline void require_finite(const Matrix& a, const char* who) {
  require(all_finite(a), ErrorCode::InvalidInput, std::string(who) + ": non-finite entries");
}

inline void require_square(const Matrix& a, const char* who) {
  require(a.rows() == a.cols() && a.rows() > 0, ErrorCode::InvalidInput,
          std::string(who) + ": expected a non-empty square matrix");
}

inline double frobenius(const Matrix& a) { return a.norm(); }

/// Largest singular value.
inline double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

inline double smallest_singular_value(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

inline Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

inline double asymmetry(const Matrix& a) { return (a - a.transpose()).norm(); }

struct SpectralDecomposition {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthogonal, columns match eigenvalues

  Matrix reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
  }
};

inline SpectralDecomposition sym_eig(const Matrix& a) {
  require_square(a, "sym_eig");
  require_finite(a, "sym_eig");
  require(asymmetry(a) <= 1e-8 * (1.0 + a.norm()), ErrorCode::InvalidInput,
          "sym_eig: input is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(a));
  require(solver.info() == Eigen::Success, ErrorCode::Internal, "sym_eig: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Applies a scalar function to a symmetric matrix through its spectrum.
template <typename F>
Matrix spectral_apply(const SpectralDecomposition& d, F&& f) {
  Vector mapped = d.eigenvalues.unaryExpr([&](double x) { return f(x); });
  return d.eigenvectors * mapped.asDiagonal() * d.eigenvectors.transpose();
}

/// Principal square root of a symmetric positive semidefinite matrix.
/// Eigenvalues in [-1e-10, 0) are clamped to zero.
inline Matrix psd_sqrt(const Matrix& a) {
  const auto d = sym_eig(a);
  require(d.eigenvalues(0) >= -1e-10, ErrorCode::NotPSD, "psd_sqrt: negative eigenvalue");
  return symmetrize(spectral_apply(d, [](double x) { return std::sqrt(std::max(x, 0.0)); }));
}

/// Scaling-and-squaring Pade exponential (Eigen's MatrixFunctions module).
inline Matrix matrix_exp(const Matrix& x) {
  require_square(x, "matrix_exp");
  require_finite(x, "matrix_exp");
  if (x.isZero(0.0)) return Matrix::Identity(x.rows(), x.cols());
  Matrix result = x.exp();
  require_finite(result, "matrix_exp (overflow)");
  return result;
}

/// Principal real logarithm. Callers restrict the argument to ||x - 1|| < 1,
/// where the principal branch is real and well conditioned.
inline Matrix matrix_log(const Matrix& x) {
  require_square(x, "matrix_log");
  require_finite(x, "matrix_log");
  Matrix result = x.log();
  require_finite(result, "matrix_log");
  return result;
}

struct PolarDecomposition {
  Matrix u;  // orthogonal factor
  Matrix p;  // symmetric positive definite factor, (g^T g)^{1/2}
};

inline PolarDecomposition polar_decompose(const Matrix& g) {
  require_square(g, "polar_decompose");
  require_finite(g, "polar_decompose");
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  require(s(s.size() - 1) >= 1e-10, ErrorCode::SingularInput, "polar_decompose: near-singular input");
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  return {u * v.transpose(), symmetrize(v * s.asDiagonal() * v.transpose())};
}

/// Column basis of range(a) with orthonormal columns. The rank is decided by
/// singular values above 1e-10 * sigma_max; the basis comes from a
/// column-pivoted QR with its R diagonal made positive.
inline Matrix qr_orthonormal_range(const Matrix& a) {
  require(a.size() > 0, ErrorCode::InvalidInput, "qr_orthonormal_range: empty matrix");
  require_finite(a, "qr_orthonormal_range");
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  require(s(0) > 0.0, ErrorCode::EmptyRange, "qr_orthonormal_range: zero matrix");
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > Tolerances::rank_cutoff * s(0)) ++rank;

  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), rank);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < rank; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Grids, finite differences, quadrature, ODEs

inline void require_grid(std::span<const double> t, std::size_t min_points, const char* who) {
  require(t.size() >= min_points, ErrorCode::InvalidInput, std::string(who) + ": too few grid points");
  for (std::size_t i = 1; i < t.size(); ++i) {
    require(t[i] > t[i - 1], ErrorCode::InvalidInput, std::string(who) + ": grid must be strictly increasing");
  }
}

inline std::vector<double> uniform_grid(double t0, double t1, std::size_t points) {
  require(points >= 2 && t1 > t0, ErrorCode::InvalidInput, "uniform_grid: need >= 2 points on a non-empty interval");
  std::vector<double> t(points);
  const double h = (t1 - t0) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) t[i] = t0 + h * static_cast<double>(i);
  t.back() = t1;
  return t;
}

/// Derivative of sampled values on a (possibly non-uniform) grid. Three-point
/// central formula in the interior, three-point one-sided formulas at the
/// ends; two-point difference when only two samples exist.
template <typename T>
std::vector<T> grid_derivative(std::span<const double> t, std::span<const T> f) {
  require(t.size() == f.size(), ErrorCode::InvalidInput, "grid_derivative: size mismatch");
  require_grid(t, 2, "grid_derivative");
  const std::size_t n = t.size();
  std::vector<T> d(n);
  if (n == 2) {
    T slope = (f[1] - f[0]) / (t[1] - t[0]);
    d[0] = slope;
    d[1] = slope;
    return d;
  }
  // Written in terms of slopes so constant samples give exactly zero.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
    const T s1 = (f[i] - f[i - 1]) / h1;
    const T s2 = (f[i + 1] - f[i]) / h2;
    d[i] = (h2 * s1 + h1 * s2) / (h1 + h2);
    if (i == 1) d[0] = s1 - h1 * (s2 - s1) / (h1 + h2);
    if (i + 2 == n) d[n - 1] = s2 + h2 * (s2 - s1) / (h1 + h2);
  }
  return d;
}

inline double trapezoid(std::span<const double> t, std::span<const double> f) {
  require(t.size() == f.size() && t.size() >= 2, ErrorCode::InvalidInput, "trapezoid: need >= 2 matching samples");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) sum += 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
  return sum;
}

/// Cubic Lagrange interpolation of grid samples, using the four nodes that
/// bracket `s` (clamped at the ends).
inline Matrix interpolate_cubic(std::span<const double> t, std::span<const Matrix> f, double s) {
  const std::size_t n = t.size();
  if (n == 1) return f[0];
  auto upper = std::upper_bound(t.begin(), t.end(), s);
  std::size_t k = upper == t.begin() ? 0 : static_cast<std::size_t>(upper - t.begin()) - 1;
  k = std::min(k, n - 2);
  if (n < 4) {
    const double w = (s - t[k]) / (t[k + 1] - t[k]);
    return (1.0 - w) * f[k] + w * f[k + 1];
  }
  std::size_t first = k == 0 ? 0 : k - 1;
  first = std::min(first, n - 4);
  Matrix out = Matrix::Zero(f[0].rows(), f[0].cols());
  for (std::size_t i = first; i < first + 4; ++i) {
    double w = 1.0;
    for (std::size_t j = first; j < first + 4; ++j) {
      if (j != i) w *= (s - t[j]) / (t[i] - t[j]);
    }
    out += w * f[i];
  }
  return out;
}

using MatrixField = std::function<Matrix(double)>;

/// Classical fourth-order Runge-Kutta for phi' = X(t) phi on the given grid.
inline std::vector<Matrix> rk4_linear_ode(const MatrixField& field, std::span<const double> t_grid,
                                          const Matrix& init) {
  require(!t_grid.empty(), ErrorCode::InvalidInput, "rk4_linear_ode: empty grid");
  require_grid(t_grid, 1, "rk4_linear_ode");
  std::vector<Matrix> out;
  out.reserve(t_grid.size());
  out.push_back(init);
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double h = t_grid[i + 1] - t;
    const Matrix& phi = out.back();
    const Matrix x_mid = field(t + 0.5 * h);
    const Matrix k1 = field(t) * phi;
    const Matrix k2 = x_mid * (phi + 0.5 * h * k1);
    const Matrix k3 = x_mid * (phi + 0.5 * h * k2);
    const Matrix k4 = field(t + h) * (phi + h * k3);
    out.push_back(phi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  }
  return out;
}

}  // namespace sympgrass
