#pragma once

// The complex structure J on R^n x R^n, the symplectic group and its Lie
// algebra (as 2n x 2n matrices), group geodesics, and left/right invariant
// curve lengths.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sympgrass/numerics.hpp"
#include "sympgrass/random.hpp"

namespace sympgrass {

/// J(x, y) = (-y, x), i.e. the block matrix [[0, -I], [I, 0]].
class ComplexStructure {
 public:
  explicit ComplexStructure(Eigen::Index n) : n_(n) {
    require(n >= 1, ErrorCode::InvalidInput, "standard_J: n must be >= 1");
    matrix_ = Matrix::Zero(2 * n, 2 * n);
    matrix_.topRightCorner(n, n) = -Matrix::Identity(n, n);
    matrix_.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  }

  Eigen::Index n() const { return n_; }
  Eigen::Index dim() const { return 2 * n_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  Eigen::Index n_;
  Matrix matrix_;
};

inline ComplexStructure standard_J(Eigen::Index n) { return ComplexStructure(n); }

inline Eigen::Index half_dimension(const Matrix& m, const char* who) {
  require_square(m, who);
  require(m.rows() % 2 == 0, ErrorCode::InvalidInput, std::string(who) + ": odd dimension");
  return m.rows() / 2;
}

inline double symplectic_defect(const Matrix& g) {
  const Matrix j = standard_J(half_dimension(g, "is_symplectic")).matrix();
  return (g.transpose() * j * g - j).norm();
}

inline double algebra_defect(const Matrix& x) {
  const Matrix j = standard_J(half_dimension(x, "is_algebra")).matrix();
  return (x * j + j * x.transpose()).norm();
}

inline bool is_symplectic(const Matrix& g, double tol) { return symplectic_defect(g) <= tol; }

inline bool is_algebra(const Matrix& x, double tol) { return algebra_defect(x) <= tol; }

/// Orthogonal projection of an arbitrary 2n x 2n matrix onto the symplectic
/// Lie algebra: m -> (m + J m^T J) / 2.
inline Matrix project_to_algebra(const Matrix& m) {
  const Matrix j = standard_J(half_dimension(m, "project_to_algebra")).matrix();
  return 0.5 * (m + j * m.transpose() * j);
}

/// Member x of sp(2n): x J = -J x^T.
class AlgebraElement {
 public:
  explicit AlgebraElement(Matrix x) : x_(std::move(x)) {
    require_finite(x_, "AlgebraElement");
    require(algebra_defect(x_) <= 1e-8 * (1.0 + x_.norm()), ErrorCode::InvalidInput,
            "AlgebraElement: x J + J x^T != 0");
  }

  static AlgebraElement zero(Eigen::Index n) { return AlgebraElement(Matrix::Zero(2 * n, 2 * n)); }

  const Matrix& matrix() const { return x_; }
  Eigen::Index n() const { return x_.rows() / 2; }
  double norm() const { return x_.norm(); }

  AlgebraElement operator*(double c) const { return AlgebraElement(c * x_); }
  AlgebraElement operator+(const AlgebraElement& o) const { return AlgebraElement(x_ + o.x_); }
  AlgebraElement operator-(const AlgebraElement& o) const { return AlgebraElement(x_ - o.x_); }
  AlgebraElement transpose() const { return AlgebraElement(x_.transpose()); }

 private:
  Matrix x_;
};

/// Member g of Sp(2n): g^T J g = J. Records the Hilbert-Schmidt distance
/// ||g - 1||_F to the identity.
class SymplecticElement {
 public:
  explicit SymplecticElement(Matrix g) : g_(std::move(g)) {
    require_finite(g_, "SymplecticElement");
    const double scale = 1.0 + g_.squaredNorm();
    require(symplectic_defect(g_) <= 1e-8 * scale, ErrorCode::InvalidInput, "SymplecticElement: g^T J g != J");
    require(smallest_singular_value(g_) > 1e-10, ErrorCode::SingularInput, "SymplecticElement: singular");
    hs_deviation_ = (g_ - Matrix::Identity(g_.rows(), g_.cols())).norm();
  }

  static SymplecticElement identity(Eigen::Index n) { return SymplecticElement(Matrix::Identity(2 * n, 2 * n)); }

  const Matrix& matrix() const { return g_; }
  Eigen::Index n() const { return g_.rows() / 2; }
  double hs_deviation() const { return hs_deviation_; }

  /// g^{-1} = -J g^T J.
  SymplecticElement inverse() const {
    const Matrix j = standard_J(n()).matrix();
    return SymplecticElement(-j * g_.transpose() * j);
  }

  SymplecticElement operator*(const SymplecticElement& o) const { return SymplecticElement(g_ * o.g_); }

 private:
  Matrix g_;
  double hs_deviation_ = 0.0;
};

inline AlgebraElement random_algebra_element(Eigen::Index n, double scale, std::uint64_t seed) {
  require(n >= 1, ErrorCode::InvalidInput, "random_algebra_element: n must be >= 1");
  require(scale >= 0.0, ErrorCode::InvalidInput, "random_algebra_element: scale must be >= 0");
  Rng rng(seed);
  return AlgebraElement(project_to_algebra(scale * rng.uniform_matrix(2 * n, 2 * n)));
}

inline AlgebraElement random_algebra_element(Eigen::Index n, double scale, Rng& rng) {
  return AlgebraElement(project_to_algebra(scale * rng.uniform_matrix(2 * n, 2 * n)));
}

inline SymplecticElement group_exp(const AlgebraElement& x) { return SymplecticElement(matrix_exp(x.matrix())); }

/// g0 exp(t v0^T) exp(t (v0 - v0^T)); passes through g0 at t = 0 with
/// velocity g0 v0.
inline SymplecticElement group_geodesic(const SymplecticElement& g0, const AlgebraElement& v0, double t) {
  if (t == 0.0) return g0;
  const Matrix& v = v0.matrix();
  const Matrix vt = v.transpose();
  return SymplecticElement(g0.matrix() * matrix_exp(t * vt) * matrix_exp(t * (v - vt)));
}

struct GroupCurve {
  std::vector<double> times;
  std::vector<SymplecticElement> points;

  GroupCurve(std::vector<double> t, std::vector<SymplecticElement> p) : times(std::move(t)), points(std::move(p)) {
    require(times.size() == points.size(), ErrorCode::InvalidInput, "GroupCurve: times/points size mismatch");
    require_grid(times, 1, "GroupCurve");
  }

  std::vector<Matrix> matrices() const {
    std::vector<Matrix> m;
    m.reserve(points.size());
    for (const auto& p : points) m.push_back(p.matrix());
    return m;
  }
};

namespace detail {

enum class Side { Left, Right };

inline double invariant_length(const GroupCurve& c, Side side) {
  require(c.points.size() >= 2, ErrorCode::InvalidInput, "curve length: need >= 2 points");
  const auto m = c.matrices();
  const auto dm = grid_derivative<Matrix>(c.times, m);
  std::vector<double> speed(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Matrix inv = m[i].partialPivLu().inverse();
    speed[i] = side == Side::Right ? (dm[i] * inv).norm() : (inv * dm[i]).norm();
  }
  return trapezoid(c.times, speed);
}

}  // namespace detail

/// Length with the right invariant metric: integral of ||a' a^{-1}||_F.
inline double curve_length_right(const GroupCurve& c) { return detail::invariant_length(c, detail::Side::Right); }

/// Length with the left invariant metric: integral of ||a^{-1} a'||_F.
inline double curve_length_left(const GroupCurve& c) { return detail::invariant_length(c, detail::Side::Left); }

/// Pointwise inverse t -> a(t)^{-1}.
inline GroupCurve invert_curve(const GroupCurve& c) {
  std::vector<SymplecticElement> inv;
  inv.reserve(c.points.size());
  for (const auto& p : c.points) {
    const Matrix& g = p.matrix();
    Eigen::FullPivLU<Matrix> lu(g);
    require(lu.isInvertible() && smallest_singular_value(g) > 1e-10, ErrorCode::SingularInput,
            "invert_curve: singular point");
    inv.emplace_back(lu.inverse());
  }
  return GroupCurve(c.times, std::move(inv));
}

}  // namespace sympgrass
