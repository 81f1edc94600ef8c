#include <gtest/gtest.h>

#include <cmath>

#include "sympgrass/symplectic.hpp"

using namespace sympgrass;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix rot(double t) { return mat2(std::cos(t), -std::sin(t), std::sin(t), std::cos(t)); }

GroupCurve exp_group_curve(const Matrix& x, const Matrix& g0, std::size_t points) {
  const auto t = uniform_grid(0.0, 1.0, points);
  std::vector<SymplecticElement> g;
  for (double s : t) g.emplace_back(matrix_exp(s * x) * g0);
  return GroupCurve(t, std::move(g));
}

}  // namespace

TEST(ComplexStructure, BlockForm) {
  EXPECT_EQ(standard_J(1).matrix(), mat2(0, -1, 1, 0));
  for (int n : {2, 3, 7}) {
    const Matrix j = standard_J(n).matrix();
    EXPECT_EQ(j * j, -Matrix::Identity(2 * n, 2 * n));
    EXPECT_EQ(j.transpose(), -j);
  }
}

TEST(IsSymplectic, Examples) {
  EXPECT_TRUE(is_symplectic(Matrix::Identity(4, 4), 1e-12));
  EXPECT_TRUE(is_symplectic(mat2(1, 3.5, 0, 1), 1e-12));
  EXPECT_FALSE(is_symplectic(mat2(2, 0, 0, 2), 1e-8));
  EXPECT_NEAR(symplectic_defect(mat2(2, 0, 0, 2)), 3.0 * standard_J(1).matrix().norm(), 1e-14);
}

TEST(IsAlgebra, Examples) {
  const Matrix j = standard_J(2).matrix();
  EXPECT_TRUE(is_algebra(j, 1e-14));
  EXPECT_TRUE(is_algebra(Matrix::Zero(4, 4), 1e-14));
  EXPECT_FALSE(is_algebra(Matrix::Identity(4, 4), 1e-8));
}

TEST(AlgebraProjector, IdempotentAndFixesAlgebra) {
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const int n = rng.integer(1, 8);
    const Matrix m = rng.uniform_matrix(2 * n, 2 * n);
    const Matrix p = project_to_algebra(m);
    EXPECT_LE(algebra_defect(p), 1e-14 * (1.0 + m.norm()));
    EXPECT_LE((project_to_algebra(p) - p).norm(), 1e-14 * (1.0 + m.norm()));
  }
  const Matrix j = standard_J(3).matrix();
  EXPECT_EQ(project_to_algebra(j), j);
}

TEST(RandomAlgebraElement, Examples) {
  EXPECT_EQ(random_algebra_element(3, 0.0, 5).matrix(), Matrix::Zero(6, 6));
  EXPECT_EQ(random_algebra_element(3, 1.0, 5).matrix(), random_algebra_element(3, 1.0, 5).matrix());
  EXPECT_NE(random_algebra_element(3, 1.0, 5).matrix(), random_algebra_element(3, 1.0, 6).matrix());
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    EXPECT_TRUE(is_algebra(random_algebra_element(4, 2.0, seed).matrix(), 1e-12));
}

TEST(RandomAlgebraElement, RejectsNegativeScale) {
  EXPECT_THROW(random_algebra_element(2, -1.0, 0), Error);
}

TEST(Elements, ValidateMembership) {
  EXPECT_THROW(AlgebraElement(Matrix::Identity(2, 2)), Error);
  EXPECT_THROW(SymplecticElement(mat2(2, 0, 0, 2)), Error);
  EXPECT_THROW(SymplecticElement(Matrix::Identity(3, 3)), Error);
  const SymplecticElement g(mat2(1, 2, 0, 1));
  EXPECT_NEAR(g.hs_deviation(), 2.0, 1e-15);
  EXPECT_NEAR(((g * g.inverse()).matrix() - Matrix::Identity(2, 2)).norm(), 0.0, 1e-14);
}

TEST(GroupExp, Examples) {
  EXPECT_EQ(group_exp(AlgebraElement::zero(2)).matrix(), Matrix::Identity(4, 4));
  const AlgebraElement tj(0.8 * standard_J(1).matrix());
  EXPECT_NEAR((group_exp(tj).matrix() - rot(0.8)).norm(), 0.0, 1e-14);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = group_exp(random_algebra_element(3, 1.0, seed));
    EXPECT_LE(symplectic_defect(g.matrix()), 1e-8);
  }
}

TEST(GroupClosure, RandomProducts) {
  Rng rng(22);
  for (int k = 0; k < 500; ++k) {
    const int n = rng.integer(1, 8);
    const auto a = group_exp(random_algebra_element(n, 0.5, rng));
    const auto b = group_exp(random_algebra_element(n, 0.5, rng));
    EXPECT_TRUE(is_symplectic((a * b).matrix(), 1e-8));
  }
}

TEST(GroupGeodesic, Examples) {
  Rng rng(23);
  const auto g0 = group_exp(random_algebra_element(2, 0.5, rng));
  const auto v = random_algebra_element(2, 0.7, rng);
  EXPECT_EQ(group_geodesic(g0, v, 0.0).matrix(), g0.matrix());

  const AlgebraElement anti(0.5 * (v.matrix() - v.matrix().transpose()));
  const AlgebraElement sym(0.5 * (v.matrix() + v.matrix().transpose()));
  for (const auto& x : {anti, sym}) {
    const Matrix expected = g0.matrix() * matrix_exp(0.6 * x.matrix());
    EXPECT_LE((group_geodesic(g0, x, 0.6).matrix() - expected).norm(), 1e-12 * expected.norm());
  }

  const auto one = SymplecticElement::identity(2);
  const double h = 1e-4;
  const Matrix fd = (group_geodesic(one, v, h).matrix() - group_geodesic(one, v, -h).matrix()) / (2 * h);
  EXPECT_LE((fd - v.matrix()).norm(), 1e-5 * (1.0 + v.norm()));
}

TEST(CurveLength, Examples) {
  const auto t = uniform_grid(0.0, 1.0, 11);
  const GroupCurve constant(t, std::vector<SymplecticElement>(t.size(), SymplecticElement::identity(2)));
  EXPECT_EQ(curve_length_right(constant), 0.0);
  EXPECT_EQ(curve_length_left(constant), 0.0);

  const Matrix j = standard_J(1).matrix();
  const auto rotation = exp_group_curve(j, Matrix::Identity(2, 2), 1001);
  EXPECT_NEAR(curve_length_right(rotation), std::sqrt(2.0), 1e-4);
}

TEST(CurveLength, ReparametrizationInvariant) {
  const auto x = random_algebra_element(2, 0.8, 31);
  const auto grid = uniform_grid(0.0, 1.0, 1001);
  std::vector<SymplecticElement> a, b;
  for (double s : grid) {
    a.push_back(group_exp(x * s));
    b.push_back(group_exp(x * (s * s)));
  }
  const double la = curve_length_right(GroupCurve(grid, a));
  const double lb = curve_length_right(GroupCurve(grid, b));
  EXPECT_NEAR(la, x.norm(), 1e-4);
  EXPECT_NEAR(la, lb, 1e-4);
}

TEST(CurveLength, TooFewPoints) {
  const GroupCurve c({0.0}, {SymplecticElement::identity(1)});
  EXPECT_THROW(curve_length_right(c), Error);
}

TEST(InvertCurve, Examples) {
  const auto t = uniform_grid(0.0, 1.0, 5);
  const GroupCurve constant(t, std::vector<SymplecticElement>(t.size(), SymplecticElement::identity(1)));
  for (const auto& p : invert_curve(constant).points) EXPECT_EQ(p.matrix(), Matrix::Identity(2, 2));

  const Matrix j = standard_J(1).matrix();
  const auto beta = invert_curve(exp_group_curve(j, Matrix::Identity(2, 2), 11));
  for (std::size_t i = 0; i < beta.times.size(); ++i)
    EXPECT_LE((beta.points[i].matrix() - matrix_exp(-beta.times[i] * j)).norm(), 1e-13);
}

TEST(InvertCurve, DualityOfLengths) {
  Rng rng(24);
  for (int k = 0; k < 100; ++k) {
    const int n = rng.integer(1, 4);
    const auto x = random_algebra_element(n, 0.5, rng);
    const auto g0 = group_exp(random_algebra_element(n, 0.5, rng));
    const auto alpha = exp_group_curve(x.matrix(), g0.matrix(), 1001);
    EXPECT_NEAR(curve_length_left(invert_curve(alpha)), curve_length_right(alpha), 1e-6);
  }
}
