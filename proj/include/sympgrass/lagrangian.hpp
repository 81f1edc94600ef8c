#pragma once

// Lagrangian subspaces of R^n x R^n, graph charts, the symplectic action and
// its differential, local cross sections and the isotropy algebra.
//
// A subspace is stored as an orthonormal 2n x n frame together with its
// orthogonal projector. Frames are gauge-fixed by a QR factorisation with
// positive R diagonal; subspace equality is always decided on projectors.

#include <string>

#include "sympgrass/numerics.hpp"
#include "sympgrass/symplectic.hpp"

namespace sympgrass {

/// ||P J + J P - J||_F, zero exactly when range(P) is Lagrangian.
inline double lagrangian_defect(const Matrix& p) {
  const Matrix j = standard_J(half_dimension(p, "lagrangian_defect")).matrix();
  return (p * j + j * p - j).norm();
}

/// Orthonormal basis of the column span, Q from F = Q R with diag(R) > 0.
inline Matrix orthonormalize_frame(const Matrix& f) {
  require(f.rows() >= f.cols() && f.cols() > 0, ErrorCode::InvalidInput, "orthonormalize_frame: bad shape");
  require_finite(f, "orthonormalize_frame");
  Eigen::JacobiSVD<Matrix> svd(f);
  const Vector& s = svd.singularValues();
  require(s(0) > 0.0 && s(s.size() - 1) > Tolerances::rank_cutoff * s(0), ErrorCode::RankDeficient,
          "orthonormalize_frame: columns are numerically dependent");
  Eigen::HouseholderQR<Matrix> qr(f);
  Matrix q = qr.householderQ() * Matrix::Identity(f.rows(), f.cols());
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < f.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

class LagrangianSubspace {
 public:
  /// Re-orthonormalises the columns of `frame` and checks the Lagrangian
  /// condition P J + J P = J.
  static LagrangianSubspace from_frame(const Matrix& frame, double tol = Tolerances::verification) {
    require(frame.rows() == 2 * frame.cols() && frame.cols() >= 1, ErrorCode::InvalidInput,
            "from_frame: expected a 2n x n frame");
    Matrix q = orthonormalize_frame(frame);
    Matrix p = symmetrize(q * q.transpose());
    require(lagrangian_defect(p) <= tol, ErrorCode::NotLagrangian, "from_frame: subspace is not Lagrangian");
    return LagrangianSubspace(std::move(q), std::move(p));
  }

  /// {0} x R^n.
  static LagrangianSubspace vertical(Eigen::Index n) {
    Matrix f = Matrix::Zero(2 * n, n);
    f.bottomRows(n) = Matrix::Identity(n, n);
    return from_frame(f);
  }

  const Matrix& frame() const { return frame_; }
  const Matrix& projector() const { return projector_; }
  Matrix symmetry() const { return 2.0 * projector_ - Matrix::Identity(dim(), dim()); }
  Eigen::Index n() const { return frame_.cols(); }
  Eigen::Index dim() const { return frame_.rows(); }

  /// Frame of the orthogonal complement, J * frame.
  Matrix complement_frame() const { return standard_J(n()).matrix() * frame_; }

 private:
  LagrangianSubspace(Matrix frame, Matrix projector) : frame_(std::move(frame)), projector_(std::move(projector)) {}

  Matrix frame_;
  Matrix projector_;
};

inline double subspace_distance(const LagrangianSubspace& a, const LagrangianSubspace& b) {
  return (a.projector() - b.projector()).norm();
}

inline LagrangianSubspace from_frame(const Matrix& frame) { return LagrangianSubspace::from_frame(frame); }

/// g(L). A NotLagrangian error here means g was not symplectic.
inline LagrangianSubspace act(const Matrix& g, const LagrangianSubspace& l) {
  require(g.rows() == l.dim() && g.cols() == l.dim(), ErrorCode::InvalidInput, "act: dimension mismatch");
  return LagrangianSubspace::from_frame(g * l.frame());
}

inline LagrangianSubspace act(const SymplecticElement& g, const LagrangianSubspace& l) { return act(g.matrix(), l); }

/// A symmetric operator supported on its base subspace: hat = P hat P. The
/// n x n `coords` are the same operator in the base frame.
class TangentVector {
 public:
  static TangentVector from_hat(LagrangianSubspace base, Matrix hat, double tol = Tolerances::construction) {
    require(hat.rows() == base.dim() && hat.cols() == base.dim(), ErrorCode::InvalidInput,
            "TangentVector: dimension mismatch");
    require_finite(hat, "TangentVector");
    const double scale = 1.0 + hat.norm();
    require(asymmetry(hat) <= tol * scale, ErrorCode::InvalidInput, "TangentVector: not symmetric");
    const Matrix& p = base.projector();
    require((hat - p * hat * p).norm() <= tol * scale, ErrorCode::InvalidInput,
            "TangentVector: not supported on the base subspace");
    return TangentVector(std::move(base), std::move(hat));
  }

  static TangentVector from_coords(LagrangianSubspace base, const Matrix& coords) {
    require(coords.rows() == base.n() && coords.cols() == base.n(), ErrorCode::InvalidInput,
            "TangentVector: coords must be n x n");
    require(asymmetry(coords) <= Tolerances::construction * (1.0 + coords.norm()), ErrorCode::InvalidInput,
            "TangentVector: coords not symmetric");
    Matrix hat = symmetrize(base.frame() * coords * base.frame().transpose());
    return TangentVector(std::move(base), std::move(hat));
  }

  /// Symmetrises an arbitrary 2n x 2n operator and compresses it to the base.
  static TangentVector compress(LagrangianSubspace base, const Matrix& m) {
    const Matrix& p = base.projector();
    Matrix hat = symmetrize(p * symmetrize(m) * p);
    return TangentVector(std::move(base), std::move(hat));
  }

  static TangentVector zero(LagrangianSubspace base) {
    Matrix hat = Matrix::Zero(base.dim(), base.dim());
    return TangentVector(std::move(base), std::move(hat));
  }

  const LagrangianSubspace& base() const { return base_; }
  const Matrix& hat() const { return hat_; }
  Matrix coords() const { return symmetrize(base_.frame().transpose() * hat_ * base_.frame()); }

  TangentVector scaled(double c) const { return TangentVector(base_, c * hat_); }

 private:
  TangentVector(LagrangianSubspace base, Matrix hat) : base_(std::move(base)), hat_(std::move(hat)) {}

  LagrangianSubspace base_;
  Matrix hat_;
};

/// Orthogonal projector onto range(Q) for an idempotent Q:
///   P = Q Q^T (1 - (Q - Q^T)^2)^{-1}.
/// Note 1 - (Q - Q^T)^2 = (Q + Q^T - 1)^2 is positive definite.
inline Matrix projection_from_idempotent(const Matrix& q, double tol = Tolerances::verification) {
  require_square(q, "projection_from_idempotent");
  require_finite(q, "projection_from_idempotent");
  require((q * q - q).norm() <= tol * (1.0 + q.norm()), ErrorCode::NotIdempotent,
          "projection_from_idempotent: Q^2 != Q");
  const Matrix skew = q - q.transpose();
  const Matrix m = Matrix::Identity(q.rows(), q.cols()) - skew * skew;
  const auto d = sym_eig(symmetrize(m));
  require(d.eigenvalues(0) > 0.0, ErrorCode::Internal, "projection_from_idempotent: 1-(Q-Q*)^2 not invertible");
  const Matrix m_inv = spectral_apply(d, [](double x) { return 1.0 / x; });
  return q * q.transpose() * m_inv;
}

/// Chart coordinate psi in B(L)_s of a subspace W transversal to L^perp.
struct ChartValue {
  LagrangianSubspace base;
  Matrix psi;  // n x n symmetric, in base-frame coordinates
};

/// W = Gr_T with T = pi_1|_W (pi_0|_W)^{-1} : L -> L^perp, psi = J|_{L^perp} T.
/// In the frames F of L and J F of L^perp, psi = -(JF)^T G (F^T G)^{-1}.
inline ChartValue chart_forward(const LagrangianSubspace& l, const LagrangianSubspace& w,
                                double transversal_tol = Tolerances::verification) {
  require(l.dim() == w.dim(), ErrorCode::InvalidInput, "chart_forward: dimension mismatch");
  const Matrix a = l.frame().transpose() * w.frame();
  require(smallest_singular_value(a) > transversal_tol, ErrorCode::NotTransversal,
          "chart_forward: W meets L^perp");
  const Matrix b = l.complement_frame().transpose() * w.frame();
  const Matrix psi = -b * a.inverse();
  return {l, symmetrize(psi)};
}

struct ChartInverse {
  LagrangianSubspace w;
  SymplecticElement f;
};

/// f = 1 - J psi^ P_L with psi^ = F psi F^T; W = f(L), the graph of -J|_L psi.
inline ChartInverse chart_inverse(const LagrangianSubspace& l, const Matrix& psi) {
  require(psi.rows() == l.n() && psi.cols() == l.n(), ErrorCode::InvalidInput, "chart_inverse: psi must be n x n");
  require_finite(psi, "chart_inverse");
  require(asymmetry(psi) <= Tolerances::construction * (1.0 + psi.norm()), ErrorCode::InvalidInput,
          "chart_inverse: psi not symmetric");
  const Matrix j = standard_J(l.n()).matrix();
  const Matrix& frame = l.frame();
  const Matrix psi_hat = frame * symmetrize(psi) * frame.transpose();
  SymplecticElement f(Matrix::Identity(l.dim(), l.dim()) - j * psi_hat * l.projector());
  return {act(f, l), std::move(f)};
}

namespace detail {

/// Matrix of eta : L -> W (restriction to L of the projection W + L^perp -> W)
/// from L-frame coordinates into the ambient space: F - J F psi.
inline Matrix eta_matrix(const LagrangianSubspace& l, const Matrix& psi) {
  return l.frame() - l.complement_frame() * psi;
}

}  // namespace detail

/// d_W phi_L(H) = eta^T H eta, returned in L-frame coordinates.
inline Matrix chart_differential(const LagrangianSubspace& l, const TangentVector& h) {
  const auto chart = chart_forward(l, h.base());
  const Matrix eta = detail::eta_matrix(l, chart.psi);
  return symmetrize(eta.transpose() * h.hat() * eta);
}

/// Inverse of chart_differential: K in L-coordinates -> (eta^{-1})^T K eta^{-1}
/// as a tangent vector at W.
inline TangentVector chart_differential_inverse(const LagrangianSubspace& l, const LagrangianSubspace& w,
                                                const Matrix& k) {
  require(k.rows() == l.n() && k.cols() == l.n(), ErrorCode::InvalidInput,
          "chart_differential_inverse: K must be n x n");
  const auto chart = chart_forward(l, w);
  const Matrix eta = detail::eta_matrix(l, chart.psi);
  // Left inverse of eta that vanishes on W^perp.
  const Matrix eta_pinv = (eta.transpose() * eta).ldlt().solve(eta.transpose());
  return TangentVector::compress(w, eta_pinv.transpose() * symmetrize(k) * eta_pinv);
}

/// Differential of g -> g(L) at g applied to X g: P_{g(L)} J X P_{g(L)}.
inline TangentVector action_differential(const SymplecticElement& g, const LagrangianSubspace& l,
                                         const AlgebraElement& x) {
  require(x.matrix().rows() == l.dim() && g.matrix().rows() == l.dim(), ErrorCode::InvalidInput,
          "action_differential: dimension mismatch");
  const LagrangianSubspace w = act(g, l);
  const Matrix j = standard_J(l.n()).matrix();
  const Matrix& p = w.projector();
  const Matrix hat = p * j * x.matrix() * p;
  return TangentVector::from_hat(w, symmetrize(hat), Tolerances::verification);
}

inline TangentVector action_differential(const LagrangianSubspace& l, const AlgebraElement& x) {
  return action_differential(SymplecticElement::identity(l.n()), l, x);
}

/// Local section of g -> g(L0) near L0: the unitary part of
/// g_L = (1 + eps_L eps_L0) / 2. Requires ||eps_L - eps_L0|| < 2.
inline SymplecticElement cross_section(const LagrangianSubspace& l0, const LagrangianSubspace& l) {
  require(l0.dim() == l.dim(), ErrorCode::InvalidInput, "cross_section: dimension mismatch");
  const Matrix e0 = l0.symmetry();
  const Matrix e = l.symmetry();
  require(operator_norm(e - e0) < 2.0 - 1e-6, ErrorCode::OutOfSectionRadius,
          "cross_section: ||eps_L - eps_L0|| >= 2");
  const Matrix g = 0.5 * (Matrix::Identity(l.dim(), l.dim()) + e * e0);
  return SymplecticElement(polar_decompose(g).u);
}

/// x P_L = P_L x P_L, i.e. x(L) is contained in L.
inline double isotropy_defect(const Matrix& x, const LagrangianSubspace& l) {
  const Matrix& p = l.projector();
  return (x * p - p * x * p).norm();
}

inline bool isotropy_check(const AlgebraElement& x, const LagrangianSubspace& l, double tol) {
  return isotropy_defect(x.matrix(), l) <= tol;
}

struct StrictInclusionReport {
  Eigen::Index n = 0;
  double hs_norm = 0.0;             // ||P_{Gr_I} - P_{L0}||_F
  double corner_block_value = 0.0;  // mean diagonal of the L0 block of the difference
  double corner_block_deviation = 0.0;  // ||corner - value * I||_F
};

/// Compares the graph of the identity with L0 = {0} x R^n. The difference of
/// projectors has Frobenius norm sqrt(n) and a constant -1/2 corner on L0, so
/// it cannot stay Hilbert-Schmidt as n grows.
inline StrictInclusionReport strict_inclusion_demo(Eigen::Index n) {
  require(n >= 1, ErrorCode::InvalidInput, "strict_inclusion_demo: n must be >= 1");
  const auto l0 = LagrangianSubspace::vertical(n);
  Matrix graph(2 * n, n);
  graph << Matrix::Identity(n, n), Matrix::Identity(n, n);
  const auto gr = LagrangianSubspace::from_frame(graph / std::sqrt(2.0));
  const Matrix diff = gr.projector() - l0.projector();
  const Matrix corner = l0.frame().transpose() * diff * l0.frame();
  StrictInclusionReport r;
  r.n = n;
  r.hs_norm = diff.norm();
  r.corner_block_value = corner.diagonal().mean();
  r.corner_block_deviation = (corner - r.corner_block_value * Matrix::Identity(n, n)).norm();
  return r;
}

}  // namespace sympgrass
