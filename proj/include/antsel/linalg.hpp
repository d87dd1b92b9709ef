#ifndef ANTSEL_LINALG_HPP
#define ANTSEL_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

namespace antsel {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

namespace linalg {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kCholeskyPivotTol = 1e-12;
inline constexpr double kPsdClipTol = 1e-10;
inline constexpr double kMaxCondition = 1e12;

/// Lower-triangular L with positive real diagonal such that L L^H = R.
/// Throws NotPositiveDefinite when a pivot drops to 1e-12 of the largest
/// diagonal entry, NotHermitian when R is not conjugate-symmetric.
ComplexMatrix cholesky(const ComplexMatrix& r);

/// Cholesky factor of d I + x x^H in O(M^2), same pivot rule as cholesky().
ComplexMatrix cholesky_identity_rank1(double d, const ComplexVector& x);

/// Solves L y = b for lower-triangular L.
ComplexVector forward_solve(const ComplexMatrix& l, const ComplexVector& b);

/// Solves L^H x = b for lower-triangular L (the second half of a Cholesky
/// solve).
ComplexVector adjoint_backward_solve(const ComplexMatrix& l,
                                     const ComplexVector& b);

/// Hermitian PSD square root via eigendecomposition. Eigenvalues in
/// [-1e-10 * |P|_2, 0) are clipped to zero; anything more negative is NotPSD.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& p);

/// Least-squares solution of min |A x - b|_2 for full-column-rank A.
ComplexVector ls_solve(const ComplexMatrix& a, const ComplexVector& b);

// Thin QR built one column at a time with classical Gram-Schmidt plus one
// reorthogonalisation pass. Used by ls_solve and by the greedy pursuit,
// which only ever grows its support.
class IncrementalQr {
 public:
  explicit IncrementalQr(Index rows, Index max_cols);

  /// Appends a column. Returns the new diagonal entry of R; zero means the
  /// column lies in the span of the previous ones and was not added.
  double append(const ComplexVector& column);

  Index rows() const noexcept { return q_.rows(); }
  Index cols() const noexcept { return cols_; }

  auto q() const { return q_.leftCols(cols_); }
  auto r() const { return r_.topLeftCorner(cols_, cols_); }
  auto q_col(Index j) const { return q_.col(j); }

  /// Solves R x = y for the current upper-triangular factor.
  ComplexVector solve_r(const ComplexVector& y) const;

  /// max |r_jj| / min |r_jj|, a cheap lower bound on cond(A).
  double condition_estimate() const;

 private:
  ComplexMatrix q_;
  ComplexMatrix r_;
  Index cols_ = 0;
};

bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTol);

}  // namespace linalg
}  // namespace antsel

#endif  // ANTSEL_LINALG_HPP
