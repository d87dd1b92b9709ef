#include "antsel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "antsel/error.hpp"

namespace antsel::linalg {
namespace {

constexpr double kReorthRatio = 0.7071067811865476;

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(Errc::kDimensionMismatch,
                std::string(what) + " must be a non-empty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_length(const ComplexVector& v, Index n, const char* what) {
  if (v.size() != n) {
    throw Error(Errc::kDimensionMismatch,
                std::string(what) + " has length " + std::to_string(v.size()) +
                    ", expected " + std::to_string(n));
  }
}

bool is_diagonal(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = j; i < m.rows(); ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst <= rel_tol * scale;
}

ComplexMatrix cholesky(const ComplexMatrix& r) {
  require_square(r, "cholesky input");
  if (!r.allFinite()) {
    throw Error(Errc::kInvalidParams, "cholesky input has non-finite entries");
  }
  if (!is_hermitian(r)) {
    throw Error(Errc::kNotHermitian, "cholesky input is not Hermitian");
  }

  const Index n = r.rows();
  const double max_diag = r.diagonal().real().maxCoeff();
  const double pivot_floor = kCholeskyPivotTol * std::max(max_diag, 0.0);

  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    // Column j below and including the diagonal, left-looking update.
    ComplexVector col = r.col(j).tail(n - j);
    if (j > 0) {
      col.noalias() -= l.bottomLeftCorner(n - j, j) * l.row(j).head(j).adjoint();
    }
    const double pivot = col(0).real();
    if (!(pivot > pivot_floor)) {
      throw Error(Errc::kNotPositiveDefinite,
                  "pivot " + std::to_string(pivot) + " at column " +
                      std::to_string(j) + " is not above " +
                      std::to_string(pivot_floor));
    }
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    l.col(j).tail(n - j - 1) = col.tail(n - j - 1) / d;
  }
  return l;
}

ComplexMatrix cholesky_identity_rank1(double d, const ComplexVector& x) {
  const Index n = x.size();
  if (n < 1) throw Error(Errc::kDimensionMismatch, "rank-one Cholesky needs a non-empty vector");
  if (!std::isfinite(d) || !x.allFinite()) {
    throw Error(Errc::kInvalidParams, "rank-one Cholesky input has non-finite entries");
  }
  const double pivot_floor = kCholeskyPivotTol * std::max(d + x.cwiseAbs2().maxCoeff(), 0.0);

  // The trailing Schur complement stays d I + y y^H with y = scale * x.
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  double scale = 1.0;
  for (Index k = 0; k < n; ++k) {
    const Complex yk = scale * x(k);
    const double pivot = d + std::norm(yk);
    if (!(pivot > pivot_floor)) {
      throw Error(Errc::kNotPositiveDefinite,
                  "pivot " + std::to_string(pivot) + " at column " + std::to_string(k) +
                      " is not above " + std::to_string(pivot_floor));
    }
    const double root = std::sqrt(pivot);
    l(k, k) = root;
    if (k + 1 < n) l.col(k).tail(n - k - 1) = x.tail(n - k - 1) * (scale * std::conj(yk) / root);
    scale *= std::sqrt(std::max(d, 0.0) / pivot);
  }
  return l;
}

ComplexVector forward_solve(const ComplexMatrix& l, const ComplexVector& b) {
  require_square(l, "forward_solve matrix");
  require_length(b, l.rows(), "forward_solve rhs");
  const Index n = l.rows();
  ComplexVector y = b;
  for (Index j = 0; j < n; ++j) {
    if (l(j, j) == Complex(0.0, 0.0)) {
      throw Error(Errc::kSingularMatrix,
                  "zero diagonal at row " + std::to_string(j));
    }
    y(j) /= l(j, j);
    if (j + 1 < n) y.tail(n - j - 1) -= l.col(j).tail(n - j - 1) * y(j);
  }
  return y;
}

ComplexVector adjoint_backward_solve(const ComplexMatrix& l,
                                     const ComplexVector& b) {
  require_square(l, "adjoint_backward_solve matrix");
  require_length(b, l.rows(), "adjoint_backward_solve rhs");
  const Index n = l.rows();
  ComplexVector x = b;
  for (Index i = n - 1; i >= 0; --i) {
    if (l(i, i) == Complex(0.0, 0.0)) {
      throw Error(Errc::kSingularMatrix,
                  "zero diagonal at row " + std::to_string(i));
    }
    Complex acc = x(i);
    if (i + 1 < n) {
      acc -= l.col(i).tail(n - i - 1).dot(x.tail(n - i - 1));
    }
    x(i) = acc / std::conj(l(i, i));
  }
  return x;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& p) {
  require_square(p, "hermitian_sqrt input");
  if (!p.allFinite()) {
    throw Error(Errc::kInvalidParams, "hermitian_sqrt input has non-finite entries");
  }
  if (!is_hermitian(p)) {
    throw Error(Errc::kNotHermitian, "hermitian_sqrt input is not Hermitian");
  }

  auto check_eigenvalue = [](double lambda, double norm2) {
    if (lambda < -kPsdClipTol * norm2) {
      throw Error(Errc::kNotPsd,
                  "eigenvalue " + std::to_string(lambda) + " is below the clip threshold");
    }
    return std::max(lambda, 0.0);
  };

  const Index n = p.rows();
  if (is_diagonal(p)) {
    const Eigen::VectorXd d = p.diagonal().real();
    const double norm2 = d.cwiseAbs().maxCoeff();
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) s(i, i) = std::sqrt(check_eigenvalue(d(i), norm2));
    return s;
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(p);
  if (eig.info() != Eigen::Success) {
    throw Error(Errc::kNotPsd, "eigendecomposition did not converge");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double norm2 = lambda.cwiseAbs().maxCoeff();
  Eigen::VectorXd root(n);
  for (Index i = 0; i < n; ++i) root(i) = std::sqrt(check_eigenvalue(lambda(i), norm2));

  const ComplexMatrix& v = eig.eigenvectors();
  ComplexMatrix s = v * root.cast<Complex>().asDiagonal() * v.adjoint();
  // Round-off leaves a tiny anti-Hermitian part.
  return (s + s.adjoint()) * 0.5;
}

ComplexVector ls_solve(const ComplexMatrix& a, const ComplexVector& b) {
  require_length(b, a.rows(), "ls_solve rhs");
  if (a.cols() > a.rows()) {
    throw Error(Errc::kRankDeficient,
                "more columns (" + std::to_string(a.cols()) + ") than rows (" +
                    std::to_string(a.rows()) + ")");
  }
  if (a.cols() == 0) return ComplexVector(0);

  IncrementalQr qr(a.rows(), a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    if (qr.append(a.col(j)) == 0.0) {
      throw Error(Errc::kRankDeficient,
                  "column " + std::to_string(j) + " is dependent on earlier columns");
    }
  }
  if (qr.condition_estimate() > kMaxCondition) {
    throw Error(Errc::kRankDeficient, "condition estimate exceeds 1e12");
  }
  return qr.solve_r(qr.q().adjoint() * b);
}

IncrementalQr::IncrementalQr(Index rows, Index max_cols)
    : q_(rows, max_cols), r_(ComplexMatrix::Zero(max_cols, max_cols)) {}

double IncrementalQr::append(const ComplexVector& column) {
  if (column.size() != q_.rows()) {
    throw Error(Errc::kDimensionMismatch, "IncrementalQr column length mismatch");
  }
  if (cols_ >= q_.cols()) {
    throw Error(Errc::kInvalidParams, "IncrementalQr capacity exhausted");
  }
  const double norm0 = column.norm();
  if (norm0 == 0.0) return 0.0;

  ComplexVector v = column;
  ComplexVector coeffs = ComplexVector::Zero(cols_);
  if (cols_ > 0) {
    const auto q = q_.leftCols(cols_);
    // Second pass only when the first one cancelled most of the column.
    for (int pass = 0; pass < 2; ++pass) {
      const double before = v.norm();
      const ComplexVector c = q.adjoint() * v;
      v.noalias() -= q * c;
      coeffs += c;
      if (v.norm() > kReorthRatio * before) break;
    }
  }
  const double diag = v.norm();
  if (diag <= 4.0 * Eigen::NumTraits<double>::epsilon() * norm0) return 0.0;

  q_.col(cols_) = v / diag;
  r_.col(cols_).head(cols_) = coeffs;
  r_(cols_, cols_) = diag;
  ++cols_;
  return diag;
}

ComplexVector IncrementalQr::solve_r(const ComplexVector& y) const {
  if (y.size() != cols_) {
    throw Error(Errc::kDimensionMismatch, "IncrementalQr::solve_r length mismatch");
  }
  return r_.topLeftCorner(cols_, cols_).triangularView<Eigen::Upper>().solve(y);
}

double IncrementalQr::condition_estimate() const {
  if (cols_ == 0) return 1.0;
  const Eigen::VectorXd d = r_.diagonal().head(cols_).real().cwiseAbs();
  return d.maxCoeff() / d.minCoeff();
}

}  // namespace antsel::linalg
