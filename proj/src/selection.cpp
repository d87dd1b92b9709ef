#include "antsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "antsel/error.hpp"

namespace antsel {
namespace {

void require_sparsity(const SelectionProblem& problem, int k_s) {
  if (k_s < 1 || k_s > problem.size()) {
    throw Error(Errc::kInvalidSparsity,
                "k_s must lie in [1, " + std::to_string(problem.size()) +
                    "], got " + std::to_string(k_s));
  }
}

// Column j of the dictionary L^H; only its first j + 1 entries are nonzero.
ComplexVector dictionary_column(const ComplexMatrix& l, Index j) {
  ComplexVector a = ComplexVector::Zero(l.rows());
  a.head(j + 1) = l.row(j).head(j + 1).adjoint();
  return a;
}

SelectionVector zero_selection(const SelectionProblem& problem, int k_s) {
  SelectionVector out;
  out.weights = ComplexVector::Zero(problem.size());
  out.k_s = k_s;
  out.zero_target = true;
  out.residual_norm = 0.0;
  out.residual_history = {0.0};
  return out;
}

}  // namespace

SelectionProblem build_problem(const ComplexVector& channel_est, double sigma_x2,
                               double sigma_v2) {
  if (channel_est.size() < 1) {
    throw Error(Errc::kDimensionMismatch, "channel vector is empty");
  }
  if (!(sigma_x2 >= 0.0) || !std::isfinite(sigma_x2)) {
    throw Error(Errc::kInvalidVariance,
                "sigma_x2 must be >= 0, got " + std::to_string(sigma_x2));
  }
  // sigma_v2 == 0 is let through on purpose: Cholesky then reports the
  // rank-1 matrix as NotPositiveDefinite.
  if (!(sigma_v2 >= 0.0) || !std::isfinite(sigma_v2)) {
    throw Error(Errc::kInvalidVariance,
                "sigma_v2 must be > 0, got " + std::to_string(sigma_v2));
  }

  SelectionProblem p;
  p.sigma_x2 = sigma_x2;
  p.sigma_v2 = sigma_v2;
  p.h_tilde = sigma_x2 * channel_est;
  p.r_mat = sigma_x2 * (channel_est * channel_est.adjoint());
  p.r_mat.diagonal().array() += sigma_v2;
  // R is a scaled identity plus a rank-one term, so L comes in O(M^2).
  p.l_mat = linalg::cholesky_identity_rank1(sigma_v2, std::sqrt(sigma_x2) * channel_est);
  p.target = linalg::forward_solve(p.l_mat, p.h_tilde);
  return p;
}

SelectionVector omp_select(const SelectionProblem& problem, int k_s) {
  require_sparsity(problem, k_s);
  const Index m = problem.size();
  const double target_norm = problem.target.norm();
  if (target_norm == 0.0) return zero_selection(problem, k_s);

  SelectionVector out;
  out.k_s = k_s;
  out.weights = ComplexVector::Zero(m);
  out.support.reserve(k_s);
  out.residual_history.reserve(k_s + 1);
  out.residual_history.push_back(target_norm);

  const Eigen::VectorXd col_norm = problem.r_mat.diagonal().real().cwiseSqrt();
  std::vector<char> selected(m, 0);

  linalg::IncrementalQr qr(m, k_s);
  ComplexVector residual = problem.target;
  ComplexVector projections(k_s);
  ComplexVector coeffs;
  // A^H r with r = target is L L^{-1} h_tilde = h_tilde.
  ComplexVector correlation = problem.h_tilde;

  for (int it = 0; it < k_s; ++it) {
    Index best = -1;
    double best_score = -1.0;
    for (Index j = 0; j < m; ++j) {
      if (selected[j]) continue;
      const double score = std::abs(correlation(j)) / col_norm(j);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }

    if (qr.append(dictionary_column(problem.l_mat, best)) == 0.0) {
      throw Error(Errc::kRankDeficient,
                  "dictionary column " + std::to_string(best) +
                      " is dependent on the current support");
    }
    selected[best] = 1;
    out.support.push_back(best);

    const auto q = qr.q_col(it);
    projections(it) = q.dot(residual);
    residual -= q * projections(it);
    coeffs = qr.solve_r(projections.head(it + 1));

    correlation = problem.h_tilde;
    for (int s = 0; s <= it; ++s) {
      correlation -= problem.r_mat.col(out.support[s]) * coeffs(s);
    }
    out.residual_history.push_back(residual.norm());
  }

  for (int s = 0; s < k_s; ++s) out.weights(out.support[s]) = coeffs(s);
  out.residual_norm = out.residual_history.back();
  return out;
}

SelectionVector exhaustive_select(const SelectionProblem& problem, int k_s) {
  require_sparsity(problem, k_s);
  const Index m = problem.size();
  if (m > kExhaustiveMaxAntennas) {
    throw Error(Errc::kTooLarge,
                "exhaustive search is limited to M <= 16, got " + std::to_string(m));
  }
  if (problem.target.norm() == 0.0) return zero_selection(problem, k_s);

  const ComplexMatrix dictionary = problem.l_mat.adjoint();
  // Lexicographic order of supports: mask with the first k_s positions set,
  // stepped with prev_permutation.
  std::vector<char> mask(m, 0);
  std::fill(mask.begin(), mask.begin() + k_s, 1);

  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<Index> best_support;
  ComplexVector best_coeffs;
  ComplexMatrix sub(m, k_s);
  std::vector<Index> support(k_s);
  do {
    for (Index j = 0, c = 0; j < m; ++j) {
      if (mask[j]) {
        support[c] = j;
        sub.col(c++) = dictionary.col(j);
      }
    }
    const ComplexVector x = linalg::ls_solve(sub, problem.target);
    const double res = (sub * x - problem.target).norm();
    if (res < best_residual) {
      best_residual = res;
      best_support = support;
      best_coeffs = x;
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));

  SelectionVector out;
  out.k_s = k_s;
  out.weights = ComplexVector::Zero(m);
  out.support = best_support;
  for (int s = 0; s < k_s; ++s) out.weights(best_support[s]) = best_coeffs(s);
  out.residual_norm = best_residual;
  out.residual_history = {problem.target.norm(), best_residual};
  return out;
}

double selection_residual(const SelectionProblem& problem,
                          const ComplexVector& h_s) {
  if (h_s.size() != problem.size()) {
    throw Error(Errc::kDimensionMismatch, "weight vector length mismatch");
  }
  return (problem.l_mat.adjoint() * h_s - problem.target).norm();
}

double mse_direct(const ComplexVector& h_s, const ComplexVector& channel,
                  double sigma_x2, double sigma_v2) {
  if (h_s.size() != channel.size()) {
    throw Error(Errc::kDimensionMismatch,
                "h_s has length " + std::to_string(h_s.size()) +
                    ", channel has length " + std::to_string(channel.size()));
  }
  const Complex hs_c = h_s.dot(channel);  // h_s^H c
  const Complex c_hs = channel.dot(h_s);  // c^H h_s
  const ComplexMatrix signal_cov = sigma_x2 * (channel * channel.adjoint());
  const Complex quad = h_s.dot(signal_cov * h_s);
  const Complex noise = sigma_v2 * h_s.dot(h_s);

  const Complex mse = sigma_x2 - hs_c * sigma_x2 - sigma_x2 * c_hs + quad + noise;
  const double scale = sigma_x2 + 2.0 * sigma_x2 * std::abs(hs_c) +
                       std::abs(quad) + std::abs(noise);
  if (std::abs(mse.imag()) > 1e-12 * std::max(scale, 1.0)) {
    throw std::logic_error("mse_direct: imaginary part " +
                           std::to_string(mse.imag()) + " is not round-off");
  }
  return mse.real();
}

double mse_factored(const ComplexVector& h_s, const SelectionProblem& problem) {
  if (h_s.size() != problem.size()) {
    throw Error(Errc::kDimensionMismatch, "weight vector length mismatch");
  }
  const double fit = (problem.l_mat.adjoint() * h_s - problem.target).squaredNorm();
  return problem.sigma_x2 - problem.target.squaredNorm() + fit;
}

}  // namespace antsel
