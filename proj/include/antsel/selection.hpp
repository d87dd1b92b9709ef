#ifndef ANTSEL_SELECTION_HPP
#define ANTSEL_SELECTION_HPP

#include <vector>

#include "antsel/linalg.hpp"

namespace antsel {

/// MSE-minimising selection problem for one coherence block.
///
/// For a channel vector c (i.i.d., correlated, or an imperfect estimate,
/// whichever the receiver has):
///
///   h_tilde = sigma_x2 * c
///   r_mat   = sigma_x2 * c c^H + sigma_v2 * I
///   l_mat   = chol(r_mat)
///
/// The sparse approximation runs on dictionary L^H and target
/// L^{-1} h_tilde, which is cached here as `target`.
struct SelectionProblem {
  ComplexVector h_tilde;
  ComplexMatrix r_mat;
  ComplexMatrix l_mat;
  ComplexVector target;
  double sigma_x2 = 0.0;
  double sigma_v2 = 0.0;

  Index size() const noexcept { return h_tilde.size(); }
};

/// Sparse combining vector h_s: `weights` has length M with zeros off
/// `support`. `support` is in selection order.
struct SelectionVector {
  ComplexVector weights;
  std::vector<Index> support;
  int k_s = 0;
  bool zero_target = false;
  /// |L^H h_s - L^{-1} h_tilde|_2 after the final iteration.
  double residual_norm = 0.0;
  /// Residual norm before the first iteration and after each one.
  std::vector<double> residual_history;
};

SelectionProblem build_problem(const ComplexVector& channel_est, double sigma_x2,
                               double sigma_v2);

/// Orthogonal matching pursuit with exactly k_s iterations.
///
/// Each iteration picks the unselected column a_j of L^H maximising
/// |a_j^H r| / |a_j|_2 (lowest index on ties), then re-fits the weights on
/// the whole support by least squares. Correlations use the Gram identity
/// A^H r = h_tilde - R[:, S] x_S and |a_j|^2 = R_jj, so an iteration costs
/// O(k M) rather than a full O(M^2) product.
SelectionVector omp_select(const SelectionProblem& problem, int k_s);

/// Brute-force minimiser of the residual over every size-k_s support.
/// Ties go to the lexicographically smallest support. M is capped at 16.
SelectionVector exhaustive_select(const SelectionProblem& problem, int k_s);

inline constexpr int kExhaustiveMaxAntennas = 16;

/// |L^H h_s - L^{-1} h_tilde|_2.
double selection_residual(const SelectionProblem& problem,
                          const ComplexVector& h_s);

/// Receive MSE E|x - h_s^H (c x + v)|^2 expanded term by term.
double mse_direct(const ComplexVector& h_s, const ComplexVector& channel,
                  double sigma_x2, double sigma_v2);

/// The same MSE through the Cholesky factor:
/// sigma_x2 - |L^{-1} h_tilde|^2 + |L^H h_s - L^{-1} h_tilde|^2.
double mse_factored(const ComplexVector& h_s, const SelectionProblem& problem);

}  // namespace antsel

#endif  // ANTSEL_SELECTION_HPP
