#pragma once

#include <Eigen/Core>
#include <memory>
#include <utility>

#include "kn/gram.hpp"
#include "kn/kernels.hpp"

namespace kn {

struct FitMethod {
  enum class Kind { KernelEdmd, ReducedRank };
  Kind kind = Kind::KernelEdmd;
  double jitter = 0.0;  // KernelEdmd
  double beta = 0.0;    // ReducedRank
  int rank = 0;         // ReducedRank
};

// Finite-rank operator sum_ij theta(i,j) phi_{y_i} x phibar_{(x_j,u_j)} over
// the training snapshots. Immutable after fitting.
struct LearnedOperator {
  Eigen::MatrixXd theta;  // m x m
  std::shared_ptr<const SnapshotDataset> data;
  std::shared_ptr<const GramSet> grams;
  RadialKernel state_kernel;
  PolicyKernel policy_kernel;
  FitMethod method;

  Eigen::Index size() const { return theta.rows(); }
};

// Top eigenpairs of the reduced-rank generalized eigenproblem
//   (1/m^2) G_yy G_xu v = s^2 ((1/m) G_xu + beta I) v,
// eigenvalues descending, eigenvectors normalized to
//   v' (G_xu/m) (G_xu/m + beta I) v = 1.
struct RrrSolution {
  Eigen::VectorXd eigenvalues;   // r, descending
  Eigen::MatrixXd eigenvectors;  // m x r
};

// Scale-following jitter default for near-singular Wendland grams.
double default_jitter(const Eigen::MatrixXd& gram);

// Largest eigenvalue of a symmetric matrix by power iteration
// (deterministic fixed start).
double largest_eigenvalue(const Eigen::MatrixXd& sym);

// Theta solves (G_xu + jitter I) Theta = I via LDLT with iterative
// refinement. Throws FitError when the condition estimate exceeds 1e14.
LearnedOperator fit_kernel_edmd(std::shared_ptr<const SnapshotDataset> data,
                                std::shared_ptr<const GramSet> grams,
                                const RadialKernel& kx, const PolicyKernel& ku,
                                double jitter);

// Reduced-rank regression: Theta = (1/m) V V' G_xu from the top-r eigenpairs.
// Throws FitError on genuinely complex or defective eigenpairs.
std::pair<LearnedOperator, RrrSolution> fit_reduced_rank(
    std::shared_ptr<const SnapshotDataset> data,
    std::shared_ptr<const GramSet> grams, const RadialKernel& kx,
    const PolicyKernel& ku, double beta, int rank);

// Probability 1-delta generalization gap of the rank-r fit with
// Hilbert-Schmidt budget beta:
//   (1/m) log(6/d) + sqrt((8/m) log(6/d))
//   + beta (beta + 2 sqrt(r)) ((6/m) log(12 m^2/d) + sqrt((9/m) log(12 m^2/d))).
double generalization_bound(int m, double delta, double beta, int rank);

// (1/m) sum_i || phi_{y_i} - That phibar_{(x_i,u_i)} ||^2 expanded in Gram
// entries.
double empirical_loss(const LearnedOperator& op);

// || That ||_HS^2 = trace(Theta' G_yy Theta G_xu).
double hs_norm_squared(const LearnedOperator& op);

}  // namespace kn
