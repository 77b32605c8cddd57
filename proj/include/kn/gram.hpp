#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "kn/kernels.hpp"

namespace kn {

// m snapshot triples (x_i, alpha_i, y_i) with y_i = f(x_i, u(x_i; alpha_i)).
// state_scales are per-coordinate divisors applied before kernel distances
// (all ones by default).
struct SnapshotDataset {
  Eigen::MatrixXd states;         // m x d_x
  Eigen::MatrixXd policy_params;  // m x d_p
  Eigen::MatrixXd successors;     // m x d_x
  Eigen::VectorXd state_scales;   // d_x

  SnapshotDataset() = default;
  SnapshotDataset(Eigen::MatrixXd states, Eigen::MatrixXd policy_params,
                  Eigen::MatrixXd successors);
  SnapshotDataset(Eigen::MatrixXd states, Eigen::MatrixXd policy_params,
                  Eigen::MatrixXd successors, Eigen::VectorXd state_scales);

  Eigen::Index size() const { return states.rows(); }
  Eigen::Index state_dim() const { return states.cols(); }
  Eigen::Index param_dim() const { return policy_params.cols(); }

  // Rows divided columnwise by state_scales.
  Eigen::MatrixXd scaled_states() const;
  Eigen::MatrixXd scaled_successors() const;

  void validate() const;
};

// Pairwise kernel matrices over one dataset.
//   g_xu(i,j) = kappa(x_i,x_j) * varkappa(a_i,a_j)   (symmetric, unit diagonal)
//   g_yy(i,j) = kappa(y_i,y_j)                       (symmetric, unit diagonal)
//   g_xy(j,i) = kappa(x_j,y_i)                       (generally nonsymmetric)
struct GramSet {
  Eigen::MatrixXd g_xu;
  Eigen::MatrixXd g_yy;
  Eigen::MatrixXd g_xy;
};

// Parallel over rows; per-entry results are pure functions of the inputs, so
// the matrices are bitwise independent of the thread count.
GramSet assemble(const SnapshotDataset& data, const RadialKernel& kx,
                 const PolicyKernel& ku);

// Plain triple-loop reference used by tests and the benchmark.
GramSet assemble_serial(const SnapshotDataset& data, const RadialKernel& kx,
                        const PolicyKernel& ku);

// Sum of all entries divided by m^2 (the benchmark's "sparsity" metric).
double sparsity(const Eigen::MatrixXd& m);

// Fraction of entries that are exactly zero, reported alongside sparsity().
double zero_fraction(const Eigen::MatrixXd& m);

// Lower estimate of sup over candidates of the distance to the sample:
//   max over candidates of min over samples of
//     ||x - x_i|| (scaled) + policy_weight * ||a - a_i||.
double fill_distance(const SnapshotDataset& data,
                     const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& candidates,
                     double policy_weight);

}  // namespace kn
