#pragma once

#include <Eigen/Core>
#include <vector>

#include "kn/learning.hpp"
#include "kn/simulators.hpp"

namespace kn {

// Precomputed policy factor of the product kernel: values[j] = vk(a_j, a).
struct PolicyEmbedding {
  Eigen::VectorXd values;
};

// Coefficients over the successor features {phi_{y_i}} at time t >= 1.
// Time 0 is the raw state and never passes through this form.
struct FeatureState {
  Eigen::VectorXd coefficients;
  int time_index = 1;
  bool in_coverage = true;
};

PolicyEmbedding embed_policy(const LearnedOperator& op,
                             const Eigen::VectorXd& alpha);

// One operator application from a raw state (t = 0 -> 1):
//   b[j] = kappa(x_j, x) vu[j],  c' = Theta b.
// All-zero b marks the result as out of kernel coverage.
FeatureState predict_step(const LearnedOperator& op, const Eigen::VectorXd& x,
                          const PolicyEmbedding& policy);

// One operator application from a feature (t -> t+1):
//   b = (G_xy c) .* vu,  c' = Theta b.
FeatureState predict_step(const LearnedOperator& op, const FeatureState& state,
                          const PolicyEmbedding& policy);

// Interpolating the identity on the successor sample collapses against G_yy:
// the readout is Y' c.
Eigen::VectorXd readout_state(const LearnedOperator& op,
                              const FeatureState& state);

// c . node_values for an observable with the given values at {y_i}.
double readout_observable(const LearnedOperator& op, const FeatureState& state,
                          const Eigen::VectorXd& node_values);

struct Trajectory {
  Eigen::MatrixXd states;  // horizon x d_x, predicted states at t = 1..T
  bool in_coverage = true;
};

Trajectory predict_trajectory(const LearnedOperator& op,
                              const Eigen::VectorXd& x0,
                              const Eigen::VectorXd& alpha, int horizon);

// Per-point, per-horizon absolute state prediction errors against the closed
// loop. Rows follow the order of test_points, horizons fastest.
struct ErrorSurface {
  std::vector<int> horizons;
  Eigen::MatrixXd rows;  // columns: x..., alpha..., horizon, |err| per coord
  Eigen::Index state_dim = 0;
  Eigen::Index param_dim = 0;
};

ErrorSurface error_surface(
    const LearnedOperator& op, const ClosedLoop& loop,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& test_points,
    const std::vector<int>& horizons);

// Serial reference for the parallel error_surface.
ErrorSurface error_surface_serial(
    const LearnedOperator& op, const ClosedLoop& loop,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& test_points,
    const std::vector<int>& horizons);

// Multi-step feature error bound (1 - beta^t) / (1 - beta) * c_eta, with the
// t * c_eta limit at beta = 1.
double multistep_bound(double beta, double c_eta, int t);

// Uniform-in-time cap c_eta / (1 - beta), valid for beta < 1.
double multistep_cap(double beta, double c_eta);

}  // namespace kn
