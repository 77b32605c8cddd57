#pragma once

#include <Eigen/Core>

#include "kn/prediction.hpp"

namespace kn {

// Discounted sum of squared linear observables:
//   sum_{t=0}^{horizon} gamma^t (state_weight * x[state_coord]^2
//                                + action_weight * u(x)^2).
struct CostSpec {
  double gamma = 1.0;
  int horizon = 0;
  int state_coord = 0;
  double state_weight = 1.0;
  double action_weight = 1.0;
  double interp_jitter = 1e-10;
};

// Ground-truth accumulated cost by simulating the closed loop.
double actual_cost(const ClosedLoop& loop, const Eigen::VectorXd& x0,
                   const Eigen::VectorXd& alpha, const CostSpec& spec);

// Coefficients c with (gram + jitter I) c = values. Throws FitError with the
// condition estimate when the system is too ill-conditioned.
Eigen::VectorXd interpolate_observable(const Eigen::MatrixXd& gram,
                                       const Eigen::VectorXd& values,
                                       double jitter);

// Interpolated stage observables prepared once per operator and cost spec:
// the state observable on the successor nodes, the action observable on the
// training (x, u) pairs.
struct CostModel {
  Eigen::VectorXd state_coeffs;    // interpolation of y[state_coord] at {y_i}
  Eigen::VectorXd state_products;  // G_yy * state_coeffs
  Eigen::VectorXd action_coeffs;   // interpolation of a_i at {(x_i, u_i)}
  CostSpec spec;
};

// action_nodes are the training actions u_i(x_i).
CostModel prepare_cost_model(const LearnedOperator& op,
                             const Eigen::VectorXd& action_nodes,
                             const CostSpec& spec);

// Accumulated cost predicted by propagating features under the operator; the
// t = 0 stage uses the raw state.
double predicted_cost(const LearnedOperator& op, const CostModel& model,
                      const Eigen::VectorXd& x0, const Eigen::VectorXd& alpha);

// Accumulated-cost error bound: finite-horizon sum of
//   gamma^t (c_Q + c_R) [ 2 c_eta beta^t (1-beta^t)/(1-beta)
//                         + (c_eta (1-beta^t)/(1-beta))^2 ].
double cost_bound(double beta, double c_eta, double c_q, double c_r,
                  double gamma, int tau);

// Closed form of the geometric majorant (beta^t - 1 relaxed to beta^t),
// valid for beta > 1 and gamma beta^2 < 1:
//   (c_Q + c_R)/(1 - gamma beta^2) [ 2 c_eta/(beta-1) + c_eta^2/(beta-1)^2 ].
double cost_bound_cap(double beta, double c_eta, double c_q, double c_r,
                      double gamma);

// Finite partial sum of the same majorant series; converges to the cap.
double cost_bound_majorant_sum(double beta, double c_eta, double c_q,
                               double c_r, double gamma, int tau);

}  // namespace kn
