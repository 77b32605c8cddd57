#include "kn/cost.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "kn/errors.hpp"

namespace kn {

double actual_cost(const ClosedLoop& loop, const Eigen::VectorXd& x0,
                   const Eigen::VectorXd& alpha, const CostSpec& spec) {
  Eigen::VectorXd x = x0;
  double cost = 0.0;
  double discount = 1.0;
  for (int t = 0; t <= spec.horizon; ++t) {
    const double a = loop.policy.action(x, alpha);
    const double q = x(spec.state_coord);
    cost += discount * (spec.state_weight * q * q + spec.action_weight * a * a);
    if (t == spec.horizon) break;
    x = loop.system.step(x, a);
    discount *= spec.gamma;
  }
  return cost;
}

Eigen::VectorXd interpolate_observable(const Eigen::MatrixXd& gram,
                                       const Eigen::VectorXd& values,
                                       double jitter) {
  if (gram.rows() != gram.cols() || gram.rows() != values.size())
    throw InputError("interpolate_observable: dimension mismatch");
  Eigen::MatrixXd a = gram;
  a.diagonal().array() += jitter;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (ldlt.info() != Eigen::Success)
    throw FitError("interpolate_observable: factorization failed",
                   std::numeric_limits<double>::infinity());
  Eigen::VectorXd c = ldlt.solve(values);
  const double residual = (a * c - values).norm();
  const double scale = values.norm();
  if (scale > 0.0 && !(residual <= 1e-6 * scale)) {
    // One refinement pass before giving up.
    c += ldlt.solve(values - a * c);
    const double again = (a * c - values).norm();
    if (!(again <= 1e-6 * scale))
      throw FitError("interpolate_observable: ill-conditioned system (residual " +
                         std::to_string(again / scale) + " relative)",
                     again / scale);
  }
  return c;
}

CostModel prepare_cost_model(const LearnedOperator& op,
                             const Eigen::VectorXd& action_nodes,
                             const CostSpec& spec) {
  if (action_nodes.size() != op.size())
    throw InputError("cost model: action node count mismatch");
  if (spec.state_coord < 0 || spec.state_coord >= op.data->state_dim())
    throw ConfigError("cost model: state_coord out of range");
  if (spec.gamma < 0.0 || spec.gamma > 1.0)
    throw ConfigError("cost model: gamma must be in [0, 1]");
  if (spec.horizon < 0)
    throw ConfigError("cost model: horizon must be nonnegative");

  CostModel model;
  model.spec = spec;
  const Eigen::VectorXd state_nodes = op.data->successors.col(spec.state_coord);
  model.state_coeffs =
      interpolate_observable(op.grams->g_yy, state_nodes, spec.interp_jitter);
  model.state_products = op.grams->g_yy * model.state_coeffs;
  model.action_coeffs =
      interpolate_observable(op.grams->g_xu, action_nodes, spec.interp_jitter);
  return model;
}

double predicted_cost(const LearnedOperator& op, const CostModel& model,
                      const Eigen::VectorXd& x0, const Eigen::VectorXd& alpha) {
  const CostSpec& spec = model.spec;
  const PolicyEmbedding emb = embed_policy(op, alpha);

  // t = 0: raw-state inner products against both interpolants.
  const Eigen::VectorXd xs =
      (x0.array() / op.data->state_scales.array()).matrix();
  const Eigen::MatrixXd sx = op.data->scaled_states();
  const Eigen::MatrixXd sy = op.data->scaled_successors();
  Eigen::VectorXd b(op.size());
  double state_value = 0.0;
  for (Eigen::Index j = 0; j < op.size(); ++j) {
    b(j) = op.state_kernel.at_distance((sx.row(j).transpose() - xs).norm()) *
           emb.values(j);
    state_value += model.state_coeffs(j) *
                   op.state_kernel.at_distance((sy.row(j).transpose() - xs).norm());
  }

  double cost = 0.0;
  double discount = 1.0;
  FeatureState f;
  for (int t = 0; t <= spec.horizon; ++t) {
    if (t > 0) {
      f.coefficients = op.theta * b;
      f.time_index = t;
      state_value = f.coefficients.dot(model.state_products);
      b = (op.grams->g_xy * f.coefficients).cwiseProduct(emb.values);
    }
    const double action_value = model.action_coeffs.dot(b);
    cost += discount * (spec.state_weight * state_value * state_value +
                        spec.action_weight * action_value * action_value);
    discount *= spec.gamma;
  }
  return cost;
}

double cost_bound(double beta, double c_eta, double c_q, double c_r,
                  double gamma, int tau) {
  if (beta < 0.0 || c_eta < 0.0 || c_q < 0.0 || c_r < 0.0 || tau < 0)
    throw ConfigError("cost bound: arguments must be nonnegative");
  double sum = 0.0;
  double discount = 1.0;
  for (int t = 0; t <= tau; ++t) {
    const double drift = multistep_bound(beta, c_eta, t);
    const double bt = std::pow(beta, t);
    sum += discount * (c_q + c_r) * (2.0 * drift * bt + drift * drift);
    discount *= gamma;
  }
  return sum;
}

double cost_bound_cap(double beta, double c_eta, double c_q, double c_r,
                      double gamma) {
  if (!(beta > 1.0)) throw ConfigError("cost bound cap: requires beta > 1");
  if (!(gamma * beta * beta < 1.0))
    throw ConfigError("cost bound cap: requires gamma beta^2 < 1");
  const double d = beta - 1.0;
  return (c_q + c_r) / (1.0 - gamma * beta * beta) *
         (2.0 * c_eta / d + c_eta * c_eta / (d * d));
}

double cost_bound_majorant_sum(double beta, double c_eta, double c_q,
                               double c_r, double gamma, int tau) {
  if (!(beta > 1.0)) throw ConfigError("cost bound majorant: requires beta > 1");
  const double d = beta - 1.0;
  const double per_term = (c_q + c_r) * (2.0 * c_eta / d + c_eta * c_eta / (d * d));
  double sum = 0.0;
  double ratio = 1.0;  // (gamma beta^2)^t
  for (int t = 0; t <= tau; ++t) {
    sum += per_term * ratio;
    ratio *= gamma * beta * beta;
  }
  return sum;
}

}  // namespace kn
