#include "kn/prediction.hpp"

#include <algorithm>
#include <cmath>

#include "kn/errors.hpp"
#include "kn/parallel.hpp"

namespace kn {

PolicyEmbedding embed_policy(const LearnedOperator& op,
                             const Eigen::VectorXd& alpha) {
  if (alpha.size() != op.data->param_dim())
    throw InputError("embed_policy: parameter dimension mismatch");
  const Eigen::MatrixXd& params = op.data->policy_params;
  Eigen::VectorXd v(params.rows());
  for (Eigen::Index j = 0; j < params.rows(); ++j)
    v(j) = op.policy_kernel.at_squared_distance(
        (params.row(j).transpose() - alpha).squaredNorm());
  return PolicyEmbedding{std::move(v)};
}

namespace {

FeatureState apply_operator(const LearnedOperator& op, Eigen::VectorXd b,
                            int next_time, bool was_in_coverage) {
  const bool covered = was_in_coverage && (b.array() != 0.0).any();
  FeatureState next;
  next.coefficients = op.theta * b;
  next.time_index = next_time;
  next.in_coverage = covered;
  return next;
}

}  // namespace

FeatureState predict_step(const LearnedOperator& op, const Eigen::VectorXd& x,
                          const PolicyEmbedding& policy) {
  if (x.size() != op.data->state_dim())
    throw InputError("predict_step: state dimension mismatch");
  const Eigen::VectorXd xs =
      (x.array() / op.data->state_scales.array()).matrix();
  const Eigen::MatrixXd scaled = op.data->scaled_states();
  Eigen::VectorXd b(op.size());
  for (Eigen::Index j = 0; j < op.size(); ++j)
    b(j) = op.state_kernel.at_distance((scaled.row(j).transpose() - xs).norm()) *
           policy.values(j);
  return apply_operator(op, std::move(b), 1, true);
}

FeatureState predict_step(const LearnedOperator& op, const FeatureState& state,
                          const PolicyEmbedding& policy) {
  if (state.coefficients.size() != op.size())
    throw InputError("predict_step: feature length mismatch");
  Eigen::VectorXd b =
      (op.grams->g_xy * state.coefficients).cwiseProduct(policy.values);
  return apply_operator(op, std::move(b), state.time_index + 1,
                        state.in_coverage);
}

Eigen::VectorXd readout_state(const LearnedOperator& op,
                              const FeatureState& state) {
  return op.data->successors.transpose() * state.coefficients;
}

double readout_observable(const LearnedOperator& op, const FeatureState& state,
                          const Eigen::VectorXd& node_values) {
  if (node_values.size() != op.size())
    throw InputError("readout_observable: node values length mismatch");
  return state.coefficients.dot(node_values);
}

Trajectory predict_trajectory(const LearnedOperator& op,
                              const Eigen::VectorXd& x0,
                              const Eigen::VectorXd& alpha, int horizon) {
  const PolicyEmbedding emb = embed_policy(op, alpha);
  Trajectory out;
  out.states.resize(horizon, op.data->state_dim());
  FeatureState f = predict_step(op, x0, emb);
  for (int t = 0; t < horizon; ++t) {
    if (t > 0) f = predict_step(op, f, emb);
    out.states.row(t) = readout_state(op, f);
  }
  out.in_coverage = f.in_coverage;
  return out;
}

namespace {

ErrorSurface error_surface_impl(
    const LearnedOperator& op, const ClosedLoop& loop,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& test_points,
    const std::vector<int>& horizons, bool parallel) {
  const Eigen::Index dx = op.data->state_dim();
  const Eigen::Index dp = op.data->param_dim();
  const int max_h = horizons.empty()
                        ? 0
                        : *std::max_element(horizons.begin(), horizons.end());

  ErrorSurface surf;
  surf.horizons = horizons;
  surf.state_dim = dx;
  surf.param_dim = dp;
  surf.rows.resize(static_cast<Eigen::Index>(test_points.size()) *
                       static_cast<Eigen::Index>(horizons.size()),
                   dx + dp + 1 + dx);

  auto run_point = [&](std::ptrdiff_t p) {
    const auto& [x0, alpha] = test_points[static_cast<size_t>(p)];
    const Eigen::MatrixXd truth = loop.simulate(x0, alpha, max_h);
    const Trajectory pred = predict_trajectory(op, x0, alpha, max_h);
    for (size_t h = 0; h < horizons.size(); ++h) {
      const int t = horizons[h];
      Eigen::VectorXd row(dx + dp + 1 + dx);
      row.head(dx) = x0;
      row.segment(dx, dp) = alpha;
      row(dx + dp) = t;
      if (t == 0) {
        row.tail(dx).setZero();
      } else {
        row.tail(dx) =
            (pred.states.row(t - 1) - truth.row(t - 1)).cwiseAbs();
      }
      surf.rows.row(static_cast<Eigen::Index>(p * horizons.size() + h)) = row;
    }
  };

  if (parallel) {
    parallel_for(static_cast<std::ptrdiff_t>(test_points.size()), run_point);
  } else {
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(test_points.size()); ++p)
      run_point(p);
  }
  return surf;
}

}  // namespace

ErrorSurface error_surface(
    const LearnedOperator& op, const ClosedLoop& loop,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& test_points,
    const std::vector<int>& horizons) {
  return error_surface_impl(op, loop, test_points, horizons, true);
}

ErrorSurface error_surface_serial(
    const LearnedOperator& op, const ClosedLoop& loop,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& test_points,
    const std::vector<int>& horizons) {
  return error_surface_impl(op, loop, test_points, horizons, false);
}

double multistep_bound(double beta, double c_eta, int t) {
  if (beta < 0.0 || c_eta < 0.0 || t < 0)
    throw ConfigError("multistep bound: arguments must be nonnegative");
  if (beta == 1.0) return static_cast<double>(t) * c_eta;
  return (1.0 - std::pow(beta, t)) / (1.0 - beta) * c_eta;
}

double multistep_cap(double beta, double c_eta) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw ConfigError("multistep cap: requires beta in [0, 1)");
  return c_eta / (1.0 - beta);
}

}  // namespace kn
