#include "kn/gram.hpp"

#include <cmath>
#include <string>

#include "kn/errors.hpp"
#include "kn/parallel.hpp"

namespace kn {

SnapshotDataset::SnapshotDataset(Eigen::MatrixXd states_in,
                                 Eigen::MatrixXd policy_params_in,
                                 Eigen::MatrixXd successors_in)
    : SnapshotDataset(std::move(states_in), std::move(policy_params_in),
                      std::move(successors_in), Eigen::VectorXd()) {}

SnapshotDataset::SnapshotDataset(Eigen::MatrixXd states_in,
                                 Eigen::MatrixXd policy_params_in,
                                 Eigen::MatrixXd successors_in,
                                 Eigen::VectorXd state_scales_in)
    : states(std::move(states_in)),
      policy_params(std::move(policy_params_in)),
      successors(std::move(successors_in)),
      state_scales(std::move(state_scales_in)) {
  if (state_scales.size() == 0)
    state_scales = Eigen::VectorXd::Ones(states.cols());
  validate();
}

void SnapshotDataset::validate() const {
  if (states.rows() < 1) throw InputError("dataset: needs at least one snapshot");
  if (policy_params.rows() != states.rows() || successors.rows() != states.rows())
    throw InputError("dataset: states, policy_params, successors row counts differ");
  if (successors.cols() != states.cols())
    throw InputError("dataset: states and successors dimensions differ");
  if (state_scales.size() != states.cols())
    throw InputError("dataset: state_scales length differs from state dimension");
  if ((state_scales.array() <= 0.0).any())
    throw InputError("dataset: state_scales must be strictly positive");
}

Eigen::MatrixXd SnapshotDataset::scaled_states() const {
  return states.array().rowwise() / state_scales.transpose().array();
}

Eigen::MatrixXd SnapshotDataset::scaled_successors() const {
  return successors.array().rowwise() / state_scales.transpose().array();
}

namespace {

GramSet assemble_impl(const SnapshotDataset& data, const RadialKernel& kx,
                      const PolicyKernel& ku, bool parallel) {
  data.validate();
  if (data.param_dim() != ku.parameter_dimension())
    throw InputError("assemble: policy kernel dimension differs from dataset");

  const Eigen::Index m = data.size();
  const Eigen::MatrixXd xs = data.scaled_states();
  const Eigen::MatrixXd ys = data.scaled_successors();
  const Eigen::MatrixXd& al = data.policy_params;
  const double cutoff = kx.support_radius();

  GramSet g;
  g.g_xu.setZero(m, m);
  g.g_yy.setZero(m, m);
  g.g_xy.setZero(m, m);

  // Symmetric entries are computed once per unordered pair; pairs beyond the
  // kernel support stay exactly zero.
  auto fill_row = [&](Eigen::Index i) {
    g.g_xu(i, i) = 1.0;
    g.g_yy(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double rx = (xs.row(i) - xs.row(j)).norm();
      if (rx < cutoff) {
        const double v = kx.at_distance(rx) *
                         ku.at_squared_distance((al.row(i) - al.row(j)).squaredNorm());
        g.g_xu(i, j) = v;
        g.g_xu(j, i) = v;
      }
      const double ry = (ys.row(i) - ys.row(j)).norm();
      if (ry < cutoff) {
        const double v = kx.at_distance(ry);
        g.g_yy(i, j) = v;
        g.g_yy(j, i) = v;
      }
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      const double r = (xs.row(i) - ys.row(j)).norm();
      if (r < cutoff) g.g_xy(i, j) = kx.at_distance(r);
    }
  };

  if (parallel) {
    parallel_for(m, fill_row);
  } else {
    for (Eigen::Index i = 0; i < m; ++i) fill_row(i);
  }
  return g;
}

}  // namespace

GramSet assemble(const SnapshotDataset& data, const RadialKernel& kx,
                 const PolicyKernel& ku) {
  return assemble_impl(data, kx, ku, true);
}

GramSet assemble_serial(const SnapshotDataset& data, const RadialKernel& kx,
                        const PolicyKernel& ku) {
  return assemble_impl(data, kx, ku, false);
}

double sparsity(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("sparsity: matrix must be square");
  return m.sum() / (static_cast<double>(m.rows()) * static_cast<double>(m.cols()));
}

double zero_fraction(const Eigen::MatrixXd& m) {
  const auto zeros = (m.array() == 0.0).count();
  return static_cast<double>(zeros) / static_cast<double>(m.size());
}

double fill_distance(
    const SnapshotDataset& data,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& candidates,
    double policy_weight) {
  if (candidates.empty()) throw InputError("fill_distance: no candidates");
  const Eigen::MatrixXd xs = data.scaled_states();
  const Eigen::MatrixXd& al = data.policy_params;
  const Eigen::ArrayXd inv_scales = data.state_scales.array().inverse();

  double worst = 0.0;
  for (const auto& [cx, ca] : candidates) {
    if (cx.size() != data.state_dim() || ca.size() != data.param_dim())
      throw InputError("fill_distance: candidate dimension mismatch");
    const Eigen::VectorXd cxs = (cx.array() * inv_scales).matrix();
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < data.size(); ++i) {
      const double d = (xs.row(i).transpose() - cxs).norm() +
                       policy_weight * (al.row(i).transpose() - ca).norm();
      best = std::min(best, d);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace kn
