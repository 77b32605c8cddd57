#include "kn/learning.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "kn/errors.hpp"

namespace kn {

double default_jitter(const Eigen::MatrixXd& gram) {
  return 1e-10 * gram.trace() / static_cast<double>(gram.rows());
}

double largest_eigenvalue(const Eigen::MatrixXd& sym) {
  const Eigen::Index m = sym.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXd w = sym * v;
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (std::abs(next - lambda) <= 1e-13 * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

namespace {

// lambda_min estimate via inverse iteration on an existing factorization.
double smallest_eigenvalue(const Eigen::LDLT<Eigen::MatrixXd>& ldlt,
                           Eigen::Index m) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m).normalized();
  double mu = 0.0;  // Rayleigh quotient of the inverse
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd w = ldlt.solve(v);
    const double norm = w.norm();
    if (!std::isfinite(norm) || norm == 0.0) return 0.0;
    const double next = v.dot(w);
    v = w / norm;
    if (it > 3 && std::abs(next - mu) <= 1e-10 * std::abs(next)) {
      mu = next;
      break;
    }
    mu = next;
  }
  return mu > 0.0 ? 1.0 / mu : 0.0;
}

}  // namespace

LearnedOperator fit_kernel_edmd(std::shared_ptr<const SnapshotDataset> data,
                                std::shared_ptr<const GramSet> grams,
                                const RadialKernel& kx, const PolicyKernel& ku,
                                double jitter) {
  if (jitter < 0.0) throw ConfigError("kernel edmd: jitter must be nonnegative");
  const Eigen::Index m = grams->g_xu.rows();
  Eigen::MatrixXd a = grams->g_xu;
  a.diagonal().array() += jitter;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (ldlt.info() != Eigen::Success)
    throw FitError("kernel edmd: factorization failed",
                   std::numeric_limits<double>::infinity());

  const double lo = smallest_eigenvalue(ldlt, m);
  const double hi = largest_eigenvalue(a);
  const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(cond < 1e14))
    throw FitError("kernel edmd: Gram matrix too ill-conditioned (estimate " +
                       std::to_string(cond) + ")",
                   cond);

  Eigen::MatrixXd theta = ldlt.solve(Eigen::MatrixXd::Identity(m, m));
  // Iterative refinement keeps the interpolation residual near rounding even
  // when the Gram matrix is poorly conditioned.
  for (int it = 0; it < 3; ++it) {
    Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(m, m) - a * theta;
    const double res = residual.norm() / std::sqrt(static_cast<double>(m));
    if (res < 1e-13) break;
    theta += ldlt.solve(residual);
  }

  FitMethod method;
  method.kind = FitMethod::Kind::KernelEdmd;
  method.jitter = jitter;
  return LearnedOperator{std::move(theta), std::move(data), std::move(grams),
                         kx, ku, method};
}

std::pair<LearnedOperator, RrrSolution> fit_reduced_rank(
    std::shared_ptr<const SnapshotDataset> data,
    std::shared_ptr<const GramSet> grams, const RadialKernel& kx,
    const PolicyKernel& ku, double beta, int rank) {
  const Eigen::Index m = grams->g_xu.rows();
  if (beta <= 0.0) throw ConfigError("reduced rank: beta must be positive");
  if (rank < 1 || rank > m)
    throw ConfigError("reduced rank: rank must be in [1, m]");

  const double dm = static_cast<double>(m);
  Eigen::MatrixXd b = grams->g_xu / dm;
  b.diagonal().array() += beta;
  const Eigen::MatrixXd a = grams->g_yy * grams->g_xu / (dm * dm);

  // B is SPD, so solve the standard nonsymmetric problem for B^-1 A and pick
  // the eigenpairs with the largest real parts.
  Eigen::LDLT<Eigen::MatrixXd> ldlt(b);
  if (ldlt.info() != Eigen::Success)
    throw FitError("reduced rank: regularized Gram not positive definite",
                   std::numeric_limits<double>::infinity());
  Eigen::EigenSolver<Eigen::MatrixXd> eig(ldlt.solve(a));
  if (eig.info() != Eigen::Success)
    throw FitError("reduced rank: eigensolver failed", 0.0);

  const Eigen::VectorXcd values = eig.eigenvalues();
  std::vector<Eigen::Index> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     return values(i).real() > values(j).real();
                   });

  const double scale = values.cwiseAbs().maxCoeff();
  RrrSolution sol;
  sol.eigenvalues.resize(rank);
  sol.eigenvectors.resize(m, rank);
  for (int i = 0; i < rank; ++i) {
    const Eigen::Index j = order[static_cast<size_t>(i)];
    const std::complex<double> lambda = values(j);
    if (std::abs(lambda.imag()) > 1e-8 * std::max(1.0, scale))
      throw FitError("reduced rank: complex eigenpair at position " +
                         std::to_string(i) + " (beta too small?)",
                     0.0);
    if (lambda.real() < 0.0)
      throw FitError("reduced rank: fewer than rank nonnegative eigenvalues", 0.0);
    Eigen::VectorXd v = eig.eigenvectors().col(j).real();
    const double q = v.dot((grams->g_xu / dm) * (b * v));
    if (!(q > 0.0))
      throw FitError("reduced rank: degenerate eigenvector normalization", 0.0);
    sol.eigenvalues(i) = lambda.real();
    sol.eigenvectors.col(i) = v / std::sqrt(q);
  }

  Eigen::MatrixXd theta = (sol.eigenvectors * sol.eigenvectors.transpose()) *
                          grams->g_xu / dm;

  FitMethod method;
  method.kind = FitMethod::Kind::ReducedRank;
  method.beta = beta;
  method.rank = rank;
  LearnedOperator op{std::move(theta), std::move(data), std::move(grams),
                     kx, ku, method};
  return {std::move(op), std::move(sol)};
}

double generalization_bound(int m, double delta, double beta, int rank) {
  if (m < 1) throw ConfigError("generalization bound: m must be positive");
  if (delta <= 0.0 || delta >= 1.0)
    throw ConfigError("generalization bound: delta must be in (0, 1)");
  if (beta < 0.0) throw ConfigError("generalization bound: beta must be nonnegative");
  if (rank < 1) throw ConfigError("generalization bound: rank must be positive");

  const double dm = static_cast<double>(m);
  const double l6 = std::log(6.0 / delta);
  const double l12 = std::log(12.0 * dm * dm / delta);
  return l6 / dm + std::sqrt(8.0 * l6 / dm) +
         beta * (beta + 2.0 * std::sqrt(static_cast<double>(rank))) *
             (6.0 * l12 / dm + std::sqrt(9.0 * l12 / dm));
}

double empirical_loss(const LearnedOperator& op) {
  const Eigen::MatrixXd& gxu = op.grams->g_xu;
  const Eigen::MatrixXd& gyy = op.grams->g_yy;
  if (gxu.rows() != op.theta.rows())
    throw InputError("empirical loss: operator and grams sizes differ");

  const Eigen::MatrixXd tg = op.theta * gxu;  // coefficient columns
  const Eigen::MatrixXd w = gyy * tg;
  const double cross = w.diagonal().sum();
  const double quad = (tg.array() * w.array()).sum();
  return (gyy.diagonal().sum() - 2.0 * cross + quad) /
         static_cast<double>(gxu.rows());
}

double hs_norm_squared(const LearnedOperator& op) {
  return (op.theta.transpose() * op.grams->g_yy * op.theta * op.grams->g_xu)
      .trace();
}

}  // namespace kn
