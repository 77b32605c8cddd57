#include "kn/simulators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "kn/errors.hpp"

namespace kn {

Eigen::MatrixXd ClosedLoop::simulate(const Eigen::VectorXd& x0,
                                     const Eigen::VectorXd& alpha,
                                     int horizon) const {
  Eigen::MatrixXd out(horizon, x0.size());
  Eigen::VectorXd x = x0;
  for (int t = 0; t < horizon; ++t) {
    x = step(x, alpha);
    out.row(t) = x;
  }
  return out;
}

double tank_step(double x, double action) {
  return x + 0.2 - 1.0 / std::sqrt(11.0 + 7.0 * (1.0 + std::pow(0.05, action)));
}

Eigen::VectorXd TankSystem::step(const Eigen::VectorXd& x, double action) const {
  Eigen::VectorXd out(1);
  out(0) = tank_step(x(0), action);
  return out;
}

double TanhGainPolicy::action(const Eigen::VectorXd& x,
                              const Eigen::VectorXd& alpha) const {
  return std::tanh(std::pow(10.0, alpha(0)) * x(0));
}

Eigen::VectorXd WilliamsOttoModel::steady_state() {
  Eigen::VectorXd ss(6);
  ss << 0.0635, 0.4762, 0.0111, 0.1316, 0.0813, 0.1045;
  return ss;
}

Eigen::VectorXd WilliamsOttoModel::derivatives(const Eigen::VectorXd& mf,
                                               double feed_a, double feed_b) {
  const double w = kMassHoldup;
  const double r1 = w * kRate1 * std::exp(-kActivation1 / kTemperature) * mf(0) * mf(1);
  const double r2 = w * kRate2 * std::exp(-kActivation2 / kTemperature) * mf(1) * mf(2);
  const double r3 = w * kRate3 * std::exp(-kActivation3 / kTemperature) * mf(2) * mf(5);
  const double f = feed_a + feed_b;

  Eigen::VectorXd d(6);
  d(0) = feed_a - f * mf(0) - r1;
  d(1) = feed_b - f * mf(1) - r1 - r2;
  d(2) = -f * mf(2) + 2.0 * r1 - 2.0 * r2 - r3;
  d(3) = -f * mf(3) + r2;
  d(4) = -f * mf(4) + 1.5 * r3;
  d(5) = -f * mf(5) + r2 - 0.5 * r3;
  return d / w;
}

Eigen::VectorXd WilliamsOttoModel::step_scaled(const Eigen::VectorXd& x_scaled,
                                               double action, double feed_a,
                                               double dt, double substep) {
  if (x_scaled.size() != 6)
    throw InputError("williams-otto: state must have 6 components");
  const double feed_b = kFeedB * (1.0 + action);
  if (feed_b < 0.0 || feed_a < 0.0)
    throw SimulationError("williams-otto: negative feed flow (a = " +
                          std::to_string(action) + ")");

  const Eigen::VectorXd ss = steady_state();
  Eigen::VectorXd mf = ss.array() * (1.0 + x_scaled.array());

  const int n = std::max(1, static_cast<int>(std::lround(dt / substep)));
  const double h = dt / n;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd k1 = derivatives(mf, feed_a, feed_b);
    const Eigen::VectorXd k2 = derivatives(mf + 0.5 * h * k1, feed_a, feed_b);
    const Eigen::VectorXd k3 = derivatives(mf + 0.5 * h * k2, feed_a, feed_b);
    const Eigen::VectorXd k4 = derivatives(mf + h * k3, feed_a, feed_b);
    mf += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return (mf.array() / ss.array() - 1.0).matrix();
}

Eigen::VectorXd WilliamsOttoSystem::step(const Eigen::VectorXd& x,
                                         double action) const {
  return WilliamsOttoModel::step_scaled(x, action, feed_a_);
}

double TwoGainPolicy::action(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& alpha) const {
  const double k1 = std::pow(10.0, alpha(0));
  const double k2 = 3.0 * std::pow(10.0, alpha(1));
  return k1 * x(2) + k2 * x(5);
}

SnapshotDataset generate_tank_grid(int n_x, int n_alpha) {
  if (n_x < 2 || n_alpha < 2)
    throw ConfigError("tank grid: need at least 2 points per axis");

  const int m = n_x * n_alpha;
  Eigen::MatrixXd states(m, 1), params(m, 1), successors(m, 1);
  int row = 0;
  for (int i = 0; i < n_x; ++i) {
    const double x = -2.0 + 4.0 * i / (n_x - 1);
    for (int j = 0; j < n_alpha; ++j) {
      const double alpha = -1.0 + 2.0 * j / (n_alpha - 1);
      const double a = std::tanh(std::pow(10.0, alpha) * x);
      states(row, 0) = x;
      params(row, 0) = alpha;
      successors(row, 0) = tank_step(x, a);
      ++row;
    }
  }
  return SnapshotDataset(std::move(states), std::move(params), std::move(successors));
}

namespace {

// Exploration orbit: F_B nominal, F_A switched by a fair coin every
// exploration_dt seconds. Returns the visited scaled states (origin included).
std::vector<Eigen::VectorXd> wo_exploration_orbit(std::mt19937_64& rng,
                                                  const WoSampleSettings& s) {
  const int steps = static_cast<int>(std::lround(s.exploration_duration / s.exploration_dt));
  std::bernoulli_distribution coin(0.5);

  std::vector<Eigen::VectorXd> orbit;
  orbit.reserve(steps + 1);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
  orbit.push_back(x);
  for (int t = 0; t < steps; ++t) {
    const double feed_a = WilliamsOttoModel::kFeedA *
                          (coin(rng) ? 1.0 + s.disturbance_fraction
                                     : 1.0 - s.disturbance_fraction);
    x = WilliamsOttoModel::step_scaled(x, 0.0, feed_a, s.exploration_dt);
    orbit.push_back(x);
  }
  return orbit;
}

}  // namespace

SnapshotDataset generate_wo_sample(int m, std::uint64_t seed,
                                   const WoSampleSettings& settings) {
  if (m < 1) throw ConfigError("wo sample: m must be positive");

  std::mt19937_64 rng(seed);
  const std::vector<Eigen::VectorXd> orbit = wo_exploration_orbit(rng, settings);
  if (static_cast<size_t>(m) > orbit.size())
    throw ConfigError("wo sample: m exceeds the exploration orbit length");

  // Subsample without replacement (partial Fisher-Yates on the index set).
  std::vector<int> idx(orbit.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < m; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(idx.size()) - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }

  TwoGainPolicy policy;
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Eigen::MatrixXd states(m, 6), params(m, 2), successors(m, 6);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd& x = orbit[idx[i]];
    Eigen::Vector2d alpha;
    for (int j = 0; j < 2; ++j)
      alpha(j) = settings.alpha_low(j) +
                 (settings.alpha_high(j) - settings.alpha_low(j)) * unif(rng);
    const double a = policy.action(x, alpha);
    states.row(i) = x;
    params.row(i) = alpha;
    successors.row(i) =
        WilliamsOttoModel::step_scaled(x, a, WilliamsOttoModel::kFeedA);
  }

  // Per-coordinate sample standard deviation of the states.
  const Eigen::RowVectorXd mean = states.colwise().mean();
  Eigen::VectorXd scales(6);
  for (int j = 0; j < 6; ++j) {
    const double ss = (states.col(j).array() - mean(j)).square().sum();
    scales(j) = std::sqrt(ss / (m - 1));
    if (!(scales(j) > 0.0)) scales(j) = 1.0;
  }

  return SnapshotDataset(std::move(states), std::move(params),
                         std::move(successors), std::move(scales));
}

double wo_disturbance_cost(double k1, double k2, std::uint64_t seed,
                           int horizon, double disturbance_fraction) {
  if (k1 <= 0.0 || k2 <= 0.0)
    throw ConfigError("wo disturbance cost: gains must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-disturbance_fraction,
                                              disturbance_fraction);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
  double cost = 0.0;
  for (int t = 0; t <= horizon; ++t) {
    const double u = k1 * x(2) + k2 * x(5);
    cost += 25.0 * x(5) * x(5) + u * u;
    const double feed_a = WilliamsOttoModel::kFeedA * (1.0 + unif(rng));
    x = WilliamsOttoModel::step_scaled(x, u, feed_a);
  }
  return cost;
}

}  // namespace kn
