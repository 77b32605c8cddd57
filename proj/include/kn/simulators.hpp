#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "kn/gram.hpp"

namespace kn {

// Discrete-time plant with a scalar action.
class System {
 public:
  virtual ~System() = default;
  virtual Eigen::VectorXd step(const Eigen::VectorXd& x, double action) const = 0;
  virtual int state_dim() const = 0;
};

// Parametric feedback family u(x; alpha).
class PolicyFamily {
 public:
  virtual ~PolicyFamily() = default;
  virtual double action(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha) const = 0;
  virtual int param_dim() const = 0;
};

// Plant under a fixed feedback law.
struct ClosedLoop {
  const System& system;
  const PolicyFamily& policy;

  Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha) const {
    return system.step(x, policy.action(x, alpha));
  }
  // States x_1 .. x_T stacked as rows.
  Eigen::MatrixXd simulate(const Eigen::VectorXd& x0, const Eigen::VectorXd& alpha,
                           int horizon) const;
};

// Storage tank level, one state, valve-position action:
//   x' = x + 0.2 - [11 + 7 (1 + 0.05^a)]^{-1/2}.
double tank_step(double x, double action);

class TankSystem final : public System {
 public:
  Eigen::VectorXd step(const Eigen::VectorXd& x, double action) const override;
  int state_dim() const override { return 1; }
};

// u(x; alpha) = tanh(10^alpha * x), alpha in [-1, 1]; actions stay in [-1, 1].
class TanhGainPolicy final : public PolicyFamily {
 public:
  double action(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha) const override;
  int param_dim() const override { return 1; }
};

// Williams-Otto CSTR: 6 species mass fractions, isothermal, 3 reactions.
// Public state coordinates are dimensionless deviations from the tabulated
// steady state; the scalar action shifts the B feed, F_B = F_B_ss * (1 + a).
class WilliamsOttoModel {
 public:
  static constexpr double kMassHoldup = 2104.7;       // kg
  static constexpr double kRate1 = 1.6599e6;          // 1/s
  static constexpr double kRate2 = 7.2117e8;          // 1/s
  static constexpr double kRate3 = 2.6745e12;         // 1/s
  static constexpr double kActivation1 = 6666.7;      // K
  static constexpr double kActivation2 = 8333.3;      // K
  static constexpr double kActivation3 = 11111.0;     // K
  static constexpr double kTemperature = 366.0;       // K
  static constexpr double kFeedA = 1.8;               // kg/s
  static constexpr double kFeedB = 6.1;               // kg/s
  static constexpr double kSamplingTime = 20.0;       // s
  static constexpr double kSubstep = 1.0;             // s, RK4

  // Tabulated steady-state mass fractions (A, B, C, E, G, P).
  static Eigen::VectorXd steady_state();

  // Time derivatives of the mass fractions (1/s) at physical fractions.
  static Eigen::VectorXd derivatives(const Eigen::VectorXd& mass_fractions,
                                     double feed_a, double feed_b);

  // One sampling interval in scaled deviation coordinates. Throws
  // SimulationError on negative feed flows.
  static Eigen::VectorXd step_scaled(const Eigen::VectorXd& x_scaled,
                                     double action, double feed_a,
                                     double dt = kSamplingTime,
                                     double substep = kSubstep);
};

class WilliamsOttoSystem final : public System {
 public:
  explicit WilliamsOttoSystem(double feed_a = WilliamsOttoModel::kFeedA)
      : feed_a_(feed_a) {}
  Eigen::VectorXd step(const Eigen::VectorXd& x, double action) const override;
  int state_dim() const override { return 6; }

 private:
  double feed_a_;
};

// u(x; alpha) = 10^alpha1 * x3 + 3 * 10^alpha2 * x6 on scaled coordinates,
// alpha in [-2, 0]^2.
class TwoGainPolicy final : public PolicyFamily {
 public:
  double action(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha) const override;
  int param_dim() const override { return 2; }
};

// Mesh of (x, alpha) over [-2,2] x [-1,1] with successors from the tank
// closed loop; m = n_x * n_alpha rows, unit state scales.
SnapshotDataset generate_tank_grid(int n_x, int n_alpha);

struct WoSampleSettings {
  double exploration_duration = 14400.0;  // s
  double exploration_dt = 5.0;            // s
  double disturbance_fraction = 0.5;      // F_A = F_A_ss * (1 +- fraction)
  Eigen::Vector2d alpha_low{-2.0, -2.0};
  Eigen::Vector2d alpha_high{0.0, 0.0};
};

// Exploration trajectory under a seeded random binary F_A sequence, m states
// subsampled without replacement, independent uniform policy parameters,
// successors regenerated over one sampling interval at nominal F_A.
// state_scales are the per-coordinate sample standard deviations.
SnapshotDataset generate_wo_sample(int m, std::uint64_t seed,
                                   const WoSampleSettings& settings = {});

// Closed-loop run from the origin under i.i.d. uniform +-25% F_A
// disturbances; returns the undiscounted accumulated cost
//   sum_t 25 x6_t^2 + u(x_t)^2  over t = 0..horizon.
double wo_disturbance_cost(double k1, double k2, std::uint64_t seed,
                           int horizon = 250,
                           double disturbance_fraction = 0.25);

}  // namespace kn
