#pragma once

#include <Eigen/Core>
#include <vector>

namespace kn {

// Polynomial on [0, support), identically zero for r >= support.
// Coefficients are ascending powers of r.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> coefficients, double support_radius);

  double operator()(double r) const;
  const std::vector<double>& coefficients() const { return coeffs_; }
  double support_radius() const { return support_; }

 private:
  std::vector<double> coeffs_;
  double support_;
};

// Compactly supported radial polynomial of smoothness order k on [0, sigma],
// built by repeated application of the weighted antiderivative
//   (I g)(r) = sigma^-2 * integral_r^sigma t g(t) dt
// to the truncated power (1 - r/sigma)^l with l = floor(n/2) + k + 1,
// then scaled so the value at r = 0 is 1.
//
// The (n=1, k=1) pair is pinned to the quadratic bump (1 - r/sigma)^2 used by
// the tank benchmark, which differs from the generic construction.
PiecewisePolynomial build_wendland(int n, int k, double sigma);

// Radial Mercer kernel on state space, normalized so kappa(x, x) = 1.
class RadialKernel {
 public:
  enum class Family { Wendland, Gaussian };

  static RadialKernel wendland(int n, int k, double sigma);
  static RadialKernel gaussian(double sigma);

  double at_distance(double r) const;
  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  Family family() const { return family_; }
  double bandwidth() const { return sigma_; }
  // Distance beyond which the kernel is exactly zero (inf for Gaussian).
  double support_radius() const;
  int wendland_n() const { return n_; }
  int wendland_k() const { return k_; }

 private:
  RadialKernel(Family family, double sigma, int n, int k,
               std::vector<double> coeffs);

  Family family_;
  double sigma_;
  int n_ = 0, k_ = 0;
  std::vector<double> coeffs_;  // Wendland polynomial, ascending powers
};

// Gaussian kernel on policy parameters: exp(-|a - a'|^2 / sigma^2).
class PolicyKernel {
 public:
  PolicyKernel(double sigma, int parameter_dimension);

  double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
  double at_squared_distance(double d2) const;

  double bandwidth() const { return sigma_; }
  int parameter_dimension() const { return dim_; }

 private:
  double sigma_;
  int dim_;
};

// kappa((x,a),(x',a')) = kappa_x(x,x') * kappa_a(a,a').
double product_kernel(const RadialKernel& kx, const PolicyKernel& ku,
                      const Eigen::VectorXd& x, const Eigen::VectorXd& a,
                      const Eigen::VectorXd& x2, const Eigen::VectorXd& a2);

}  // namespace kn
