#include "kn/kernels.hpp"

#include <cmath>
#include <string>

#include "kn/errors.hpp"

namespace kn {

namespace {

// Binomial expansion of (1 - r/sigma)^l, ascending powers of r.
std::vector<double> truncated_power_coeffs(int l, double sigma) {
  std::vector<double> c(static_cast<size_t>(l) + 1, 0.0);
  double binom = 1.0;
  for (int j = 0; j <= l; ++j) {
    c[j] = binom * std::pow(-1.0 / sigma, j);
    binom = binom * (l - j) / (j + 1.0);
  }
  return c;
}

// (I p)(r) = sigma^-2 * integral_r^sigma t p(t) dt, as a polynomial in r.
std::vector<double> weighted_antiderivative(const std::vector<double>& p,
                                            double sigma) {
  std::vector<double> out(p.size() + 2, 0.0);
  double at_sigma = 0.0;
  for (size_t j = 0; j < p.size(); ++j) {
    const double cj = p[j] / (static_cast<double>(j) + 2.0);
    out[j + 2] = -cj / (sigma * sigma);
    at_sigma += cj * std::pow(sigma, static_cast<double>(j) + 2.0);
  }
  out[0] = at_sigma / (sigma * sigma);
  return out;
}

std::vector<double> normalized_at_zero(std::vector<double> c) {
  const double scale = 1.0 / c[0];
  for (double& v : c) v *= scale;
  return c;
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> coefficients,
                                         double support_radius)
    : coeffs_(std::move(coefficients)), support_(support_radius) {
  if (coeffs_.empty()) throw ConfigError("piecewise polynomial: no coefficients");
  if (support_ <= 0.0) throw ConfigError("piecewise polynomial: support must be positive");
}

double PiecewisePolynomial::operator()(double r) const {
  if (r >= support_) return 0.0;
  double v = 0.0;
  for (size_t j = coeffs_.size(); j-- > 0;) v = v * r + coeffs_[j];
  return v;
}

PiecewisePolynomial build_wendland(int n, int k, double sigma) {
  if (n < 1) throw ConfigError("wendland: n must be positive");
  if (k < 0) throw ConfigError("wendland: k must be nonnegative");
  if (k == 0 && n < 3) throw ConfigError("wendland: k = 0 requires n >= 3");
  if (sigma <= 0.0) throw ConfigError("wendland: sigma must be positive");

  if (n == 1 && k == 1) {
    // Quadratic bump (1 - r/sigma)^2; see note in the header.
    return PiecewisePolynomial(
        normalized_at_zero(truncated_power_coeffs(2, sigma)), sigma);
  }

  const int l = n / 2 + k + 1;
  std::vector<double> c = truncated_power_coeffs(l, sigma);
  for (int i = 0; i < k; ++i) c = weighted_antiderivative(c, sigma);
  return PiecewisePolynomial(normalized_at_zero(std::move(c)), sigma);
}

RadialKernel::RadialKernel(Family family, double sigma, int n, int k,
                           std::vector<double> coeffs)
    : family_(family), sigma_(sigma), n_(n), k_(k), coeffs_(std::move(coeffs)) {}

RadialKernel RadialKernel::wendland(int n, int k, double sigma) {
  PiecewisePolynomial p = build_wendland(n, k, sigma);
  return RadialKernel(Family::Wendland, sigma, n, k, p.coefficients());
}

RadialKernel RadialKernel::gaussian(double sigma) {
  if (sigma <= 0.0) throw ConfigError("gaussian kernel: sigma must be positive");
  return RadialKernel(Family::Gaussian, sigma, 0, 0, {});
}

double RadialKernel::at_distance(double r) const {
  if (family_ == Family::Gaussian) return std::exp(-r * r / (sigma_ * sigma_));
  if (r >= sigma_) return 0.0;
  double v = 0.0;
  for (size_t j = coeffs_.size(); j-- > 0;) v = v * r + coeffs_[j];
  return v;
}

double RadialKernel::operator()(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y) const {
  if (x.size() != y.size())
    throw InputError("radial kernel: state dimensions differ (" +
                     std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  return at_distance((x - y).norm());
}

double RadialKernel::support_radius() const {
  return family_ == Family::Gaussian
             ? std::numeric_limits<double>::infinity()
             : sigma_;
}

PolicyKernel::PolicyKernel(double sigma, int parameter_dimension)
    : sigma_(sigma), dim_(parameter_dimension) {
  if (sigma_ <= 0.0) throw ConfigError("policy kernel: sigma must be positive");
  if (dim_ < 1) throw ConfigError("policy kernel: parameter dimension must be positive");
}

double PolicyKernel::at_squared_distance(double d2) const {
  return std::exp(-d2 / (sigma_ * sigma_));
}

double PolicyKernel::operator()(const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b) const {
  if (a.size() != dim_ || b.size() != dim_)
    throw InputError("policy kernel: parameter dimension mismatch");
  return at_squared_distance((a - b).squaredNorm());
}

double product_kernel(const RadialKernel& kx, const PolicyKernel& ku,
                      const Eigen::VectorXd& x, const Eigen::VectorXd& a,
                      const Eigen::VectorXd& x2, const Eigen::VectorXd& a2) {
  return kx(x, x2) * ku(a, a2);
}

}  // namespace kn
