#include "fracvel/quadrature.hpp"

#include "fracvel/special.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace fracvel {

namespace {

// Geometric panel grading toward each end of the substituted interval.
constexpr double kGrading = 0.1;
constexpr int kGradedPanels = 20;

struct Sum {
  double value = 0.0;
  double magnitude = 0.0;
};

// Gauss rule mapped to [lo, hi] applied to phi.
template <typename F>
void add_panel(const GaussRule& rule, double lo, double hi, F&& phi, Sum& acc) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double term = rule.weights[i] * half * phi(mid + half * rule.nodes[i]);
    acc.value += term;
    acc.magnitude += std::abs(term);
  }
}

// Integral of phi over [0, 1/2] on panels graded toward 0.
template <typename F>
void add_graded_half(const GaussRule& rule, F&& phi, Sum& acc) {
  double hi = 0.5;
  for (int k = 0; k < kGradedPanels; ++k) {
    const double lo = hi * kGrading;
    add_panel(rule, lo, hi, phi, acc);
    hi = lo;
  }
  add_panel(rule, 0.0, hi, phi, acc);
}

Sum substitution_rule(const std::function<double(double)>& g, double gamma, int n) {
  const GaussRule& rule = *gauss_legendre(n);
  const double p = 1.0 / (1.0 - gamma);
  Sum acc;
  // v in [0, 1/2]: u = 1 - v^p.
  add_graded_half(rule, [&](double v) { return g(1.0 - std::pow(v, p)); }, acc);
  // v = 1 - w, w in [0, 1/2]: u = 1 - (1 - w)^p, formed without cancellation near u = 0.
  add_graded_half(rule, [&](double w) { return g(-std::expm1(p * std::log1p(-w))); }, acc);
  acc.value *= p;
  acc.magnitude *= p;
  return acc;
}

Sum jacobi_rule(const std::function<double(double)>& g, double gamma, int n) {
  const GaussRule& rule = *gauss_jacobi(n, -gamma, 0.0);
  // u = (1 + s)/2, (1 - u)^-gamma du = 2^(gamma - 1) (1 - s)^-gamma ds.
  const double scale = std::exp2(gamma - 1.0);
  Sum acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double term = scale * rule.weights[i] * g(0.5 * (1.0 + rule.nodes[i]));
    acc.value += term;
    acc.magnitude += std::abs(term);
  }
  return acc;
}

} // namespace

std::string_view to_string(QuadratureScheme scheme) {
  return scheme == QuadratureScheme::substitution ? "substitution" : "jacobi_weight";
}

QuadratureScheme parse_scheme(std::string_view text) {
  if (text == "substitution")
    return QuadratureScheme::substitution;
  if (text == "jacobi_weight" || text == "jacobi-weight")
    return QuadratureScheme::jacobi_weight;
  throw ParamError("unknown quadrature scheme '" + std::string(text) + "'");
}

void QuadratureConfig::validate() const {
  if (nodes < 8)
    throw ParamError("quadrature needs at least 8 nodes");
  if (max_nodes < nodes)
    throw ParamError("max_nodes must not be below nodes");
  if (!(tolerance > 0.0))
    throw ParamError("quadrature tolerance must be positive");
  h_schedule.validate();
}

std::shared_ptr<const GaussRule> gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1)
    throw ParamError("Gauss rule needs at least one node");
  if (!(alpha > -1.0 && beta > -1.0))
    throw ParamError("Jacobi weight exponents must exceed -1");

  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::shared_ptr<const GaussRule>> cache;
  const auto key = std::make_tuple(n, alpha, beta);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end())
      return it->second;
  }

  // Symmetric Jacobi matrix of the monic recurrence.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    J(k, k) = k == 0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k >= 1) {
      const double b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
      J(k, k - 1) = J(k - 1, k) = std::sqrt(b);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
  if (solver.info() != Eigen::Success)
    throw QuadratureError("eigenvalue solver failed for the Gauss rule");
  const double mu0 = std::exp2(ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 2.0);

  auto rule = std::make_shared<GaussRule>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule->nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule->weights[i] = mu0 * v0 * v0;
  }

  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

double singular_weight_integral(const std::function<double(double)>& g, double gamma, const QuadratureConfig& q,
                                double noise_floor) {
  q.validate();
  if (!(gamma < 1.0))
    throw ParamError("kernel exponent must be below 1 for integrability");
  auto rule = [&](int n) {
    return q.scheme == QuadratureScheme::substitution ? substitution_rule(g, gamma, n) : jacobi_rule(g, gamma, n);
  };
  Sum coarse = rule(q.nodes);
  for (int n = q.nodes; 2 * n <= q.max_nodes; n *= 2) {
    const Sum fine = rule(2 * n);
    if (!std::isfinite(fine.value))
      throw QuadratureError("integrand is not finite at a quadrature node");
    if (std::abs(fine.value - coarse.value) <= std::max(q.tolerance * fine.magnitude, noise_floor))
      return fine.value;
    coarse = fine;
  }
  throw QuadratureError("quadrature did not reach the requested tolerance with " + std::to_string(q.max_nodes) +
                        " nodes");
}

} // namespace fracvel
