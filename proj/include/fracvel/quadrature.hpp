#pragma once

#include "fracvel/velocity.hpp"

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

namespace fracvel {

enum class QuadratureScheme { substitution, jacobi_weight };

std::string_view to_string(QuadratureScheme scheme);
QuadratureScheme parse_scheme(std::string_view text);

struct QuadratureConfig {
  /// Starting Gauss points per panel; doubled until the two-grid estimate meets `tolerance`.
  int nodes = 16;
  QuadratureScheme scheme = QuadratureScheme::substitution;
  /// Schedule for h -> 0 limits built on top of the integrals.
  EstimatorSchedule h_schedule{};
  /// Relative target of |I_n - I_2n| against the integral of |integrand|.
  double tolerance = 1e-11;
  int max_nodes = 512;

  void validate() const;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss rule for the weight (1-s)^alpha (1+s)^beta on [-1, 1]
/// (Golub-Welsch). Rules are computed once and shared.
std::shared_ptr<const GaussRule> gauss_jacobi(int n, double alpha, double beta);
inline std::shared_ptr<const GaussRule> gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

/// Integral over [0, 1] of g(u) (1 - u)^(-gamma), gamma < 1.
///
/// `substitution` maps u = 1 - v^p with p = 1/(1 - gamma), which turns the
/// weight into the constant p, and integrates on panels graded geometrically
/// toward both ends, so an integrable power singularity of g at u = 0 is
/// resolved as well. `jacobi_weight` uses a single Gauss-Jacobi rule.
/// Two grids closer than `noise_floor` also count as converged, for
/// integrands that carry absolute rounding noise of their own.
/// Throws QuadratureError when max_nodes does not reach the tolerance.
double singular_weight_integral(const std::function<double(double)>& g, double gamma, const QuadratureConfig& q,
                                double noise_floor = 0.0);

} // namespace fracvel
