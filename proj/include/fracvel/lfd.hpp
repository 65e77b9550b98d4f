#pragma once

#include "fracvel/quadrature.hpp"
#include "fracvel/real_function.hpp"
#include "fracvel/velocity.hpp"

#include <vector>

namespace fracvel {

struct LFDResult {
  Side side = Side::forward;
  double beta = 0.0;
  double value = 0.0;
  Classification classification = Classification::inconclusive;
  /// (h, M_a(h)) along the h schedule.
  std::vector<VelocitySample> m_samples;
  double residual = 0.0;

  bool exists() const {
    return classification == Classification::finite || classification == Classification::zero;
  }
};

/// Riemann-Liouville integral of order beta in (0, 1]. Forward is the left
/// integral from a < x, backward the right integral from a > x.
double rl_integral(const RealFunction& f, double a, double x, double beta, Side side, const QuadratureConfig& q = {});

/// Riemann-Liouville derivative of order beta in (0, 1): d/dx of the order
/// 1 - beta integral (with a leading minus sign on the right). The Ridders
/// difference starts at h_schedule.eps0 * |x - a|.
double rl_derivative(const RealFunction& f, double a, double x, double beta, Side side,
                     const QuadratureConfig& q = {});

/// M_a(h) = int_0^1 (f(a + h u) - f(a)) (1 - u)^-beta du. Backward uses the
/// mirrored average int_0^1 (f(a) - f(a - h u)) (1 - u)^-beta du.
double integral_average(const RealFunction& f, double a, double h, double beta, const QuadratureConfig& q = {},
                        Side side = Side::forward);

/// Local fractional derivative: beta-velocity of h -> M_a(h) at 0 over Gamma(1 - beta).
LFDResult kg_lfd(const RealFunction& f, double a, double beta, Side side, const QuadratureConfig& q = {});

/// Local fractional derivative from f':
/// lim h^(1-beta) int_0^1 u f'(a + h u) (1 - u)^-beta du / (beta Gamma(1 - beta)).
LFDResult kg_lfd_bv(const RealFunction& f, const RealFunction& fprime, double a, double beta,
                    const QuadratureConfig& q = {});

struct EquivalenceReport {
  VelocityEstimate velocity;
  LFDResult lfd;
  double gamma_ratio;
};

/// Velocity and local fractional derivative at a, and their ratio.
/// Throws RatioUndefined unless both are finite and the velocity is nonzero.
EquivalenceReport equivalence_report(const RealFunction& f, double a, double beta, Side side,
                                     const EstimatorSchedule& sched = {}, const QuadratureConfig& q = {});

} // namespace fracvel
