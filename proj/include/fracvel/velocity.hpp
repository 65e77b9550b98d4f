#pragma once

#include "fracvel/real_function.hpp"
#include "fracvel/types.hpp"

#include <span>
#include <vector>

namespace fracvel {

/// Geometric increment schedule eps_n = eps0 * ratio^n, n = 0 .. levels-1, with
/// the classification bands applied to the resulting samples.
struct EstimatorSchedule {
  double eps0 = 0.0625;
  double ratio = 0.5;
  int levels = 40;
  /// Allowed deviation of the fitted log-log slope from the requested order.
  double zero_band = 0.05;
  /// Stability threshold on the last two accelerated quotients.
  double value_tol = 1e-4;

  /// Throws ParamError when an invariant is violated.
  void validate() const;
  double eps(int n) const;
};

struct VelocitySample {
  double eps;
  double value;
};

struct VelocityEstimate {
  Side side = Side::forward;
  double beta = 0.0;
  Classification classification = Classification::inconclusive;
  /// Limit value; meaningful only when classification is finite.
  double value = 0.0;
  /// Fitted log-log slope of |increment| against eps (NaN when undefined).
  double fitted_slope = 0.0;
  /// Difference of the last two accelerated quotients.
  double residual = 0.0;
  std::vector<VelocitySample> samples;

  /// True for `finite` and `zero`: the limit exists and `limit()` returns it.
  bool exists() const {
    return classification == Classification::finite || classification == Classification::zero;
  }
  double limit() const { return classification == Classification::finite ? value : 0.0; }
};

/// Forward: f(x+eps) - f(x). Backward: f(x) - f(x-eps).
double delta(const RealFunction& f, double x, double eps, Side side);

/// delta / eps^beta.
double frac_variation(const RealFunction& f, double x, double eps, double beta, Side side);

/// sup - inf of f over a uniform grid of 2^grid_density + 1 points on the
/// one-sided interval. Exact for monotone f, a lower bound otherwise.
double oscillation(const RealFunction& f, double x, double eps, Side side, int grid_density = 12);

/// Least-squares slope of log|y| against log(x). Entries with y == 0 are skipped.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// Shared limit classifier.
///
/// Given the scales `eps` (decreasing), the quotient sequence q_n whose limit
/// is sought, and the absolute rounding noise of each quotient, decides
/// zero / finite / divergent / inconclusive. The slope is fitted on the
/// numerator q_n * eps_n^beta over the trailing half of the samples that sit
/// above the noise floor; the value is the last iterated-Aitken accelerant.
VelocityEstimate classify_quotients(std::span<const double> eps, std::span<const double> quotients,
                                    std::span<const double> noise, double beta, Side side,
                                    const EstimatorSchedule& sched);

/// Fractional velocity of order beta along the schedule.
VelocityEstimate estimate_velocity(const RealFunction& f, double x, double beta, Side side,
                                   const EstimatorSchedule& sched = {});

/// (f(x +- eps_n) - f(x) -+ K eps_n^beta) / eps_n^beta along the schedule.
std::vector<VelocitySample> taylor_lagrange_residual(const RealFunction& f, double x, double beta, double K,
                                                     Side side, const EstimatorSchedule& sched = {});

/// Scale velocity of operator order `order` in [0, 1):
/// eps^order / {order}_1 * f'(x +- eps), where {order}_1 = 1 - order and the
/// degenerate order 0 uses the plain derivative. The derivative is a Ridders
/// central difference starting from `deriv_step`.
double scale_velocity(const RealFunction& f, double x, double eps, double order, Side side, double deriv_step);

/// Limit of the product of the two beta/2 variations.
VelocityEstimate velocity_bracket(const RealFunction& f, const RealFunction& g, double x, double beta, Side side,
                                  const EstimatorSchedule& sched = {});

enum class AlgebraRule { product, quotient, chain_smooth_outer, chain_smooth_inner };

struct AlgebraCheck {
  double lhs;
  double rhs;
  double residual;
};

/// Compares the velocity of a combined function with the formula assembled
/// from its constituents. For the chain rules the combined function is f(g(x)):
/// `chain_smooth_inner` has g in C^1, `chain_smooth_outer` has f in C^1.
/// Throws RuleInapplicable when a constituent velocity does not exist finitely.
AlgebraCheck check_algebra_rule(AlgebraRule rule, const RealFunction& f, const RealFunction& g, double x,
                                double beta, Side side, const EstimatorSchedule& sched = {});

/// (1/beta) lim eps^(1-beta) f'(x +- eps), derivative step = step_fraction * eps.
VelocityEstimate basic_evaluation(const RealFunction& f, double x, double beta, Side side,
                                  const EstimatorSchedule& sched = {}, double step_fraction = 0.125);

} // namespace fracvel
