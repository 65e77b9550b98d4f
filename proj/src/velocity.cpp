#include "fracvel/velocity.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracvel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// A sample enters the fit only when it stands this far above its noise estimate.
constexpr double kSignalToNoise = 64.0;
// Aitken is applied only where the error ratio is clearly contracting.
constexpr double kMaxContraction = 0.95;
constexpr int kAitkenRounds = 2;
constexpr std::size_t kMinFitSamples = 4;
constexpr std::size_t kMinTailSamples = 6;

void check_order(double beta) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw ParamError("velocity order must lie in (0, 1]");
}

std::vector<double> aitken(const std::vector<double>& y) {
  std::vector<double> out;
  if (y.size() < 3)
    return out;
  out.reserve(y.size() - 2);
  for (std::size_t i = 0; i + 2 < y.size(); ++i) {
    const double d1 = y[i + 1] - y[i];
    const double d2 = y[i + 2] - y[i + 1];
    if (d1 == 0.0 || d2 == 0.0) {
      out.push_back(y[i + 2]);
      continue;
    }
    const double r = d2 / d1;
    if (!(std::abs(r) < kMaxContraction))
      out.push_back(y[i + 2]);
    else
      out.push_back(y[i + 2] + d2 * r / (1.0 - r));
  }
  return out;
}

} // namespace

void EstimatorSchedule::validate() const {
  if (!(eps0 > 0.0 && eps0 <= 1.0))
    throw ParamError("schedule eps0 must lie in (0, 1]");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ParamError("schedule ratio must lie in (0, 1)");
  if (levels < 2 || levels > 60)
    throw ParamError("schedule levels must lie in [2, 60]");
  if (!(zero_band > 0.0) || !(value_tol > 0.0))
    throw ParamError("schedule tolerances must be positive");
}

double EstimatorSchedule::eps(int n) const { return eps0 * std::pow(ratio, n); }

double delta(const RealFunction& f, double x, double eps, Side side) {
  if (side == Side::forward)
    return f.increment(x, eps);
  return -f.increment(x, -eps);
}

double frac_variation(const RealFunction& f, double x, double eps, double beta, Side side) {
  return delta(f, x, eps, side) / std::pow(eps, beta);
}

double oscillation(const RealFunction& f, double x, double eps, Side side, int grid_density) {
  if (grid_density < 0 || grid_density > 30)
    throw ParamError("grid density must lie in [0, 30]");
  const long points = (1L << grid_density);
  const double dir = side_sign(side);
  double lo = 0.0;
  double hi = 0.0;
  for (long i = 1; i <= points; ++i) {
    const double v = f.increment(x, dir * eps * static_cast<double>(i) / static_cast<double>(points));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (y[i] != 0.0 && x[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(std::abs(y[i])));
    }
  }
  if (lx.size() < 2)
    return kNaN;
  const Eigen::Map<const Eigen::ArrayXd> X(lx.data(), static_cast<Eigen::Index>(lx.size()));
  const Eigen::Map<const Eigen::ArrayXd> Y(ly.data(), static_cast<Eigen::Index>(ly.size()));
  const Eigen::ArrayXd dx = X - X.mean();
  const double var = dx.square().sum();
  if (var == 0.0)
    return kNaN;
  return (dx * (Y - Y.mean())).sum() / var;
}

VelocityEstimate classify_quotients(std::span<const double> eps, std::span<const double> quotients,
                                    std::span<const double> noise, double beta, Side side,
                                    const EstimatorSchedule& sched) {
  const std::size_t n = eps.size();
  VelocityEstimate out;
  out.side = side;
  out.beta = beta;
  out.fitted_slope = kNaN;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.samples.push_back({eps[i], quotients[i]});

  // Identically vanishing increments near the point: the limit exists and is 0.
  std::size_t trailing_zeros = 0;
  for (std::size_t i = n; i-- > 0 && quotients[i] == 0.0;)
    ++trailing_zeros;
  if (n > 0 && 2 * trailing_zeros >= n) {
    out.classification = Classification::finite;
    out.value = 0.0;
    return out;
  }

  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = quotients[i];
    if (q != 0.0 && std::isfinite(q) && std::abs(q) > kSignalToNoise * noise[i])
      usable.push_back(i);
  }
  if (usable.size() < kMinFitSamples) {
    out.classification = Classification::inconclusive;
    return out;
  }
  const std::size_t tail = std::min(usable.size(), std::max(kMinTailSamples, (usable.size() + 1) / 2));
  std::vector<double> tail_eps;
  std::vector<double> tail_num;
  std::vector<double> tail_q;
  for (std::size_t k = usable.size() - tail; k < usable.size(); ++k) {
    const std::size_t i = usable[k];
    tail_eps.push_back(eps[i]);
    tail_num.push_back(quotients[i] * std::pow(eps[i], beta));
    tail_q.push_back(quotients[i]);
  }

  out.fitted_slope = fit_loglog_slope(tail_eps, tail_num);
  const double excess = out.fitted_slope - beta;
  if (excess > sched.zero_band) {
    out.classification = Classification::zero;
    out.value = 0.0;
    return out;
  }
  if (excess < -sched.zero_band) {
    out.classification = Classification::divergent;
    out.value = tail_q.back();
    return out;
  }

  std::vector<double> accel = tail_q;
  for (int round = 0; round < kAitkenRounds && accel.size() >= 4; ++round)
    accel = aitken(accel);
  out.value = accel.back();
  out.residual = accel.size() >= 2 ? std::abs(accel.back() - accel[accel.size() - 2]) : 0.0;
  out.classification = out.residual <= sched.value_tol * std::max(1.0, std::abs(out.value))
                           ? Classification::finite
                           : Classification::inconclusive;
  return out;
}

VelocityEstimate estimate_velocity(const RealFunction& f, double x, double beta, Side side,
                                   const EstimatorSchedule& sched) {
  check_order(beta);
  sched.validate();
  std::vector<double> eps(sched.levels);
  std::vector<double> q(sched.levels);
  std::vector<double> noise(sched.levels);
  for (int n = 0; n < sched.levels; ++n) {
    const double e = sched.eps(n);
    const double scale = std::pow(e, beta);
    const double d = delta(f, x, e, side);
    eps[n] = e;
    q[n] = d / scale;
    noise[n] = f.increment_noise(x, side_sign(side) * e, d) / scale;
  }
  return classify_quotients(eps, q, noise, beta, side, sched);
}

std::vector<VelocitySample> taylor_lagrange_residual(const RealFunction& f, double x, double beta, double K,
                                                     Side side, const EstimatorSchedule& sched) {
  check_order(beta);
  sched.validate();
  std::vector<VelocitySample> out;
  out.reserve(sched.levels);
  const double dir = side_sign(side);
  for (int n = 0; n < sched.levels; ++n) {
    const double e = sched.eps(n);
    const double scale = std::pow(e, beta);
    out.push_back({e, (f.increment(x, dir * e) - dir * K * scale) / scale});
  }
  return out;
}

double scale_velocity(const RealFunction& f, double x, double eps, double order, Side side, double deriv_step) {
  if (!(order >= 0.0 && order < 1.0))
    throw ParamError("scale velocity order must lie in [0, 1)");
  if (!(eps > 0.0))
    throw ParamError("scale must be positive");
  // {order}_1 = 1 - order; order 0 is the classical derivative.
  const double fractional_part = order == 0.0 ? 1.0 : 1.0 - order;
  // Differentiate s -> f(x + s) - f(x) at s = +-eps so that the offset from x
  // is never rounded into x + eps.
  const RealFunction offset([f, x](double s) { return f.increment(x, s); });
  const double slope = numeric_derivative(offset, side_sign(side) * eps, deriv_step);
  const double out = std::pow(eps, order) / fractional_part * slope;
  if (!std::isfinite(out))
    throw DegenerateDerivative("scale velocity is not finite");
  return out;
}

VelocityEstimate velocity_bracket(const RealFunction& f, const RealFunction& g, double x, double beta, Side side,
                                  const EstimatorSchedule& sched) {
  check_order(beta);
  sched.validate();
  std::vector<double> eps(sched.levels);
  std::vector<double> q(sched.levels);
  std::vector<double> noise(sched.levels);
  const double dir = side_sign(side);
  for (int n = 0; n < sched.levels; ++n) {
    const double e = sched.eps(n);
    const double scale = std::pow(e, beta);
    const double df = delta(f, x, e, side);
    const double dg = delta(g, x, e, side);
    eps[n] = e;
    q[n] = df * dg / scale;
    noise[n] = (std::abs(df) * g.increment_noise(x, dir * e, dg) + std::abs(dg) * f.increment_noise(x, dir * e, df)) /
               scale;
  }
  return classify_quotients(eps, q, noise, beta, side, sched);
}

AlgebraCheck check_algebra_rule(AlgebraRule rule, const RealFunction& f, const RealFunction& g, double x,
                                double beta, Side side, const EstimatorSchedule& sched) {
  auto require = [](const VelocityEstimate& v, const char* what) {
    if (!v.exists())
      throw RuleInapplicable(std::string(what) + " velocity is " + std::string(to_string(v.classification)));
    return v.limit();
  };
  const double s = side_sign(side);

  RealFunction combined;
  double rhs = 0.0;
  switch (rule) {
  case AlgebraRule::product:
  case AlgebraRule::quotient: {
    const double vf = require(estimate_velocity(f, x, beta, side, sched), "first factor");
    const double vg = require(estimate_velocity(g, x, beta, side, sched), "second factor");
    const double br = require(velocity_bracket(f, g, x, beta, side, sched), "bracket");
    const double f0 = f(x);
    const double g0 = g(x);
    if (rule == AlgebraRule::product) {
      combined = f * g;
      rhs = vf * g0 + vg * f0 + s * br;
    } else {
      if (g0 == 0.0)
        throw RuleInapplicable("quotient rule needs g(x) != 0");
      combined = f / g;
      rhs = (vf * g0 - vg * f0 - s * br) / (g0 * g0);
    }
    break;
  }
  case AlgebraRule::chain_smooth_inner: {
    const double slope = numeric_derivative(g, x, sched.eps0);
    if (!(slope > 0.0))
      throw RuleInapplicable("inner function must be increasing at x");
    const double vf = require(estimate_velocity(f, g(x), beta, side, sched), "outer");
    combined = compose(f, g);
    rhs = vf * std::pow(slope, beta);
    break;
  }
  case AlgebraRule::chain_smooth_outer: {
    const double vg = require(estimate_velocity(g, x, beta, side, sched), "inner");
    const double slope = numeric_derivative(f, g(x), sched.eps0);
    combined = compose(f, g);
    rhs = slope * vg;
    break;
  }
  }
  const VelocityEstimate lhs_est = estimate_velocity(combined, x, beta, side, sched);
  const double lhs = lhs_est.exists() ? lhs_est.limit() : kNaN;
  return {lhs, rhs, std::abs(lhs - rhs)};
}

VelocityEstimate basic_evaluation(const RealFunction& f, double x, double beta, Side side,
                                  const EstimatorSchedule& sched, double step_fraction) {
  check_order(beta);
  sched.validate();
  if (!(step_fraction > 0.0 && step_fraction < 1.0))
    throw ParamError("derivative step fraction must lie in (0, 1)");
  std::vector<double> eps(sched.levels);
  std::vector<double> q(sched.levels);
  std::vector<double> noise(sched.levels);
  for (int n = 0; n < sched.levels; ++n) {
    const double e = sched.eps(n);
    eps[n] = e;
    q[n] = scale_velocity(f, x, e, 1.0 - beta, side, step_fraction * e);
    noise[n] = 1e-10 * std::abs(q[n]);
  }
  return classify_quotients(eps, q, noise, beta, side, sched);
}

} // namespace fracvel
