#include "fracvel/lfd.hpp"

#include "fracvel/special.hpp"

#include <cmath>

namespace fracvel {

namespace {

constexpr double kVanishingVelocity = 1e-12;

void check_open_order(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw ParamError("order must lie in (0, 1)");
}

LFDResult from_estimate(const VelocityEstimate& v, double divisor) {
  LFDResult out;
  out.side = v.side;
  out.beta = v.beta;
  out.classification = v.classification;
  out.value = v.classification == Classification::finite ? v.value / divisor : 0.0;
  out.residual = v.residual / divisor;
  return out;
}

} // namespace

double rl_integral(const RealFunction& f, double a, double x, double beta, Side side, const QuadratureConfig& q) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw ParamError("integral order must lie in (0, 1]");
  const double s = side_sign(side);
  const double length = s * (x - a);
  if (!(length > 0.0))
    throw DomainError(side == Side::forward ? "left integral needs x > a" : "right integral needs x < a");
  // t = a + s L u maps the kernel |x - t|^(beta-1) to L^(beta-1) (1 - u)^(beta-1).
  auto g = [&](double u) { return f(a + s * length * u); };
  return std::pow(length, beta) / gamma(beta) * singular_weight_integral(g, 1.0 - beta, q);
}

double rl_derivative(const RealFunction& f, double a, double x, double beta, Side side, const QuadratureConfig& q) {
  check_open_order(beta);
  q.validate();
  if (!(side_sign(side) * (x - a) > 0.0))
    throw DomainError(side == Side::forward ? "left derivative needs x > a" : "right derivative needs x < a");
  const RealFunction integral([&](double t) { return rl_integral(f, a, t, 1.0 - beta, side, q); }, "rl_integral");
  const double d = numeric_derivative(integral, x, q.h_schedule.eps0 * std::abs(x - a));
  return side == Side::forward ? d : -d;
}

double integral_average(const RealFunction& f, double a, double h, double beta, const QuadratureConfig& q,
                        Side side) {
  check_open_order(beta);
  if (!(h > 0.0))
    throw ParamError("integral average needs h > 0");
  auto g = side == Side::forward ? std::function<double(double)>([&](double u) { return f.increment(a, h * u); })
                                 : std::function<double(double)>([&](double u) { return -f.increment(a, -h * u); });
  // Subtracted increments carry absolute rounding noise; the integral cannot
  // resolve differences below that noise times the kernel mass 1 / (1 - beta).
  const double s = side_sign(side);
  const double noise = f.increment_noise(a, s * h, f.increment(a, s * h));
  return singular_weight_integral(g, beta, q, 16.0 * noise / (1.0 - beta));
}

LFDResult kg_lfd(const RealFunction& f, double a, double beta, Side side, const QuadratureConfig& q) {
  check_open_order(beta);
  q.validate();
  // m(h) = M_a(h) for h > 0 and -M_a^-(-h) for h < 0, so that the one-sided
  // differences of m at 0 are the forward and backward averages.
  auto m = [f, a, beta, q](double h) {
    if (h == 0.0)
      return 0.0;
    return h > 0.0 ? integral_average(f, a, h, beta, q, Side::forward)
                   : -integral_average(f, a, -h, beta, q, Side::backward);
  };
  const RealFunction average(
      m, [m](double x, double h) { return x == 0.0 ? m(h) : m(x + h) - m(x); }, "integral_average");
  const VelocityEstimate v = estimate_velocity(average, 0.0, beta, side, q.h_schedule);
  LFDResult out = from_estimate(v, gamma(1.0 - beta));
  for (const VelocitySample& s : v.samples)
    out.m_samples.push_back({s.eps, s.value * std::pow(s.eps, beta)});
  return out;
}

LFDResult kg_lfd_bv(const RealFunction&, const RealFunction& fprime, double a, double beta,
                    const QuadratureConfig& q) {
  check_open_order(beta);
  q.validate();
  const EstimatorSchedule& sched = q.h_schedule;
  const double norm = beta * gamma(1.0 - beta);
  std::vector<double> hs(sched.levels);
  std::vector<double> quotients(sched.levels);
  std::vector<double> noise(sched.levels);
  for (int n = 0; n < sched.levels; ++n) {
    const double h = sched.eps(n);
    const double integral = singular_weight_integral([&](double u) { return u * fprime(a + h * u); }, beta, q);
    hs[n] = h;
    quotients[n] = std::pow(h, 1.0 - beta) * integral / norm;
    noise[n] = q.tolerance * std::abs(quotients[n]);
  }
  // The classifier compares slopes against beta on q h^beta, which for a
  // plain limit of q is a comparison of q's own slope against 0.
  const VelocityEstimate v = classify_quotients(hs, quotients, noise, beta, Side::forward, sched);
  LFDResult out = from_estimate(v, 1.0);
  for (const VelocitySample& s : v.samples)
    out.m_samples.push_back(s);
  return out;
}

EquivalenceReport equivalence_report(const RealFunction& f, double a, double beta, Side side,
                                     const EstimatorSchedule& sched, const QuadratureConfig& q) {
  EquivalenceReport out{estimate_velocity(f, a, beta, side, sched), kg_lfd(f, a, beta, side, q), 0.0};
  if (out.velocity.classification != Classification::finite || out.lfd.classification != Classification::finite)
    throw RatioUndefined("velocity is " + std::string(to_string(out.velocity.classification)) + " and LFD is " +
                         std::string(to_string(out.lfd.classification)));
  if (std::abs(out.velocity.value) <= kVanishingVelocity)
    throw RatioUndefined("velocity vanishes");
  out.gamma_ratio = out.lfd.value / out.velocity.value;
  return out;
}

} // namespace fracvel
