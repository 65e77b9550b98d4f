#include "fracvel/fanalytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace fracvel {

namespace {

constexpr double kOrderTol = 1e-12;

bool same_order(double a, double b) { return std::abs(a - b) <= kOrderTol; }

std::vector<PowerTerm> normalized(std::vector<PowerTerm> terms) {
  for (const PowerTerm& t : terms) {
    if (!(t.exponent > 0.0) || !std::isfinite(t.exponent))
      throw ParamError("series exponents must be positive and finite");
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.center))
      throw ParamError("series coefficients and centers must be finite");
  }
  std::sort(terms.begin(), terms.end(), [](const PowerTerm& a, const PowerTerm& b) {
    return a.exponent != b.exponent ? a.exponent < b.exponent : a.center < b.center;
  });
  std::vector<PowerTerm> out;
  for (const PowerTerm& t : terms) {
    if (!out.empty() && out.back().exponent == t.exponent && out.back().center == t.center)
      out.back().coefficient += t.coefficient;
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const PowerTerm& t) { return t.coefficient == 0.0; });
  return out;
}

double positive_power(double base, double exponent) {
  return base > 0.0 ? std::pow(base, exponent) : 0.0;
}

// c * ((u + du)_+^alpha - u_+^alpha) without cancellation when both bases are positive.
double term_increment(const PowerTerm& t, double u, double du) {
  const double shifted = u + du;
  if (u > 0.0 && shifted > 0.0)
    return t.coefficient * std::pow(u, t.exponent) * std::expm1(t.exponent * std::log1p(du / u));
  return t.coefficient * (positive_power(shifted, t.exponent) - positive_power(u, t.exponent));
}

} // namespace

FractionalPowerSeries::FractionalPowerSeries(double c0, std::vector<PowerTerm> terms, SeriesSign sign)
    : c0_(c0), terms_(normalized(std::move(terms))), sign_(sign) {
  if (!std::isfinite(c0))
    throw ParamError("series constant must be finite");
}

FractionalPowerSeries series_add(const FractionalPowerSeries& a, const FractionalPowerSeries& b) {
  if (a.sign() != b.sign() && !a.terms().empty() && !b.terms().empty())
    throw ParamError("cannot add series with different sign conventions");
  const SeriesSign sign = a.terms().empty() ? b.sign() : a.sign();
  std::vector<PowerTerm> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return FractionalPowerSeries(a.constant() + b.constant(), std::move(terms), sign);
}

std::vector<double> holder_spectrum(const FractionalPowerSeries& s) {
  std::vector<double> out;
  for (const PowerTerm& t : s.terms())
    if (out.empty() || out.back() != t.exponent)
      out.push_back(t.exponent);
  return out;
}

VelocityEstimate closed_form_velocity(const FractionalPowerSeries& s, double x, double beta, Side side) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw ParamError("velocity order must lie in (0, 1]");
  (void)eval(s, x); // domain check

  const double o = s.orientation();
  // The side on which vanishing bases become positive.
  const bool onto = (side == Side::forward) == (o > 0.0);
  const double side_factor = side_sign(side);

  // Vanishing-base terms grouped by exponent, and the derivative of the rest.
  std::map<double, double> vanishing;
  double smooth_derivative = 0.0;
  for (const PowerTerm& t : s.terms()) {
    const double base = o * x + t.center;
    if (base == 0.0)
      vanishing[t.exponent] += t.coefficient;
    else
      smooth_derivative += t.coefficient * t.exponent * o * std::pow(base, t.exponent - 1.0);
  }
  std::erase_if(vanishing, [](const auto& kv) { return kv.second == 0.0; });

  VelocityEstimate out;
  out.side = side;
  out.beta = beta;
  out.fitted_slope = std::numeric_limits<double>::quiet_NaN();

  bool at_order = same_order(beta, 1.0);
  double value = at_order ? smooth_derivative : 0.0;
  for (const auto& [exponent, coefficient] : vanishing) {
    if (onto && exponent < beta - kOrderTol) {
      out.classification = Classification::divergent;
      return out;
    }
    if (same_order(exponent, beta)) {
      at_order = true;
      if (onto)
        value += side_factor * coefficient;
    }
  }
  if (at_order) {
    out.classification = Classification::finite;
    out.value = value;
  } else {
    out.classification = Classification::zero;
  }
  return out;
}

RealFunction as_function(const FractionalPowerSeries& s) {
  auto eval_fn = [s](double x) {
    double acc = s.constant();
    for (const PowerTerm& t : s.terms())
      acc += t.coefficient * positive_power(s.orientation() * x + t.center, t.exponent);
    return acc;
  };
  auto increment_fn = [s](double x, double h) {
    double acc = 0.0;
    const double du = s.orientation() * h;
    for (const PowerTerm& t : s.terms())
      acc += term_increment(t, s.orientation() * x + t.center, du);
    return acc;
  };
  std::ostringstream name;
  name << "powser(" << s.terms().size() << " terms)";
  return RealFunction(eval_fn, increment_fn, name.str());
}

} // namespace fracvel
