#pragma once

#include "fracvel/real_function.hpp"
#include "fracvel/types.hpp"
#include "fracvel/velocity.hpp"

#include <cmath>
#include <compare>
#include <vector>

namespace fracvel {

/// Global reflection convention of a series: terms are (x + b)^alpha or (-x + b)^alpha.
enum class SeriesSign { plus, minus };

struct PowerTerm {
  double coefficient;
  double center;
  double exponent;

  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/// Truncated F-analytic function c0 + sum c_i (+-x + b_i)^alpha_i.
///
/// Terms are kept sorted by (exponent, center); like terms are merged and
/// zero coefficients dropped on construction. Two terms may share an exponent
/// when their centers differ.
class FractionalPowerSeries {
public:
  FractionalPowerSeries() = default;
  explicit FractionalPowerSeries(double c0, std::vector<PowerTerm> terms = {}, SeriesSign sign = SeriesSign::plus);

  double constant() const { return c0_; }
  const std::vector<PowerTerm>& terms() const { return terms_; }
  SeriesSign sign() const { return sign_; }
  double orientation() const { return sign_ == SeriesSign::plus ? 1.0 : -1.0; }

  friend bool operator==(const FractionalPowerSeries&, const FractionalPowerSeries&) = default;

private:
  double c0_ = 0.0;
  std::vector<PowerTerm> terms_;
  SeriesSign sign_ = SeriesSign::plus;
};

/// c0 + sum c_i (+-x + b_i)^alpha_i. Throws DomainError on a negative base.
/// Works for any scalar type supporting pow (e.g. Eigen::AutoDiffScalar).
template <typename Scalar>
Scalar eval(const FractionalPowerSeries& s, const Scalar& x) {
  using std::pow;
  Scalar acc(s.constant());
  for (const PowerTerm& t : s.terms()) {
    Scalar base = s.orientation() * x + t.center;
    if (base < 0.0)
      throw DomainError("fractional power of a negative base");
    acc += t.coefficient * pow(base, t.exponent);
  }
  return acc;
}

/// Closed-form one-sided velocity from the leading local exponent at x.
VelocityEstimate closed_form_velocity(const FractionalPowerSeries& s, double x, double beta, Side side);

/// Merges the term lists; throws ParamError on incompatible sign conventions.
FractionalPowerSeries series_add(const FractionalPowerSeries& a, const FractionalPowerSeries& b);
inline FractionalPowerSeries operator+(const FractionalPowerSeries& a, const FractionalPowerSeries& b) {
  return series_add(a, b);
}

/// Distinct exponents, ascending.
std::vector<double> holder_spectrum(const FractionalPowerSeries& s);

/// Wraps the series as a RealFunction. Terms with a negative base contribute 0
/// (the one-sided extension), so the function is defined on the whole line and
/// the side opposite to a branch point sees a locally constant term.
RealFunction as_function(const FractionalPowerSeries& s);

} // namespace fracvel
