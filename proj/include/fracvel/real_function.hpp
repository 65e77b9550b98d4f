#pragma once

#include <functional>
#include <memory>
#include <string>

namespace fracvel {

/// Evaluatable real -> real function with an optional cancellation-free
/// increment.
///
/// Difference quotients at small scales are dominated by rounding when
/// f(x+h) - f(x) is formed by subtraction. Functions that know how to form the
/// increment directly (power series, exact De Rham evaluation) supply it and
/// are flagged `exact_increments()`; the estimators then trust increments down
/// to relative rounding instead of absolute rounding of f.
class RealFunction {
public:
  using Eval = std::function<double(double)>;
  /// Returns f(x + h) - f(x); h may be negative.
  using Increment = std::function<double(double x, double h)>;

  RealFunction();
  explicit RealFunction(Eval eval, std::string name = {});
  RealFunction(Eval eval, Increment increment, std::string name = {});

  double operator()(double x) const { return impl_->eval(x); }
  double increment(double x, double h) const;
  bool exact_increments() const { return static_cast<bool>(impl_->increment); }

  /// Absolute rounding-noise estimate for an increment `delta` = increment(x, h).
  double increment_noise(double x, double h, double delta) const;

  const std::string& name() const { return impl_->name; }

  static RealFunction constant(double c);
  static RealFunction identity();
  static RealFunction affine(double slope, double offset);

private:
  struct Impl {
    Eval eval;
    Increment increment;
    std::string name;
  };
  std::shared_ptr<const Impl> impl_;
};

RealFunction operator+(const RealFunction& f, const RealFunction& g);
RealFunction operator-(const RealFunction& f, const RealFunction& g);
RealFunction operator*(const RealFunction& f, const RealFunction& g);
RealFunction operator/(const RealFunction& f, const RealFunction& g);
RealFunction operator*(double c, const RealFunction& f);

/// outer(inner(x)).
RealFunction compose(const RealFunction& outer, const RealFunction& inner);

/// Ridders-extrapolated central difference starting at step `h`.
/// Throws DegenerateDerivative when the result is not finite.
double numeric_derivative(const RealFunction& f, double x, double h);

} // namespace fracvel
