#include "fracvel/real_function.hpp"

#include "fracvel/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace fracvel {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon();

} // namespace

std::string_view to_string(Side side) {
  return side == Side::forward ? "forward" : "backward";
}

std::string_view to_string(Classification c) {
  switch (c) {
  case Classification::zero:
    return "zero";
  case Classification::finite:
    return "finite";
  case Classification::divergent:
    return "divergent";
  case Classification::inconclusive:
    return "inconclusive";
  }
  return "inconclusive";
}

Side parse_side(std::string_view text) {
  if (text == "forward" || text == "+")
    return Side::forward;
  if (text == "backward" || text == "-")
    return Side::backward;
  throw ParamError("unknown side '" + std::string(text) + "'");
}

RealFunction::RealFunction() : RealFunction(Eval([](double) { return 0.0; }), Increment([](double, double) { return 0.0; }), "0") {}

RealFunction::RealFunction(Eval eval, std::string name)
    : impl_(std::make_shared<const Impl>(Impl{std::move(eval), {}, std::move(name)})) {}

RealFunction::RealFunction(Eval eval, Increment increment, std::string name)
    : impl_(std::make_shared<const Impl>(Impl{std::move(eval), std::move(increment), std::move(name)})) {}

double RealFunction::increment(double x, double h) const {
  if (impl_->increment)
    return impl_->increment(x, h);
  return impl_->eval(x + h) - impl_->eval(x);
}

double RealFunction::increment_noise(double x, double h, double delta) const {
  if (impl_->increment)
    return 8.0 * kUnitRoundoff * std::abs(delta);
  const double scale = std::max(std::abs(impl_->eval(x)), std::abs(impl_->eval(x + h)));
  return 4.0 * kUnitRoundoff * scale;
}

RealFunction RealFunction::constant(double c) {
  return RealFunction([c](double) { return c; }, [](double, double) { return 0.0; }, "const");
}

RealFunction RealFunction::identity() {
  return RealFunction([](double x) { return x; }, [](double, double h) { return h; }, "x");
}

RealFunction RealFunction::affine(double slope, double offset) {
  return RealFunction([=](double x) { return slope * x + offset; }, [=](double, double h) { return slope * h; }, "affine");
}

RealFunction operator+(const RealFunction& f, const RealFunction& g) {
  RealFunction::Eval eval = [f, g](double x) { return f(x) + g(x); };
  if (f.exact_increments() && g.exact_increments())
    return RealFunction(eval, [f, g](double x, double h) { return f.increment(x, h) + g.increment(x, h); }, "sum");
  return RealFunction(eval, "sum");
}

RealFunction operator-(const RealFunction& f, const RealFunction& g) {
  return f + (-1.0) * g;
}

RealFunction operator*(double c, const RealFunction& f) {
  RealFunction::Eval eval = [c, f](double x) { return c * f(x); };
  if (f.exact_increments())
    return RealFunction(eval, [c, f](double x, double h) { return c * f.increment(x, h); }, "scaled");
  return RealFunction(eval, "scaled");
}

RealFunction operator*(const RealFunction& f, const RealFunction& g) {
  RealFunction::Eval eval = [f, g](double x) { return f(x) * g(x); };
  if (f.exact_increments() && g.exact_increments()) {
    // f(x+h)g(x+h) - f(x)g(x) = df * g(x+h) + f(x) * dg
    return RealFunction(
        eval, [f, g](double x, double h) { return f.increment(x, h) * g(x + h) + f(x) * g.increment(x, h); },
        "product");
  }
  return RealFunction(eval, "product");
}

RealFunction operator/(const RealFunction& f, const RealFunction& g) {
  RealFunction::Eval eval = [f, g](double x) { return f(x) / g(x); };
  if (f.exact_increments() && g.exact_increments()) {
    return RealFunction(
        eval,
        [f, g](double x, double h) {
          const double g0 = g(x);
          return (f.increment(x, h) * g0 - f(x) * g.increment(x, h)) / (g0 * g(x + h));
        },
        "quotient");
  }
  return RealFunction(eval, "quotient");
}

RealFunction compose(const RealFunction& outer, const RealFunction& inner) {
  RealFunction::Eval eval = [outer, inner](double x) { return outer(inner(x)); };
  if (outer.exact_increments() && inner.exact_increments()) {
    return RealFunction(
        eval, [outer, inner](double x, double h) { return outer.increment(inner(x), inner.increment(x, h)); },
        "compose");
  }
  return RealFunction(eval, "compose");
}

double numeric_derivative(const RealFunction& f, double x, double h) {
  constexpr int kTable = 10;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  constexpr double kSafe = 2.0;

  if (!(h > 0.0))
    throw ParamError("derivative step must be positive");

  std::array<std::array<double, kTable>, kTable> a{};
  auto central = [&](double step) { return f.increment(x - step, 2.0 * step) / (2.0 * step); };

  double step = h;
  a[0][0] = central(step);
  double best = a[0][0];
  double err = std::numeric_limits<double>::max();
  for (int i = 1; i < kTable; ++i) {
    step /= kShrink;
    a[0][i] = central(step);
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= kShrink2;
      const double errt = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (errt <= err) {
        err = errt;
        best = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= kSafe * err)
      break;
  }
  if (!std::isfinite(best))
    throw DegenerateDerivative("numerical derivative is not finite");
  return best;
}

} // namespace fracvel
