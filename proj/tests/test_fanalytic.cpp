#include "fracvel/fanalytic.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace fracvel;

namespace {

FractionalPowerSeries monomial(double alpha, double c = 1.0, double center = 0.0) {
  return FractionalPowerSeries(0.0, {{c, center, alpha}});
}

} // namespace

TEST_CASE("eval of simple series") {
  CHECK(eval(monomial(0.5), 4.0) == doctest::Approx(2.0));
  CHECK(eval(FractionalPowerSeries(3.0), 17.0) == 3.0);
  const FractionalPowerSeries s(0.0, {{2.0, -1.0, 0.5}, {1.0, -1.0, 1.0}});
  CHECK(eval(s, 1.25) == doctest::Approx(2.0 * std::sqrt(0.25) + 0.25));
}

TEST_CASE("eval rejects negative bases") {
  CHECK_THROWS_AS(eval(monomial(0.5), -0.25), DomainError);
  CHECK_THROWS_AS(eval(monomial(0.5, 1.0, -1.0), 0.5), DomainError);
  // The minus convention reflects the argument.
  const FractionalPowerSeries m(0.0, {{1.0, 1.0, 0.5}}, SeriesSign::minus);
  CHECK(eval(m, 0.75) == doctest::Approx(0.5));
  CHECK_THROWS_AS(eval(m, 1.5), DomainError);
}

TEST_CASE("eval works with automatic differentiation") {
  using Dual = Eigen::AutoDiffScalar<Eigen::Matrix<double, 1, 1>>;
  const FractionalPowerSeries s(1.0, {{2.0, 0.0, 0.5}, {-1.0, 0.5, 1.5}});
  const double x = 0.3;
  const Dual v = eval(s, Dual(x, 1, 0));
  const double expected = 2.0 * 0.5 / std::sqrt(x) - 1.5 * std::sqrt(x + 0.5);
  CHECK(v.value() == doctest::Approx(eval(s, x)));
  CHECK(v.derivatives()(0) == doctest::Approx(expected));
}

TEST_CASE("construction normalizes terms") {
  CHECK_THROWS_AS(FractionalPowerSeries(0.0, {{1.0, 0.0, 0.0}}), ParamError);
  CHECK_THROWS_AS(FractionalPowerSeries(0.0, {{1.0, 0.0, -0.5}}), ParamError);
  const FractionalPowerSeries s(0.0, {{1.0, 0.0, 1.0}, {1.0, 0.0, 0.5}, {-1.0, 0.0, 1.0}});
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].exponent == 0.5);
}

TEST_CASE("closed-form velocity at a branch point") {
  const FractionalPowerSeries s = monomial(0.5);
  const VelocityEstimate fwd = closed_form_velocity(s, 0.0, 0.5, Side::forward);
  CHECK(fwd.classification == Classification::finite);
  CHECK(fwd.value == 1.0);
  const VelocityEstimate bwd = closed_form_velocity(s, 0.0, 0.5, Side::backward);
  CHECK(bwd.classification == Classification::finite);
  CHECK(bwd.value == 0.0);
  CHECK(closed_form_velocity(s, 0.0, 0.3, Side::forward).classification == Classification::zero);
  CHECK(closed_form_velocity(s, 0.0, 0.7, Side::forward).classification == Classification::divergent);
  // Off-side terms are constant, so a larger order is still harmless there.
  CHECK(closed_form_velocity(s, 0.0, 0.7, Side::backward).classification == Classification::zero);
  CHECK_THROWS_AS(closed_form_velocity(s, -1.0, 0.5, Side::forward), DomainError);
}

TEST_CASE("closed-form velocity at smooth points and order one") {
  const FractionalPowerSeries s(0.0, {{1.0, 0.0, 0.5}, {3.0, 0.0, 1.0}});
  CHECK(closed_form_velocity(s, 0.25, 0.5, Side::forward).classification == Classification::zero);
  const VelocityEstimate d = closed_form_velocity(s, 0.25, 1.0, Side::forward);
  CHECK(d.classification == Classification::finite);
  CHECK(d.value == doctest::Approx(0.5 / std::sqrt(0.25) + 3.0));
}

TEST_CASE("series_add") {
  const FractionalPowerSeries twice = monomial(0.5) + monomial(0.5);
  REQUIRE(twice.terms().size() == 1);
  CHECK(twice.terms()[0].coefficient == 2.0);

  const FractionalPowerSeries with_const = monomial(0.5) + FractionalPowerSeries(1.0);
  CHECK(with_const == FractionalPowerSeries(1.0, {{1.0, 0.0, 0.5}}));

  const FractionalPowerSeries mixed = monomial(1.0) + monomial(0.5);
  REQUIRE(mixed.terms().size() == 2);
  CHECK(mixed.terms()[0].exponent == 0.5);
  CHECK(mixed.terms()[1].exponent == 1.0);

  const FractionalPowerSeries minus(0.0, {{1.0, 1.0, 0.5}}, SeriesSign::minus);
  CHECK_THROWS_AS(monomial(0.5) + minus, ParamError);
}

TEST_CASE("holder_spectrum") {
  CHECK(holder_spectrum(monomial(0.5) + monomial(1.0)) == std::vector<double>{0.5, 1.0});
  CHECK(holder_spectrum(FractionalPowerSeries(2.0)).empty());
  const FractionalPowerSeries s = monomial(1.0 / 3.0, 2.0) + monomial(2.0 / 3.0);
  CHECK(holder_spectrum(s) == std::vector<double>{1.0 / 3.0, 2.0 / 3.0});
}

TEST_CASE("eval distributes over series_add") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto random_series = [&] {
      std::vector<PowerTerm> terms;
      for (int k = 0; k < 3; ++k)
        terms.push_back({u(rng) * 4.0 - 2.0, std::floor(u(rng) * 4.0) / 4.0, 0.1 + 0.9 * u(rng)});
      return FractionalPowerSeries(u(rng), terms);
    };
    const FractionalPowerSeries a = random_series();
    const FractionalPowerSeries b = random_series();
    for (double x : {0.0, 0.1, 0.5, 0.9}) {
      const double lhs = eval(a + b, x);
      const double rhs = eval(a, x) + eval(b, x);
      const double scale = std::abs(eval(a, x)) + std::abs(eval(b, x)) + 1.0;
      CHECK(std::abs(lhs - rhs) <= 8.0 * std::numeric_limits<double>::epsilon() * scale);
    }
  }
}

TEST_CASE("closed form agrees with the numeric estimator on a random corpus") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int compared = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const double x = std::floor(u(rng) * 8.0) / 8.0;
    const double lead = 0.25 + 0.5 * u(rng);
    const double second = std::min(1.0, lead + 0.15 + 0.2 * u(rng));
    const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
    // Vanishing-base terms at x and a smooth term whose center sits on the grid.
    const FractionalPowerSeries s(u(rng), {{sign * (0.5 + 1.5 * u(rng)), -x, lead},
                                           {0.5 + 1.5 * u(rng), -x, second},
                                           {0.5 + 1.5 * u(rng), 0.5, 0.5 + 0.5 * u(rng)}});
    const RealFunction f = as_function(s);
    for (double beta : {lead - 0.1, lead, lead + 0.1}) {
      if (!(beta > 0.0 && beta <= 1.0))
        continue;
      const VelocityEstimate exact = closed_form_velocity(s, x, beta, Side::forward);
      const VelocityEstimate numeric = estimate_velocity(f, x, beta, Side::forward);
      INFO("x=" << x << " lead=" << lead << " beta=" << beta);
      CHECK(numeric.classification == exact.classification);
      if (exact.classification == Classification::finite)
        CHECK(std::abs(numeric.value - exact.value) <= 1e-3);
      ++compared;
    }
  }
  CHECK(compared >= 60);
}

TEST_CASE("existence below the leading exponent, divergence above") {
  for (double alpha : {0.3, 0.5, 0.8}) {
    const FractionalPowerSeries s = monomial(alpha, -1.5) + monomial(std::min(1.0, alpha + 0.2));
    CHECK(closed_form_velocity(s, 0.0, alpha - 0.05, Side::forward).classification == Classification::zero);
    if (alpha + 0.05 <= 1.0)
      CHECK(closed_form_velocity(s, 0.0, alpha + 0.05, Side::forward).classification == Classification::divergent);
  }
}

TEST_CASE("as_function uses the one-sided extension") {
  const RealFunction f = as_function(monomial(0.5, 1.0, -0.5));
  CHECK(f(0.25) == 0.0);
  CHECK(f(0.75) == doctest::Approx(0.5));
  CHECK(f.exact_increments());
  CHECK(f.increment(0.75, 1e-12) == doctest::Approx(0.5 * 1e-12 / 0.5).epsilon(1e-9));
}
