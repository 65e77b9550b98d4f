#include "fracvel/fanalytic.hpp"
#include "fracvel/lfd.hpp"
#include "fracvel/singular_ifs.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracvel;

namespace {

RealFunction power(double alpha, double at = 0.0) {
  return as_function(FractionalPowerSeries(0.0, {{1.0, -at, alpha}}));
}

RealFunction singular_power(double p) {
  return RealFunction([p](double t) { return std::pow(t, p); }, "t^p");
}

} // namespace

TEST_CASE("Riemann-Liouville integral of powers") {
  const RealFunction one = RealFunction::constant(1.0);
  for (double beta : {0.3, 0.5, 1.0}) {
    for (double x : {0.5, 1.0, 2.0}) {
      INFO("beta=" << beta << " x=" << x);
      CHECK(rl_integral(one, 0.0, x, beta, Side::forward) ==
            doctest::Approx(std::pow(x, beta) / std::tgamma(1.0 + beta)).epsilon(1e-10));
      CHECK(rl_integral(RealFunction::identity(), 0.0, x, beta, Side::forward) ==
            doctest::Approx(std::pow(x, 1.0 + beta) / std::tgamma(2.0 + beta)).epsilon(1e-10));
      // I^beta t^(1/2) = Gamma(3/2) / Gamma(3/2 + beta) t^(1/2 + beta).
      CHECK(rl_integral(power(0.5), 0.0, x, beta, Side::forward) ==
            doctest::Approx(std::tgamma(1.5) / std::tgamma(1.5 + beta) * std::pow(x, 0.5 + beta)).epsilon(1e-9));
    }
  }
  // Right integral mirrors the left one.
  CHECK(rl_integral(one, 1.0, 0.25, 0.4, Side::backward) ==
        doctest::Approx(std::pow(0.75, 0.4) / std::tgamma(1.4)).epsilon(1e-10));
  CHECK_THROWS_AS(rl_integral(one, 0.5, 0.5, 0.4, Side::forward), DomainError);
  CHECK_THROWS_AS(rl_integral(one, 0.0, 0.5, 0.4, Side::backward), DomainError);
  CHECK_THROWS_AS(rl_integral(one, 0.0, 0.5, 1.5, Side::forward), ParamError);
}

TEST_CASE("semigroup of integrals") {
  const RealFunction f = singular_power(0.3);
  const RealFunction inner([&f](double t) { return t > 0.0 ? rl_integral(f, 0.0, t, 0.4, Side::forward) : 0.0; });
  for (double x : {0.3, 0.8})
    CHECK(rl_integral(inner, 0.0, x, 0.3, Side::forward) ==
          doctest::Approx(rl_integral(f, 0.0, x, 0.7, Side::forward)).epsilon(1e-8));
}

TEST_CASE("Riemann-Liouville derivative of powers") {
  for (double beta : {0.3, 0.6}) {
    for (double x : {0.25, 0.8}) {
      INFO("beta=" << beta << " x=" << x);
      CHECK(rl_derivative(RealFunction::constant(1.0), 0.0, x, beta, Side::forward) ==
            doctest::Approx(std::pow(x, -beta) / std::tgamma(1.0 - beta)).epsilon(1e-7));
      const double g = 0.7;
      CHECK(rl_derivative(singular_power(g), 0.0, x, beta, Side::forward) ==
            doctest::Approx(std::tgamma(1.0 + g) / std::tgamma(1.0 + g - beta) * std::pow(x, g - beta))
                .epsilon(1e-7));
    }
  }
  // Right derivative of a - t from a = 1.
  const RealFunction ramp = RealFunction::affine(-1.0, 1.0);
  CHECK(rl_derivative(ramp, 1.0, 0.5, 0.4, Side::backward) ==
        doctest::Approx(std::pow(0.5, 0.6) / std::tgamma(1.6)).epsilon(1e-7));
}

TEST_CASE("derivative inverts the integral") {
  const RealFunction f = singular_power(0.3);
  const RealFunction integral([&f](double t) { return rl_integral(f, 0.0, t, 0.5, Side::forward); });
  for (double x : {0.25, 0.5})
    CHECK(rl_derivative(integral, 0.0, x, 0.5, Side::forward) == doctest::Approx(f(x)).epsilon(1e-6));
}

TEST_CASE("the reconstruction fails for t^(alpha - 1)") {
  const double alpha = 0.6;
  const RealFunction h = singular_power(alpha - 1.0);
  for (double x : {0.25, 0.5, 1.0}) {
    // I^(1 - alpha) h is the constant Gamma(alpha) and D^alpha h vanishes.
    CHECK(rl_integral(h, 0.0, x, 1.0 - alpha, Side::forward) == doctest::Approx(std::tgamma(alpha)).epsilon(1e-8));
    CHECK(std::abs(rl_derivative(h, 0.0, x, alpha, Side::forward)) <= 1e-6);
  }
  // D(I h) = h: I^alpha h = Gamma(alpha) / Gamma(2 alpha) t^(2 alpha - 1).
  const double c = std::tgamma(alpha) / std::tgamma(2.0 * alpha);
  const RealFunction ih([c, alpha](double t) { return c * std::pow(t, 2.0 * alpha - 1.0); });
  for (double x : {0.25, 0.5}) {
    CHECK(rl_integral(h, 0.0, x, alpha, Side::forward) == doctest::Approx(ih(x)).epsilon(1e-8));
    CHECK(rl_derivative(ih, 0.0, x, alpha, Side::forward) == doctest::Approx(h(x)).epsilon(1e-6));
  }
  // D h vanishes across the interval, so I(D h) = I(0) = 0, which is not h.
  for (int k = 1; k <= 8; ++k)
    CHECK(std::abs(rl_derivative(h, 0.0, k / 8.0, alpha, Side::forward)) <= 1e-6);
  CHECK(rl_integral(RealFunction::constant(0.0), 0.0, 0.5, alpha, Side::forward) == 0.0);
  CHECK(h(0.5) > 1.0);
}

TEST_CASE("integral average") {
  const double beta = 0.5;
  for (double h : {1.0, 1e-3}) {
    CHECK(integral_average(power(beta), 0.0, h, beta) ==
          doctest::Approx(std::pow(h, beta) * std::tgamma(1.0 + beta) * std::tgamma(1.0 - beta)).epsilon(1e-9));
    CHECK(integral_average(RealFunction::identity(), 0.3, h, beta) ==
          doctest::Approx(h / ((1.0 - beta) * (2.0 - beta))).epsilon(1e-10));
  }
  CHECK(integral_average(RealFunction::constant(2.0), 0.3, 0.1, beta) == 0.0);
  // Backward average of (-t)_+^(1/2) at 0 sees f(0) - f(-h u) = -sqrt(h u).
  const RealFunction left = as_function(FractionalPowerSeries(0.0, {{1.0, 0.0, 0.5}}, SeriesSign::minus));
  CHECK(integral_average(left, 0.0, 0.04, beta, {}, Side::backward) ==
        doctest::Approx(-0.2 * std::tgamma(1.5) * std::tgamma(0.5)).epsilon(1e-9));
  CHECK_THROWS_AS(integral_average(RealFunction::identity(), 0.0, 0.0, beta), ParamError);
}

TEST_CASE("local fractional derivative of powers") {
  for (double beta : {0.3, 0.5, 0.7}) {
    const LFDResult r = kg_lfd(power(beta), 0.0, beta, Side::forward);
    INFO("beta=" << beta);
    CHECK(r.classification == Classification::finite);
    CHECK(r.value == doctest::Approx(std::tgamma(1.0 + beta)).epsilon(1e-6));
    CHECK(r.m_samples.size() == 40);
  }
  const RealFunction sq([](double x) { return x * x; });
  CHECK(kg_lfd(sq, 0.5, 0.5, Side::forward).classification == Classification::zero);
  CHECK(kg_lfd(power(0.3), 0.0, 0.5, Side::forward).classification == Classification::divergent);
  const LFDResult flat = kg_lfd(RealFunction::constant(1.0), 0.2, 0.5, Side::forward);
  CHECK(flat.exists());
  CHECK(flat.value == 0.0);
}

TEST_CASE("derivative form agrees with the average form") {
  for (double beta : {0.3, 0.5, 0.7}) {
    const RealFunction f = power(beta);
    const RealFunction df([beta](double t) { return t > 0.0 ? beta * std::pow(t, beta - 1.0) : 0.0; });
    const LFDResult bv = kg_lfd_bv(f, df, 0.0, beta);
    INFO("beta=" << beta);
    CHECK(bv.classification == Classification::finite);
    CHECK(bv.value == doctest::Approx(kg_lfd(f, 0.0, beta, Side::forward).value).epsilon(1e-6));
  }
  const RealFunction f = as_function(FractionalPowerSeries(0.0, {{1.0, 0.0, 0.75}}));
  const RealFunction df([](double t) { return t > 0.0 ? 0.75 * std::pow(t, -0.25) : 0.0; });
  CHECK(kg_lfd_bv(f, df, 0.0, 0.5).classification == Classification::zero);
  const RealFunction line = RealFunction::identity();
  CHECK(kg_lfd_bv(line, RealFunction::constant(1.0), 0.4, 0.5).classification == Classification::zero);
}

TEST_CASE("velocity and local fractional derivative are proportional") {
  for (double beta : {0.3, 0.5, 0.8}) {
    const RealFunction f = as_function(FractionalPowerSeries(0.0, {{2.0, 0.0, beta}, {1.0, 0.0, 1.0}}));
    const EquivalenceReport r = equivalence_report(f, 0.0, beta, Side::forward);
    INFO("beta=" << beta);
    CHECK(r.velocity.value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r.gamma_ratio == doctest::Approx(std::tgamma(1.0 + beta)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(equivalence_report(RealFunction::constant(1.0), 0.0, 0.5, Side::forward), RatioUndefined);
  CHECK_THROWS_AS(equivalence_report(power(0.3), 0.0, 0.5, Side::forward), RatioUndefined);
}

TEST_CASE("equivalence at a dyadic point of the De Rham function") {
  // The integrand is only Holder continuous, so Gauss rules converge
  // algebraically and the quadrature target is relaxed accordingly.
  QuadratureConfig q;
  q.tolerance = 1e-4;
  q.max_nodes = 1024;
  const RealFunction f = derham_function(1.0 / std::sqrt(2.0));
  for (double x : {0.0, 0.5}) {
    const EquivalenceReport r = equivalence_report(f, x, 0.5, Side::forward, {}, q);
    INFO("x=" << x << " ratio=" << r.gamma_ratio);
    CHECK(std::abs(r.gamma_ratio - std::tgamma(1.5)) <= 5e-2);
  }
}

TEST_CASE("nonzero local derivatives are isolated") {
  // Each fixture has a one-sided branch at the probe and a smooth term
  // (x + 1)^k that keeps it nonconstant on both flanks.
  struct Fixture {
    RealFunction f;
    double at;
    double beta;
  };
  const Fixture corpus[] = {
      {as_function(FractionalPowerSeries(0.0, {{1.0, 0.0, 0.5}, {1.0, 1.0, 1.0}})), 0.0, 0.5},
      {as_function(FractionalPowerSeries(1.0, {{-2.0, -0.5, 0.3}, {1.0, 1.0, 1.0}})), 0.5, 0.3},
      {as_function(FractionalPowerSeries(0.0, {{1.0, -0.25, 0.7}, {1.0, 1.0, 2.0}})), 0.25, 0.7},
  };
  // Flanking points are probed at scales below their distance to the probe.
  QuadratureConfig near;
  near.h_schedule.eps0 = 1.0 / 256.0;
  for (const Fixture& c : corpus) {
    const LFDResult at = kg_lfd(c.f, c.at, c.beta, Side::forward);
    REQUIRE(at.classification == Classification::finite);
    REQUIRE(at.value != 0.0);
    for (double offset : {-0.01, 0.01}) {
      INFO("probe=" << c.at << " offset=" << offset);
      CHECK(kg_lfd(c.f, c.at + offset, c.beta, Side::forward, near).classification == Classification::zero);
    }
  }
}

TEST_CASE("backward local derivative") {
  const RealFunction left = as_function(FractionalPowerSeries(0.0, {{1.0, 0.0, 0.5}}, SeriesSign::minus));
  const LFDResult r = kg_lfd(left, 0.0, 0.5, Side::backward);
  CHECK(r.classification == Classification::finite);
  CHECK(r.value == doctest::Approx(-std::tgamma(1.5)).epsilon(1e-6));
}
