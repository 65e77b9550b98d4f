#include "fracvel/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace fracvel;

namespace {

double beta_oracle(double a, double b) { return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b); }

double integrate(const GaussRule& r, auto&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    s += r.weights[i] * f(r.nodes[i]);
  return s;
}

QuadratureConfig with_scheme(QuadratureScheme scheme) {
  QuadratureConfig q;
  q.scheme = scheme;
  return q;
}

} // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const auto rule = gauss_legendre(5);
  REQUIRE(rule->nodes.size() == 5);
  for (int k = 0; k <= 9; ++k) {
    const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(integrate(*rule, [k](double s) { return std::pow(s, k); }) - exact) <= 1e-14);
  }
  for (std::size_t i = 1; i < rule->nodes.size(); ++i)
    CHECK(rule->nodes[i - 1] < rule->nodes[i]);
}

TEST_CASE("Gauss-Jacobi moments") {
  for (double alpha : {-0.5, 0.3, 1.5}) {
    for (double beta : {-0.3, 0.0, 0.7}) {
      const auto rule = gauss_jacobi(8, alpha, beta);
      const double scale = std::pow(2.0, alpha + beta + 1.0);
      INFO("alpha=" << alpha << " beta=" << beta);
      CHECK(integrate(*rule, [](double) { return 1.0; }) ==
            doctest::Approx(scale * beta_oracle(alpha + 1.0, beta + 1.0)).epsilon(1e-13));
      // (1 + s)^3 raises the second exponent by 3.
      CHECK(integrate(*rule, [](double s) { return std::pow(1.0 + s, 3); }) ==
            doctest::Approx(8.0 * scale * beta_oracle(alpha + 1.0, beta + 4.0)).epsilon(1e-13));
    }
  }
  CHECK(gauss_jacobi(8, 0.3, 0.7) == gauss_jacobi(8, 0.3, 0.7));
  CHECK_THROWS_AS(gauss_jacobi(8, -1.0, 0.0), ParamError);
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), ParamError);
}

TEST_CASE("singular weight integral of powers") {
  for (QuadratureScheme scheme : {QuadratureScheme::substitution, QuadratureScheme::jacobi_weight}) {
    const QuadratureConfig q = with_scheme(scheme);
    for (double gamma : {-0.5, 0.0, 0.3, 0.9}) {
      INFO("scheme=" << to_string(scheme) << " gamma=" << gamma);
      CHECK(singular_weight_integral([](double) { return 1.0; }, gamma, q) ==
            doctest::Approx(1.0 / (1.0 - gamma)).epsilon(1e-10));
      CHECK(singular_weight_integral([](double u) { return u * u; }, gamma, q) ==
            doctest::Approx(beta_oracle(3.0, 1.0 - gamma)).epsilon(1e-10));
    }
  }
}

TEST_CASE("substitution resolves a singularity at the lower end") {
  const QuadratureConfig q;
  for (double gamma : {0.0, 0.4, 0.8})
    for (double p : {-0.4, 0.5})
      CHECK(singular_weight_integral([p](double u) { return std::pow(u, p); }, gamma, q) ==
            doctest::Approx(beta_oracle(p + 1.0, 1.0 - gamma)).epsilon(1e-9));
}

TEST_CASE("smooth integrand against a series oracle") {
  // int cos(u) (1 - u)^-gamma = sum (-1)^k / (2k)! B(2k + 1, 1 - gamma).
  const double gamma = 0.6;
  double oracle = 0.0;
  double factorial = 1.0;
  for (int k = 0; k < 12; ++k) {
    if (k > 0)
      factorial *= (2.0 * k - 1.0) * (2.0 * k);
    oracle += (k % 2 == 0 ? 1.0 : -1.0) / factorial * beta_oracle(2.0 * k + 1.0, 1.0 - gamma);
  }
  for (QuadratureScheme scheme : {QuadratureScheme::substitution, QuadratureScheme::jacobi_weight})
    CHECK(singular_weight_integral([](double u) { return std::cos(u); }, gamma, with_scheme(scheme)) ==
          doctest::Approx(oracle).epsilon(1e-11));
}

TEST_CASE("quadrature failures") {
  QuadratureConfig q;
  q.nodes = 8;
  q.max_nodes = 8;
  CHECK_THROWS_AS(singular_weight_integral([](double u) { return std::sin(200.0 / (u + 1e-3)); }, 0.5, q),
                  QuadratureError);
  CHECK_THROWS_AS(
      singular_weight_integral([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.5, {}),
      QuadratureError);
  CHECK_THROWS_AS(singular_weight_integral([](double) { return 1.0; }, 1.0, {}), ParamError);
}

TEST_CASE("configuration") {
  QuadratureConfig q;
  CHECK_NOTHROW(q.validate());
  q.nodes = 4;
  CHECK_THROWS_AS(q.validate(), ParamError);
  q = {};
  q.max_nodes = 8;
  CHECK_THROWS_AS(q.validate(), ParamError);
  CHECK(parse_scheme("jacobi_weight") == QuadratureScheme::jacobi_weight);
  CHECK(to_string(QuadratureScheme::substitution) == "substitution");
  CHECK_THROWS_AS(parse_scheme("simpson"), ParamError);
}
