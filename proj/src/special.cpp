#include "fracvel/special.hpp"

#include "fracvel/types.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace fracvel {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

} // namespace

double gamma(double x) {
  if (x == std::floor(x) && x <= 0.0)
    throw DomainError("gamma: pole at non-positive integer");
  if (x < 0.5)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  x -= 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    sum += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * sum;
}

double beta_function(double a, double b) {
  return gamma(a) * gamma(b) / gamma(a + b);
}

} // namespace fracvel
