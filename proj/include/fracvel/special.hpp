#pragma once

namespace fracvel {

/// Euler Gamma function (Lanczos approximation, g = 7, nine terms; reflection below 1/2).
/// Relative accuracy is better than 1e-13 on the positive axis.
double gamma(double x);

/// Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta_function(double a, double b);

} // namespace fracvel
