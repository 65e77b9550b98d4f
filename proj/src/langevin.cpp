#include "fracvel/langevin.hpp"

#include "fracvel/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace fracvel {

namespace {

constexpr double kMargin = 0.05;
constexpr int kSubScales = 21;

double sign_at(SignProcess p, int k, std::mt19937_64& rng) {
  switch (p) {
  case SignProcess::alternating:
    return k % 2 == 0 ? 1.0 : -1.0;
  case SignProcess::random_sign:
    return (rng() >> 63) != 0 ? 1.0 : -1.0;
  case SignProcess::constant:
    return 1.0;
  }
  return 1.0;
}

} // namespace

std::string_view to_string(SignProcess p) {
  switch (p) {
  case SignProcess::alternating:
    return "alternating";
  case SignProcess::random_sign:
    return "random_sign";
  case SignProcess::constant:
    return "constant";
  }
  return "alternating";
}

SignProcess parse_sign_process(std::string_view text) {
  if (text == "alternating")
    return SignProcess::alternating;
  if (text == "random_sign" || text == "random-sign" || text == "random")
    return SignProcess::random_sign;
  if (text == "constant")
    return SignProcess::constant;
  throw ParamError("unknown oscillation mode '" + std::string(text) + "'");
}

void PathSpec::validate() const {
  if (!(beta > 0.0 && beta <= 1.0))
    throw ParamError("path order must lie in (0, 1]");
  if (steps < 1)
    throw ParamError("path needs at least one step");
  if (!(dt > 0.0))
    throw ParamError("time step must be positive");
  if (!(noise_amp >= 0.0))
    throw ParamError("noise amplitude must be nonnegative");
  if (steps * dt > horizon)
    throw ParamError("steps * dt exceeds the horizon");
  if (!drift)
    throw ParamError("drift function is empty");
}

Path generate_path(const PathSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const double dt_beta = std::pow(spec.dt, spec.beta);
  Path path;
  path.beta = spec.beta;
  path.t.reserve(spec.steps + 1);
  path.x.reserve(spec.steps + 1);
  path.drift.reserve(spec.steps);
  path.noise.reserve(spec.steps);
  double x = spec.x0;
  path.t.push_back(0.0);
  path.x.push_back(x);
  for (int k = 0; k < spec.steps; ++k) {
    const double t = k * spec.dt;
    const double a = spec.drift(x, t);
    const double b = spec.noise_amp * sign_at(spec.oscillation, k, rng);
    x += a * spec.dt + b * dt_beta;
    path.drift.push_back(a);
    path.noise.push_back(b);
    path.t.push_back((k + 1) * spec.dt);
    path.x.push_back(x);
  }
  return path;
}

ScalingCheck partition_scaling_check(double b, double beta, int n, SignProcess process) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw ParamError("order must lie in (0, 1]");
  if (n < 2)
    throw ParamError("partition needs N >= 2");
  if (b == 0.0)
    return {0.0, 0.0, 1.0, true};
  std::mt19937_64 rng(0);
  // Unit macro step: Delta x = B * 1^beta. Refined: sum_k B_k (1/N)^beta.
  const double micro = std::pow(static_cast<double>(n), -beta);
  double refined = 0.0;
  for (int k = 0; k < n; ++k)
    refined += b * sign_at(process, k, rng) * micro;
  return {b, refined, refined / b, false};
}

HolderExponent path_holder_exponent(const Path& path, int probes) {
  if (probes < 1)
    throw ParamError("at least one probe is needed");
  const auto n = path.size();
  if (n < 2 * static_cast<std::size_t>(probes) || n < 2)
    throw InsufficientData("path has fewer than 2 * probes nodes");

  const auto first = static_cast<std::size_t>(std::ceil(kMargin * static_cast<double>(n - 1)));
  const auto last = static_cast<std::size_t>(std::floor((1.0 - kMargin) * static_cast<double>(n - 1)));
  std::vector<double> slopes;
  for (int i = 0; i < probes; ++i) {
    const double frac = probes == 1 ? 0.5 : static_cast<double>(i) / (probes - 1);
    auto k = first + static_cast<std::size_t>(std::llround(frac * static_cast<double>(last - first)));
    k = std::min(k, n - 2);
    std::vector<double> scales;
    std::vector<double> increments;
    if (path.has_local_law()) {
      const double dt = path.t[k + 1] - path.t[k];
      for (int j = 0; j < kSubScales; ++j) {
        const double s = std::ldexp(dt, -j);
        scales.push_back(s);
        increments.push_back(path.drift[k] * s + path.noise[k] * std::pow(s, path.beta));
      }
    } else {
      for (std::size_t lag = 1; k + lag < n; lag *= 2) {
        scales.push_back(path.t[k + lag] - path.t[k]);
        increments.push_back(path.x[k + lag] - path.x[k]);
      }
    }
    const double slope = fit_loglog_slope(scales, increments);
    if (std::isfinite(slope))
      slopes.push_back(slope);
  }
  if (slopes.empty())
    return {std::nan(""), false};
  const auto mid = slopes.begin() + static_cast<std::ptrdiff_t>(slopes.size() / 2);
  std::nth_element(slopes.begin(), mid, slopes.end());
  double median = *mid;
  if (slopes.size() % 2 == 0)
    median = 0.5 * (median + *std::max_element(slopes.begin(), mid));
  return {median, true};
}

} // namespace fracvel
