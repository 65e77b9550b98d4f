#pragma once

#include "fracvel/types.hpp"

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace fracvel {

/// Sign law of the fractional coefficient B_k.
enum class SignProcess { alternating, random_sign, constant };

std::string_view to_string(SignProcess p);
SignProcess parse_sign_process(std::string_view text);

struct PathSpec {
  using Drift = std::function<double(double x, double t)>;

  double beta = 0.5;
  int steps = 1024;
  double dt = 1.0 / 1024.0;
  Drift drift = [](double, double) { return 0.0; };
  double noise_amp = 1.0;
  SignProcess oscillation = SignProcess::alternating;
  std::uint64_t seed = 0;
  double x0 = 0.0;
  /// Upper bound on steps * dt.
  double horizon = 1e6;

  void validate() const;
};

/// Nodes (t_k, x_k) of x_{k+1} = x_k + a_k dt + B_k dt^beta. When generated,
/// the per-step coefficients are kept so that the path can be read as the
/// continuous interpolant x_k + a_k s + B_k s^beta on each step.
struct Path {
  double beta = 1.0;
  std::vector<double> t;
  std::vector<double> x;
  /// Per-step drift a_k and fractional coefficient B_k (empty for raw data).
  std::vector<double> drift;
  std::vector<double> noise;

  std::size_t size() const { return t.size(); }
  bool has_local_law() const { return !drift.empty() && drift.size() + 1 == t.size(); }
};

Path generate_path(const PathSpec& spec);

struct ScalingCheck {
  /// Increment over one macro step of length 1, divided by 1^beta.
  double lhs;
  /// Increment over N micro steps of length 1/N, divided by 1^beta.
  double rhs;
  /// rhs / lhs, or 1 when B = 0.
  double ratio;
  bool zero_coefficient;
};

/// Refinement of one unit macro step into N micro steps with a = 0. For a
/// constant coefficient the ratio is N^(1-beta); the alternating law
/// cancels in pairs.
ScalingCheck partition_scaling_check(double b, double beta, int n, SignProcess process = SignProcess::constant);

struct HolderExponent {
  double exponent;
  bool defined;
};

/// Median over interior probe nodes (5% margins excluded) of the log-log
/// slope of |x(t_k + s) - x(t_k)| against s. Generated paths use the local
/// law with s = dt 2^-j, j = 0..20; raw paths use node lags 1, 2, 4, ....
/// Throws InsufficientData when the path has fewer than 2 * probes nodes.
HolderExponent path_holder_exponent(const Path& path, int probes);

} // namespace fracvel
