#include "fracvel/singular_ifs.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace fracvel {

namespace {

using Dual = Eigen::AutoDiffScalar<Eigen::Matrix<double, 1, 1>>;

constexpr int kDefaultMaxDepth = 64;
constexpr double kOrderTol = 1e-12;
constexpr unsigned kDyadicDigits = 48;

void check_parameter(double a) {
  if (!(a > 0.0 && a < 1.0))
    throw ParamError("IFS parameter must lie in (0, 1)");
}

// 1 - R_a(x) for x in [0, 1]; digit 0: (1 - a) + a * Rbar, digit 1: (1 - a) * Rbar.
double derham_complement(double a, double x) {
  if (x >= 1.0)
    return 0.0;
  double offset = 0.0;
  double scale = 1.0;
  while (x > 0.0) {
    if (x < 0.5) {
      offset += scale * (1.0 - a);
      scale *= a;
      x = 2.0 * x;
    } else {
      scale *= 1.0 - a;
      x = 2.0 * x - 1.0;
    }
  }
  return offset + scale;
}

// R_a(x + h) - R_a(x) for x in [0, 1] and h > 0. The digits of x are consumed
// while x and x + h share a half; doubling h is exact, so the increment keeps
// full relative accuracy even when x + h itself would round.
double derham_forward_increment(double a, double x, double h) {
  double scale = 1.0;
  for (;;) {
    if (x + h >= 1.0)
      return scale * derham_complement(a, x);
    if (x == 0.0)
      return scale * derham_eval(a, h);
    if (x >= 0.5) {
      scale *= 1.0 - a;
      x = 2.0 * x - 1.0;
    } else if (x + h < 0.5) {
      scale *= a;
      x = 2.0 * x;
    } else {
      // x = prefix.0..., x + h = prefix.1...
      return scale * (a * derham_complement(a, 2.0 * x) + (1.0 - a) * derham_eval(a, 2.0 * h - (1.0 - 2.0 * x)));
    }
    h = 2.0 * h;
  }
}

bool is_short_dyadic(double x) {
  return x >= 0.0 && x <= 1.0 && DyadicRational::from_double(x).exp() <= kDyadicDigits;
}

} // namespace

std::string_view to_string(IFSFamily family) {
  switch (family) {
  case IFSFamily::derham:
    return "derham";
  case IFSFamily::derham_reparam:
    return "derham_reparam";
  case IFSFamily::neidinger:
    return "neidinger";
  }
  return "derham";
}

IFSFamily parse_family(std::string_view text) {
  if (text == "derham")
    return IFSFamily::derham;
  if (text == "derham_reparam" || text == "derham-reparam")
    return IFSFamily::derham_reparam;
  if (text == "neidinger")
    return IFSFamily::neidinger;
  throw ParamError("unknown IFS family '" + std::string(text) + "'");
}

SwapParity parse_swap_parity(std::string_view text) {
  if (text == "even")
    return SwapParity::even;
  if (text == "odd")
    return SwapParity::odd;
  throw ParamError("swap parity must be 'even' or 'odd'");
}

int max_ifs_depth() {
  const char* env = std::getenv("FRACVEL_MAX_DEPTH");
  if (env == nullptr || *env == '\0')
    return kDefaultMaxDepth;
  const std::string_view text(env);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < 1)
    throw ParamError("FRACVEL_MAX_DEPTH must be a positive integer");
  return v;
}

void check_depth(int n) {
  if (n < 0)
    throw ParamError("iteration depth must be nonnegative");
  if (n > max_ifs_depth())
    throw DepthError("iteration depth " + std::to_string(n) + " exceeds the maximum " +
                     std::to_string(max_ifs_depth()));
}

BranchMaps level_maps(const IFSSpec& spec, int d) {
  switch (spec.family) {
  case IFSFamily::derham:
    return derham_maps(spec.a);
  case IFSFamily::derham_reparam:
    return derham_maps(std::exp2(-spec.a));
  case IFSFamily::neidinger:
    return derham_maps(neidinger_parameter(spec.a, d, spec.swap_parity));
  }
  return derham_maps(spec.a);
}

double ifs_curve(const IFSSpec& spec, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("IFS curves are defined on [0, 1]");
  switch (spec.family) {
  case IFSFamily::derham:
    check_parameter(spec.a);
    check_depth(spec.depth);
    if (x == 1.0)
      return 1.0;
    return iterate_two_branch(spec.depth, x, [&](int) { return derham_maps(spec.a); }, [](double t) { return t; });
  case IFSFamily::derham_reparam:
    return derham_reparam_iterate(spec.a, spec.depth, x);
  case IFSFamily::neidinger:
    return neidinger_iterate(spec.a, spec.depth, x, spec.swap_parity);
  }
  return 0.0;
}

double derham_eval_exact(double a, const DyadicRational& x) {
  check_parameter(a);
  if (x.is_one())
    return 1.0;
  double offset = 0.0;
  double scale = 1.0;
  for (unsigned k = 1; k <= x.exp(); ++k) {
    if (x.digit(k) == 0) {
      scale *= a;
    } else {
      offset += scale * a;
      scale *= 1.0 - a;
    }
  }
  return offset;
}

double derham_eval(double a, double x) {
  check_parameter(a);
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("De Rham function is defined on [0, 1]");
  if (x == 1.0)
    return 1.0;
  double offset = 0.0;
  double scale = 1.0;
  while (x > 0.0) {
    if (x < 0.5) {
      scale *= a;
      x = 2.0 * x;
    } else {
      offset += scale * a;
      scale *= 1.0 - a;
      x = 2.0 * x - 1.0;
    }
  }
  return offset;
}

RealFunction derham_function(double a) {
  check_parameter(a);
  auto eval = [a](double x) { return derham_eval(a, std::clamp(x, 0.0, 1.0)); };
  auto increment = [a, eval](double x, double h) {
    if (h == 0.0)
      return 0.0;
    if (!(x >= 0.0 && x <= 1.0))
      return eval(x + h) - eval(x);
    // Backward increments use the symmetry R_a(y) = 1 - R_(1-a)(1 - y).
    return h > 0.0 ? derham_forward_increment(a, x, h) : -derham_forward_increment(1.0 - a, 1.0 - x, -h);
  };
  return RealFunction(eval, increment, "derham(" + std::to_string(a) + ")");
}

VelocityEstimate derham_velocity_closed_form(double a, const DyadicRational& x, double beta,
                                             DigitConvention convention) {
  check_parameter(a);
  if (a == 0.5)
    throw ParamError("the De Rham velocity formula needs a != 1/2");
  if (!(beta > 0.0 && beta <= 1.0))
    throw ParamError("velocity order must lie in (0, 1]");
  VelocityEstimate out;
  out.side = Side::forward;
  out.beta = beta;
  out.fitted_slope = std::numeric_limits<double>::quiet_NaN();
  const double critical = -std::log2(a);
  if (beta < critical - kOrderTol) {
    out.classification = Classification::zero;
  } else if (beta > critical + kOrderTol) {
    out.classification = Classification::divergent;
  } else {
    const int s = static_cast<int>(x.digit_sum());
    const int e = convention == DigitConvention::digit_sum ? s : s - 1;
    out.classification = Classification::finite;
    out.value = std::pow(std::exp2(beta) - 1.0, e);
  }
  return out;
}

VelocityEstimate derham_velocity_closed_form(double a, double x, double beta, DigitConvention convention) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("De Rham function is defined on [0, 1]");
  if (is_short_dyadic(x))
    return derham_velocity_closed_form(a, DyadicRational::from_double(x), beta, convention);
  check_parameter(a);
  if (a == 0.5)
    throw ParamError("the De Rham velocity formula needs a != 1/2");
  VelocityEstimate out;
  out.side = Side::forward;
  out.beta = beta;
  out.fitted_slope = std::numeric_limits<double>::quiet_NaN();
  // Off the dyadic set the velocity vanishes up to the critical order; above
  // it the answer depends on the digit statistics of x.
  out.classification =
      beta <= -std::log2(a) + kOrderTol ? Classification::zero : Classification::inconclusive;
  return out;
}

VelocityEstimate velocity_via_scale_sequence(const IFSSpec& spec, double x, double beta, int levels, Side side,
                                             const EstimatorSchedule& sched) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw ParamError("velocity order must lie in (0, 1]");
  if (!(spec.a > 0.0 && spec.a < 1.0) && !(spec.family == IFSFamily::derham_reparam && spec.a == 1.0))
    throw ParamError("IFS parameter out of range");
  if (levels < 2)
    throw ParamError("at least two levels are needed");
  if (spec.depth < levels)
    throw DepthError("IFS depth is smaller than the requested number of levels");
  check_depth(levels);
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("IFS functions are defined on [0, 1]");

  const double seed_order = spec.family == IFSFamily::derham_reparam ? spec.a : beta;
  auto seed = [seed_order](const Dual& t) { return t <= 0.0 ? Dual(0.0 * t) : Dual(pow(t, seed_order)); };
  auto maps = [&spec](int d) { return level_maps(spec, d); };

  std::vector<double> eps;
  std::vector<double> q;
  std::vector<double> noise;
  for (int n = 1; n <= levels; ++n) {
    const double e = std::ldexp(1.0, -(n + 1));
    const double t = x + side_sign(side) * e;
    if (t < 0.0 || t > 1.0)
      throw DomainError("scale sequence leaves [0, 1]");
    const Dual arg(t, 1, 0);
    const Dual value = iterate_two_branch(n, arg, maps, seed);
    const double slope = value.derivatives()(0);
    // Order 1 - beta scale velocity: e^(1-beta) / beta * f_n'(x +- e).
    const double sv = std::pow(e, 1.0 - beta) / beta * slope;
    eps.push_back(e);
    q.push_back(sv);
    noise.push_back(1e-13 * std::abs(sv));
  }
  return classify_quotients(eps, q, noise, beta, side, sched);
}

double neidinger_velocity_iterate(double a, double beta, int n, double x, SwapParity parity) {
  check_parameter(a);
  if (!(beta > 0.0 && beta <= 1.0))
    throw ParamError("velocity order must lie in (0, 1]");
  const double critical = std::exp2(-beta);
  if (std::abs(a - critical) > kOrderTol && std::abs(1.0 - a - critical) > kOrderTol)
    throw ParamError("Neidinger velocity exists only when a or 1 - a equals 2^-beta");
  check_depth(n);
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("Neidinger function is defined on [0, 1]");
  const double gain = std::exp2(beta);
  return iterate_two_branch(
      n, x,
      [&](int d) {
        const double p = neidinger_parameter(a, d, parity);
        return BranchMaps{p * gain, (1.0 - p) * gain, 0.0};
      },
      [](double t) { return t == 0.0 ? 1.0 : 0.0; });
}

} // namespace fracvel
