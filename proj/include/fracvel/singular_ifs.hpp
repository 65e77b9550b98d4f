#pragma once

#include "fracvel/dyadic.hpp"
#include "fracvel/real_function.hpp"
#include "fracvel/types.hpp"
#include "fracvel/velocity.hpp"

#include <cmath>
#include <string_view>
#include <type_traits>

namespace fracvel {

enum class IFSFamily { derham, derham_reparam, neidinger };

/// Which recursion levels of the Neidinger system use 1 - a. Levels are
/// counted from the outermost map (depth 0); with `even` the outermost map
/// uses 1 - a, with `odd` it uses a.
enum class SwapParity { even, odd };

struct IFSSpec {
  IFSFamily family = IFSFamily::derham;
  double a = 0.5;
  int depth = 1;
  SwapParity swap_parity = SwapParity::even;
};

std::string_view to_string(IFSFamily family);
IFSFamily parse_family(std::string_view text);
SwapParity parse_swap_parity(std::string_view text);

/// Upper bound on iteration depth: FRACVEL_MAX_DEPTH if set, else 64.
int max_ifs_depth();

/// Coefficients of one level of a two-branch affine system:
/// t < 1/2 : left_scale * g(2t)
/// t >= 1/2: right_scale * g(2t - 1) + right_offset
struct BranchMaps {
  double left_scale;
  double right_scale;
  double right_offset;
};

/// De Rham maps with parameter p: (p, 1 - p, p).
inline BranchMaps derham_maps(double p) { return {p, 1.0 - p, p}; }

/// Parameter of the Neidinger system at recursion depth d (0 = outermost).
inline double neidinger_parameter(double a, int d, SwapParity parity) {
  const bool swapped = (d % 2 == 0) == (parity == SwapParity::even);
  return swapped ? 1.0 - a : a;
}

/// Level maps of each family at depth d.
BranchMaps level_maps(const IFSSpec& spec, int d);

/// n-fold two-branch recursion applied to `seed`, unrolled along the binary
/// digits of x. The branch boundary 1/2 belongs to the right branch.
template <typename Scalar, typename Maps, typename Seed>
Scalar iterate_two_branch(int n, const Scalar& x, Maps&& maps, Seed&& seed) {
  Scalar y = x;
  double offset = 0.0;
  double scale = 1.0;
  for (int d = 0; d < n; ++d) {
    const BranchMaps m = maps(d);
    if (y < 0.5) {
      scale *= m.left_scale;
      y = 2.0 * y;
    } else {
      offset += scale * m.right_offset;
      scale *= m.right_scale;
      y = 2.0 * y - 1.0;
    }
  }
  return offset + scale * seed(y);
}

void check_depth(int n);

/// r_n(x, a): two-branch system with factor 2^-a and seed x^a.
template <typename Scalar>
Scalar derham_reparam_iterate(double a, int n, const Scalar& x) {
  using std::pow;
  if (!(a > 0.0 && a <= 1.0))
    throw ParamError("reparametrized De Rham parameter must lie in (0, 1]");
  check_depth(n);
  if constexpr (std::is_same_v<Scalar, double>)
    if (x == 1.0)
      return 1.0; // the telescoped offsets may round just below 1
  const double p = std::exp2(-a);
  return iterate_two_branch(
      n, x, [p](int) { return derham_maps(p); },
      [a](const Scalar& t) { return t <= 0.0 ? Scalar(0.0 * t) : Scalar(pow(t, a)); });
}

/// N_n(x): De Rham maps whose parameter alternates a <-> 1 - a by level, seed x.
template <typename Scalar>
Scalar neidinger_iterate(double a, int n, const Scalar& x, SwapParity parity = SwapParity::even) {
  if (!(a > 0.0 && a < 1.0))
    throw ParamError("Neidinger parameter must lie in (0, 1)");
  check_depth(n);
  if constexpr (std::is_same_v<Scalar, double>)
    if (x == 1.0)
      return 1.0;
  return iterate_two_branch(
      n, x, [a, parity](int d) { return derham_maps(neidinger_parameter(a, d, parity)); },
      [](const Scalar& t) { return t; });
}

/// Curve of the n-th iterate used for plotting: seed x^a for the
/// reparametrized family, x otherwise.
double ifs_curve(const IFSSpec& spec, double x);

/// R_a(x) by unrolling the functional equation along the digits of x.
double derham_eval_exact(double a, const DyadicRational& x);
/// Same for a double in [0, 1] (every double is a dyadic rational).
double derham_eval(double a, double x);

/// R_a as a RealFunction with cancellation-free increments. Outside [0, 1]
/// the function is extended by its boundary values 0 and 1.
RealFunction derham_function(double a);

enum class DigitConvention { digit_sum, digit_sum_minus_one };

/// Forward velocity of R_a from the digit-sum formula. At beta = -log2(a)
/// and dyadic x the value is (2^beta - 1)^e with e = s_n (or s_n - 1).
/// Throws ParamError for a = 1/2.
VelocityEstimate derham_velocity_closed_form(double a, const DyadicRational& x, double beta,
                                             DigitConvention convention = DigitConvention::digit_sum);
/// Doubles with at most 48 significant binary digits are treated as dyadic.
VelocityEstimate derham_velocity_closed_form(double a, double x, double beta,
                                             DigitConvention convention = DigitConvention::digit_sum);

/// Velocity from scale velocities of the iterates: level n uses the n-th
/// iterate f_n and the scale 2^-(n+1), so that x +- eps stays inside the
/// level-n cell adjacent to x. Levels run n = 1 .. levels.
VelocityEstimate velocity_via_scale_sequence(const IFSSpec& spec, double x, double beta, int levels,
                                             Side side = Side::forward, const EstimatorSchedule& sched = {});

/// n-level recursion for the forward beta-velocity of the Neidinger system,
/// seeded with the indicator of x == 0. Requires a or 1 - a equal to 2^-beta.
double neidinger_velocity_iterate(double a, double beta, int n, double x,
                                  SwapParity parity = SwapParity::even);

} // namespace fracvel
