#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fracvel {

/// Direction of a one-sided limit: forward looks at [x, x+eps], backward at [x-eps, x].
enum class Side { forward, backward };

/// Outcome of a limit estimate.
///
/// `finite` means the limit exists and is reported in `value` (which may be 0
/// when the increments vanish identically). `zero` means the increments decay
/// faster than the requested order, `divergent` that they decay slower.
enum class Classification { zero, finite, divergent, inconclusive };

std::string_view to_string(Side side);
std::string_view to_string(Classification c);
Side parse_side(std::string_view text);

/// +1 for forward, -1 for backward.
inline double side_sign(Side side) { return side == Side::forward ? 1.0 : -1.0; }

// Error hierarchy. Every failure raised by the library derives from Error.

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the evaluation domain of a function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Parameter combination for which an operation is not defined.
class ParamError : public Error {
public:
  using Error::Error;
};

/// Requested iteration depth exceeds the configured maximum.
class DepthError : public Error {
public:
  using Error::Error;
};

class QuadratureError : public Error {
public:
  using Error::Error;
};

/// Numerical derivative is not finite.
class DegenerateDerivative : public Error {
public:
  using Error::Error;
};

/// An algebra rule was requested but a constituent velocity does not exist finitely.
class RuleInapplicable : public Error {
public:
  using Error::Error;
};

class RatioUndefined : public Error {
public:
  using Error::Error;
};

class InsufficientData : public Error {
public:
  using Error::Error;
};

} // namespace fracvel
