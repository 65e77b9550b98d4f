#pragma once

#include "fracvel/fanalytic.hpp"
#include "fracvel/real_function.hpp"
#include "fracvel/types.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fracvel {

/// Malformed function expression. Carries the byte offset of the failure and
/// the set of tokens that would have been accepted there.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, std::vector<std::string> expected);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

enum class BuiltinKind { derham, derham_reparam, neidinger, counterexample_h, power };

struct Builtin {
  BuiltinKind kind;
  std::vector<double> args;

  friend bool operator==(const Builtin&, const Builtin&) = default;
};

/// Parsed function expression:
///
///   expr    := powser | builtin
///   powser  := "powser" ":" number (";" number "," number "," number)*
///   builtin := name "(" number ("," number)* ")"
///
/// Builtins: derham(a), derham_reparam(a, n), neidinger(a, n),
/// counterexample_h(alpha) = t^(alpha-1), power(alpha) = x^alpha.
struct FunctionExpr {
  std::variant<FractionalPowerSeries, Builtin> form;

  friend bool operator==(const FunctionExpr&, const FunctionExpr&) = default;
};

FunctionExpr parse_function(std::string_view src);

/// Canonical text; parse_function(print(e)) == e.
std::string print(const FunctionExpr& e);

/// Builds the evaluatable function. Throws ParamError on invalid builtin arguments.
RealFunction to_function(const FunctionExpr& e);

/// Analytic derivative for power series and power(alpha); a Ridders
/// difference of to_function(e) for the other builtins.
RealFunction derivative_function(const FunctionExpr& e);

/// Shortest round-trip decimal text of a double.
std::string format_number(double v);

} // namespace fracvel
