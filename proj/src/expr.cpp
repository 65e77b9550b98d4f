#include "fracvel/expr.hpp"

#include "fracvel/singular_ifs.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fracvel {

namespace {

struct BuiltinInfo {
  BuiltinKind kind;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<BuiltinInfo, 5> kBuiltins{{
    {BuiltinKind::derham, "derham", 1},
    {BuiltinKind::derham_reparam, "derham_reparam", 2},
    {BuiltinKind::neidinger, "neidinger", 2},
    {BuiltinKind::counterexample_h, "counterexample_h", 1},
    {BuiltinKind::power, "power", 1},
}};

const BuiltinInfo& info(BuiltinKind kind) {
  for (const BuiltinInfo& b : kBuiltins)
    if (b.kind == kind)
      return b;
  return kBuiltins[0];
}

std::string describe(std::size_t offset, const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "parse error at offset " << offset << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i)
    os << (i ? " or " : "") << expected[i];
  return os.str();
}

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  FunctionExpr parse() {
    skip_space();
    const std::size_t start = pos_;
    const std::string_view name = identifier();
    if (name == "powser") {
      FunctionExpr e{parse_series()};
      expect_end();
      return e;
    }
    for (const BuiltinInfo& b : kBuiltins) {
      if (b.name == name) {
        FunctionExpr e{parse_builtin(b)};
        expect_end();
        return e;
      }
    }
    std::vector<std::string> expected{"powser"};
    for (const BuiltinInfo& b : kBuiltins)
      expected.emplace_back(b.name);
    throw ParseError(start, expected);
  }

private:
  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t'))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, std::vector<std::string> alternatives = {}) {
    if (accept(c))
      return;
    alternatives.insert(alternatives.begin(), std::string("'") + c + "'");
    throw ParseError(pos_, alternatives);
  }

  std::string_view identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ((src_[pos_] >= 'a' && src_[pos_] <= 'z') || src_[pos_] == '_'))
      ++pos_;
    return src_.substr(start, pos_ - start);
  }

  double number(const char* what) {
    skip_space();
    const char* first = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    if (first != end && *first == '+')
      ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, end, v);
    if (ec != std::errc() || !std::isfinite(v))
      throw ParseError(pos_, {what});
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    return v;
  }

  void expect_end() {
    skip_space();
    if (pos_ != src_.size())
      throw ParseError(pos_, {"end of input"});
  }

  FractionalPowerSeries parse_series() {
    expect(':');
    const double c0 = number("constant");
    std::vector<PowerTerm> terms;
    while (true) {
      skip_space();
      if (pos_ == src_.size())
        break;
      expect(';', {"end of input"});
      PowerTerm t{};
      t.coefficient = number("coefficient");
      expect(',');
      t.center = number("center");
      expect(',');
      const std::size_t exp_start = pos_;
      t.exponent = number("exponent");
      if (!(t.exponent > 0.0))
        throw ParseError(exp_start, {"positive exponent"});
      terms.push_back(t);
    }
    return FractionalPowerSeries(c0, std::move(terms));
  }

  Builtin parse_builtin(const BuiltinInfo& b) {
    expect('(');
    Builtin out{b.kind, {}};
    out.args.push_back(number("number"));
    while (out.args.size() < b.arity) {
      expect(',');
      out.args.push_back(number("number"));
    }
    expect(')');
    return out;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

int integer_arg(double v, const char* what) {
  if (v < 0.0 || v != std::floor(v) || v > 1e6)
    throw ParamError(std::string(what) + " must be a nonnegative integer");
  return static_cast<int>(v);
}

RealFunction counterexample_h(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParamError("counterexample_h needs alpha in (0, 1)");
  const double e = alpha - 1.0;
  auto eval = [e](double t) {
    if (!(t > 0.0))
      throw DomainError("counterexample_h is defined for t > 0");
    return std::pow(t, e);
  };
  auto increment = [e, eval](double t, double h) {
    if (!(t > 0.0) || !(t + h > 0.0))
      return eval(t + h) - eval(t);
    return std::pow(t, e) * std::expm1(e * std::log1p(h / t));
  };
  return RealFunction(eval, increment, "counterexample_h");
}

} // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected)
    : Error(describe(offset, expected)), offset_(offset), expected_(std::move(expected)) {}

FunctionExpr parse_function(std::string_view src) { return Parser(src).parse(); }

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string print(const FunctionExpr& e) {
  if (const auto* s = std::get_if<FractionalPowerSeries>(&e.form)) {
    std::string out = "powser:" + format_number(s->constant());
    for (const PowerTerm& t : s->terms())
      out += ";" + format_number(t.coefficient) + "," + format_number(t.center) + "," + format_number(t.exponent);
    return out;
  }
  const Builtin& b = std::get<Builtin>(e.form);
  std::string out = std::string(info(b.kind).name) + "(";
  for (std::size_t i = 0; i < b.args.size(); ++i)
    out += (i ? "," : "") + format_number(b.args[i]);
  return out + ")";
}

RealFunction to_function(const FunctionExpr& e) {
  if (const auto* s = std::get_if<FractionalPowerSeries>(&e.form))
    return as_function(*s);
  const Builtin& b = std::get<Builtin>(e.form);
  const std::string name = print(e);
  switch (b.kind) {
  case BuiltinKind::derham:
    return derham_function(b.args[0]);
  case BuiltinKind::derham_reparam: {
    const double a = b.args[0];
    const int n = integer_arg(b.args[1], "iteration depth");
    (void)derham_reparam_iterate(a, n, 0.0);
    return RealFunction([a, n](double x) { return derham_reparam_iterate(a, n, x); }, name);
  }
  case BuiltinKind::neidinger: {
    const double a = b.args[0];
    const int n = integer_arg(b.args[1], "iteration depth");
    (void)neidinger_iterate(a, n, 0.0);
    return RealFunction([a, n](double x) { return neidinger_iterate(a, n, x); }, name);
  }
  case BuiltinKind::counterexample_h:
    return counterexample_h(b.args[0]);
  case BuiltinKind::power:
    if (!(b.args[0] > 0.0))
      throw ParamError("power needs a positive exponent");
    return as_function(FractionalPowerSeries(0.0, {{1.0, 0.0, b.args[0]}}));
  }
  throw ParamError("unknown builtin");
}

RealFunction derivative_function(const FunctionExpr& e) {
  FractionalPowerSeries series;
  if (const auto* s = std::get_if<FractionalPowerSeries>(&e.form)) {
    series = *s;
  } else if (const Builtin& b = std::get<Builtin>(e.form); b.kind == BuiltinKind::power) {
    series = FractionalPowerSeries(0.0, {{1.0, 0.0, b.args[0]}});
  } else {
    const RealFunction f = to_function(e);
    return RealFunction([f](double x) { return numeric_derivative(f, x, 1e-3); }, "d/dx " + f.name());
  }
  return RealFunction(
      [series](double x) {
        double acc = 0.0;
        for (const PowerTerm& t : series.terms()) {
          const double base = series.orientation() * x + t.center;
          if (base > 0.0)
            acc += t.coefficient * t.exponent * series.orientation() * std::pow(base, t.exponent - 1.0);
        }
        return acc;
      },
      "d/dx " + print(e));
}

} // namespace fracvel
