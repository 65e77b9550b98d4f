#include "fracvel/dyadic.hpp"

#include "fracvel/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fracvel {

namespace {

using Integer = DyadicRational::Integer;

void reduce(Integer& num, unsigned& exp) {
  if (num == 0) {
    exp = 0;
    return;
  }
  const unsigned tz = static_cast<unsigned>(boost::multiprecision::lsb(num));
  const unsigned shift = std::min(tz, exp);
  num >>= shift;
  exp -= shift;
}

Integer parse_integer(std::string_view text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParamError("malformed dyadic literal '" + std::string(text) + "'");
  // A leading zero would select octal parsing.
  const auto first = text.find_first_not_of('0');
  return first == std::string_view::npos ? Integer(0) : Integer(std::string(text.substr(first)));
}

unsigned parse_unsigned(std::string_view text) {
  unsigned v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParamError("malformed exponent '" + std::string(text) + "'");
  return v;
}

} // namespace

DyadicRational::DyadicRational(Integer num, unsigned exp) : num_(std::move(num)), exp_(exp) {
  if (num_ < 0 || num_ > (Integer(1) << exp_))
    throw ParamError("dyadic rational outside [0, 1]");
  reduce(num_, exp_);
}

DyadicRational DyadicRational::from_double(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw ParamError("dyadic rational outside [0, 1]");
  if (x == 0.0)
    return {};
  int e = 0;
  const double m = std::frexp(x, &e);
  // x = M * 2^(e - 53) with M a 53-bit integer.
  const auto mantissa = static_cast<unsigned long long>(std::ldexp(m, 53));
  return DyadicRational(Integer(mantissa), static_cast<unsigned>(53 - e));
}

DyadicRational DyadicRational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den = text.substr(slash + 1);
    if (den.starts_with("2^"))
      return DyadicRational(std::move(num), parse_unsigned(den.substr(2)));
    const Integer d = parse_integer(den);
    if (d == 0 || (d & (d - 1)) != 0)
      throw ParamError("denominator is not a power of two");
    return DyadicRational(std::move(num), static_cast<unsigned>(boost::multiprecision::msb(d)));
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos)
    return DyadicRational(parse_integer(text), 0);
  // Decimal N / 10^k is dyadic iff 5^k divides N.
  const std::string_view frac = text.substr(dot + 1);
  const std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
  Integer n = parse_integer(digits);
  const auto k = static_cast<unsigned>(frac.size());
  Integer five_k = boost::multiprecision::pow(Integer(5), k);
  if (n % five_k != 0)
    throw ParamError("decimal '" + std::string(text) + "' is not a dyadic rational");
  return DyadicRational(n / five_k, k);
}

double DyadicRational::to_double() const {
  if (num_ == 0)
    return 0.0;
  const auto top = static_cast<long>(boost::multiprecision::msb(num_));
  const long shift = std::max(0L, top - 62);
  const Integer head = num_ >> shift;
  return std::ldexp(head.convert_to<double>(), static_cast<int>(shift - static_cast<long>(exp_)));
}

int DyadicRational::digit(unsigned k) const {
  if (k == 0 || k > exp_)
    return 0;
  return boost::multiprecision::bit_test(num_, exp_ - k) ? 1 : 0;
}

unsigned DyadicRational::digit_sum() const {
  if (exp_ == 0)
    return 0;
  unsigned count = 0;
  Integer v = num_;
  while (v != 0) {
    const auto b = boost::multiprecision::lsb(v);
    boost::multiprecision::bit_unset(v, b);
    ++count;
  }
  return count;
}

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
  const unsigned e = std::max(a.exp_, b.exp_);
  Integer n = (a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_));
  return DyadicRational(std::move(n), e);
}

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
  const unsigned e = std::max(a.exp_, b.exp_);
  Integer n = (a.num_ << (e - a.exp_)) - (b.num_ << (e - b.exp_));
  return DyadicRational(std::move(n), e);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const unsigned e = std::max(a.exp_, b.exp_);
  const Integer lhs = a.num_ << (e - a.exp_);
  const Integer rhs = b.num_ << (e - b.exp_);
  if (lhs < rhs)
    return std::strong_ordering::less;
  if (lhs > rhs)
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string DyadicRational::to_string() const {
  std::ostringstream os;
  os << num_ << "/2^" << exp_;
  return os.str();
}

} // namespace fracvel
