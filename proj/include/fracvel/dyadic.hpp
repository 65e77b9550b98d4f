#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace fracvel {

/// Exact binary rational num / 2^exp in [0, 1], kept in reduced form
/// (num odd, or num == 0 with exp == 0).
class DyadicRational {
public:
  using Integer = boost::multiprecision::cpp_int;

  DyadicRational() = default;
  /// Throws ParamError when the value lies outside [0, 1].
  DyadicRational(Integer num, unsigned exp);

  /// Exact conversion of a double in [0, 1]. Every finite double is dyadic.
  static DyadicRational from_double(double x);
  /// Accepts "k/2^n", "k/m" with m a power of two, "0", "1" or a decimal
  /// that converts exactly (e.g. "0.375").
  static DyadicRational parse(std::string_view text);

  const Integer& num() const { return num_; }
  unsigned exp() const { return exp_; }

  double to_double() const;
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return exp_ == 0 && num_ == 1; }

  /// k-th binary digit after the point, k = 1 .. exp (0 beyond exp).
  /// The value 1 has no fractional digits.
  int digit(unsigned k) const;
  unsigned digit_sum() const;

  /// Sum and difference; throw ParamError if the result leaves [0, 1].
  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

  /// "num/2^exp".
  std::string to_string() const;

private:
  Integer num_ = 0;
  unsigned exp_ = 0;
};

/// s_n, the number of 1-digits in the finite binary expansion.
inline unsigned digit_sum(const DyadicRational& x) { return x.digit_sum(); }

} // namespace fracvel
