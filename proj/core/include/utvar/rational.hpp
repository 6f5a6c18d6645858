#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace utvar {

using Natural = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or "-p/q" into a canonicalized rational.
Rational parse_rational(std::string_view text);

/// Fraction form without decimals: "3", "-1/2".
std::string to_string(const Rational& q);
std::string to_string(const Natural& z);

/// A rational extended by a bottom element -inf.
class ExtRational {
 public:
  ExtRational() = default;  // -inf
  ExtRational(Rational value) : finite_(true), value_(std::move(value)) {}  // NOLINT
  ExtRational(long value) : finite_(true), value_(value) {}                // NOLINT

  static ExtRational neg_inf() { return {}; }

  bool is_neg_inf() const { return !finite_; }
  const Rational& value() const { return value_; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const;
  static ExtRational parse(std::string_view text);

 private:
  bool finite_ = false;
  Rational value_;
};

}  // namespace utvar
