#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace cstnu {

/// Exact rational used for every temporal constant.
using Rational = mpq_class;

/// Parses `"5"`, `"-3/4"`, `"2.5"` or `"-0.001"`. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
std::string format_rational(const Rational& value);

std::size_t hash_rational(const Rational& value) noexcept;

/// A shortest-path bound: a rational or +infinity. Addition saturates.
class Distance {
 public:
  Distance() : finite_(false) {}
  Distance(Rational value) : finite_(true), value_(std::move(value)) {}  // NOLINT(implicit)

  static Distance infinity() { return Distance(); }

  bool finite() const noexcept { return finite_; }
  bool infinite() const noexcept { return !finite_; }
  /// Precondition: finite().
  const Rational& value() const { return value_; }

  friend Distance operator+(const Distance& a, const Distance& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Distance(Rational(a.value_ + b.value_));
  }
  friend bool operator<(const Distance& a, const Distance& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator==(const Distance& a, const Distance& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend bool operator<=(const Distance& a, const Distance& b) { return !(b < a); }

  std::string to_string() const { return finite_ ? format_rational(value_) : "inf"; }

 private:
  bool finite_;
  Rational value_;
};

}  // namespace cstnu
