#ifndef MEASFIELD_WEIGHT_HPP
#define MEASFIELD_WEIGHT_HPP

#include <gmpxx.h>

#include <string>

#include "measfield/errors.hpp"

namespace measfield {

/// A nonnegative-or-signed scalar used for measure weights and densities.
///
/// Values are always stored as arbitrary-precision rationals, so sums,
/// products and quotients never round.  The `exact` flag records provenance:
/// a weight built from a fraction or integer is exact, one built from a
/// double is not (even though the binary value itself is representable).
/// Law checks use the flag to decide between exact comparison and a
/// tolerance.
class Weight {
 public:
  Weight() : value_(0), exact_(true) {}

  static Weight from_fraction(long num, long den) {
    if (den == 0) throw InvariantViolation("weight denominator is zero");
    Weight w;
    w.value_ = mpq_class(num, den);
    w.value_.canonicalize();
    return w;
  }

  static Weight from_int(long v) {
    Weight w;
    w.value_ = v;
    return w;
  }

  /// Parses "p/q" or "p".  Used by the exact path of the document loader.
  static Weight from_string(const std::string& text) {
    Weight w;
    if (w.value_.set_str(text, 10) != 0)
      throw ParseError("bad rational literal '" + text + "'");
    if (w.value_.get_den() == 0)
      throw ParseError("zero denominator in '" + text + "'");
    w.value_.canonicalize();
    return w;
  }

  static Weight from_double(double v) {
    Weight w;
    w.value_ = mpq_class(v);
    w.exact_ = false;
    return w;
  }

  const mpq_class& value() const { return value_; }
  double to_double() const { return value_.get_d(); }
  bool exact() const { return exact_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool positive() const { return sgn(value_) > 0; }
  bool negative() const { return sgn(value_) < 0; }

  std::string to_string() const { return value_.get_str(); }

  friend Weight operator+(const Weight& a, const Weight& b) {
    return make(a.value_ + b.value_, a.exact_ && b.exact_);
  }
  friend Weight operator-(const Weight& a, const Weight& b) {
    return make(a.value_ - b.value_, a.exact_ && b.exact_);
  }
  friend Weight operator*(const Weight& a, const Weight& b) {
    return make(a.value_ * b.value_, a.exact_ && b.exact_);
  }
  friend Weight operator/(const Weight& a, const Weight& b) {
    if (b.is_zero()) throw InvariantViolation("division by zero weight");
    return make(a.value_ / b.value_, a.exact_ && b.exact_);
  }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const Weight& a, const Weight& b) {
    return a.value_ != b.value_;
  }
  friend bool operator<(const Weight& a, const Weight& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Weight& a, const Weight& b) {
    return a.value_ <= b.value_;
  }
  friend bool operator>(const Weight& a, const Weight& b) {
    return a.value_ > b.value_;
  }
  friend bool operator>=(const Weight& a, const Weight& b) {
    return a.value_ >= b.value_;
  }

 private:
  static Weight make(mpq_class v, bool exact) {
    Weight w;
    w.value_ = std::move(v);
    w.exact_ = exact;
    return w;
  }

  mpq_class value_;
  bool exact_;
};

}  // namespace measfield

#endif  // MEASFIELD_WEIGHT_HPP
