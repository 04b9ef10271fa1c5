#ifndef PHO_EXTENDED_HPP
#define PHO_EXTENDED_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pho {

/// Norm exponent p in (0, inf]. Infinity is a distinguished tag, never an
/// IEEE infinity fed into arithmetic, so the conjugate-exponent rule has no
/// inf/inf branch.
class Exponent {
 public:
  static Exponent finite(double p) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("exponent must be a finite positive real, got " +
                                  std::to_string(p));
    Exponent e;
    e.value_ = p;
    return e;
  }

  static Exponent inf() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }

  bool is_inf() const { return infinite_; }

  /// Finite value; only valid when !is_inf().
  double value() const {
    if (infinite_) throw std::logic_error("value() on the infinite exponent");
    return value_;
  }

  /// IEEE view, for display and comparisons only.
  double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    if (a.infinite_ != b.infinite_) return false;
    return a.infinite_ || a.value_ == b.value_;
  }

 private:
  Exponent() = default;
  double value_ = 0.0;
  bool infinite_ = false;
};

/// A finite real or one of the two infinities. Carrier for omega(u,v).
class ExtendedValue {
 public:
  enum class Tag { Finite, NegInf, PosInf };

  static ExtendedValue finite(double v) {
    if (std::isnan(v)) throw std::invalid_argument("ExtendedValue: NaN payload");
    if (!std::isfinite(v))
      throw std::invalid_argument("ExtendedValue::finite with infinite payload");
    ExtendedValue e;
    e.tag_ = Tag::Finite;
    e.value_ = v;
    return e;
  }
  static ExtendedValue neg_inf() {
    ExtendedValue e;
    e.tag_ = Tag::NegInf;
    return e;
  }
  static ExtendedValue pos_inf() {
    ExtendedValue e;
    e.tag_ = Tag::PosInf;
    return e;
  }

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  bool is_neg_inf() const { return tag_ == Tag::NegInf; }
  bool is_pos_inf() const { return tag_ == Tag::PosInf; }

  double value() const {
    if (tag_ != Tag::Finite) throw std::logic_error("value() on infinite ExtendedValue");
    return value_;
  }

  std::string str() const {
    switch (tag_) {
      case Tag::NegInf: return "-inf";
      case Tag::PosInf: return "inf";
      default: return std::to_string(value_);
    }
  }

  friend bool operator==(const ExtendedValue& a, const ExtendedValue& b) {
    if (a.tag_ != b.tag_) return false;
    return a.tag_ != Tag::Finite || a.value_ == b.value_;
  }

 private:
  ExtendedValue() = default;
  Tag tag_ = Tag::Finite;
  double value_ = 0.0;
};

}  // namespace pho

#endif  // PHO_EXTENDED_HPP
