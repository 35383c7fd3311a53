#pragma once

#include <iosfwd>
#include <limits>
#include <string>

namespace hardy {

/// A value in [0, +inf]. Never NaN; negative inputs are rejected.
class ExtendedNonNegReal {
 public:
  constexpr ExtendedNonNegReal() = default;
  explicit ExtendedNonNegReal(double value);

  static constexpr ExtendedNonNegReal infinity() {
    ExtendedNonNegReal v;
    v.value_ = std::numeric_limits<double>::infinity();
    return v;
  }

  bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const noexcept { return value_; }

  /// Scaling by a positive finite factor, with inf·c = inf and 0·c = 0.
  ExtendedNonNegReal scaled(double factor) const;

  std::string str() const;

  friend bool operator==(const ExtendedNonNegReal&, const ExtendedNonNegReal&) = default;
  friend auto operator<=>(const ExtendedNonNegReal& a, const ExtendedNonNegReal& b) {
    return a.value_ <=> b.value_;
  }

 private:
  double value_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const ExtendedNonNegReal& v);

}  // namespace hardy
