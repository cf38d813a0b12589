#pragma once

#include <cstdio>
#include <limits>
#include <string>

namespace setdist {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Extended real with minimization-oriented arithmetic: both inf + (-inf)
// and (-inf) + inf evaluate to +inf, so a sum of objective terms is +inf
// as soon as any term is. Comparison is the total order
// -inf < finite < +inf. Never holds NaN.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(v) {}

  static constexpr ExtReal inf() { return ExtReal(kInf); }
  static constexpr ExtReal neg_inf() { return ExtReal(-kInf); }

  constexpr double raw() const { return v_; }
  constexpr bool is_finite() const { return v_ > -kInf && v_ < kInf; }
  constexpr bool is_pos_inf() const { return v_ == kInf; }
  constexpr bool is_neg_inf() const { return v_ == -kInf; }

  constexpr ExtReal operator-() const { return ExtReal(-v_); }

  friend constexpr ExtReal operator+(ExtReal a, ExtReal b) {
    if ((a.v_ == kInf && b.v_ == -kInf) || (a.v_ == -kInf && b.v_ == kInf))
      return inf();
    return ExtReal(a.v_ + b.v_);
  }
  friend constexpr ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend constexpr bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

 private:
  double v_ = 0.0;
};

constexpr ExtReal ext_min(ExtReal a, ExtReal b) { return a < b ? a : b; }
constexpr ExtReal ext_max(ExtReal a, ExtReal b) { return a < b ? b : a; }

// |a - b| under the same convention; in particular inf "minus" inf is +inf,
// which keeps sup-norm comparisons conservative.
constexpr ExtReal ext_abs_diff(ExtReal a, ExtReal b) {
  return ext_max(a - b, b - a);
}

inline std::string to_string(ExtReal v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v.raw());
  return buf;
}

}  // namespace setdist
