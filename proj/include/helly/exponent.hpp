#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace helly {

/// A norm exponent p in [1, inf]. Infinity is a distinct state, not a
/// sentinel float, so conjugation (1 <-> inf) stays exact.
class Exponent {
 public:
  static Exponent finite(double p) {
    if (!std::isfinite(p) || p < 1.0) {
      throw std::invalid_argument("norm exponent must be a finite real >= 1 (or Exponent::infinity())");
    }
    return Exponent(p, false);
  }

  static Exponent infinity() { return Exponent(0.0, true); }

  bool is_infinite() const { return infinite_; }

  /// Finite value; throws when the exponent is infinity.
  double value() const {
    if (infinite_) throw std::logic_error("Exponent::value() called on infinity");
    return p_;
  }

  /// Value as a double, +inf for the infinite case. Convenient for formulas
  /// that degrade gracefully (e.g. k^(1/p) -> 1).
  double value_or_inf() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : p_;
  }

  /// Conjugate exponent q with 1/p + 1/q = 1; dual(1) = inf, dual(inf) = 1.
  Exponent dual() const {
    if (infinite_) return finite(1.0);
    if (p_ == 1.0) return infinity();
    if (p_ == 2.0) return finite(2.0);
    return finite(p_ / (p_ - 1.0));
  }

  bool operator==(const Exponent& o) const {
    return infinite_ == o.infinite_ && (infinite_ || p_ == o.p_);
  }
  bool operator!=(const Exponent& o) const { return !(*this == o); }

 private:
  Exponent(double p, bool inf) : p_(p), infinite_(inf) {}
  double p_;
  bool infinite_;
};

inline Exponent dual_exponent(const Exponent& p) { return p.dual(); }

}  // namespace helly
