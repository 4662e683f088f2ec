#pragma once

// Arithmetic on the Riemann sphere C ∪ {∞}: points, Möbius maps and the
// four-point cross-ratio. The point at infinity is an explicit tag, never a
// large finite stand-in.

#include <complex>
#include <optional>

namespace stokes {

using complex = std::complex<double>;

class SpherePoint {
 public:
  constexpr SpherePoint() = default;
  constexpr SpherePoint(complex value) : value_(value), infinite_(false) {}  // NOLINT(implicit)
  constexpr SpherePoint(double value) : value_(value), infinite_(false) {}   // NOLINT(implicit)

  static constexpr SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    p.value_ = 0.0;
    return p;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  /// Finite payload. Throws InvalidArgument for the point at infinity.
  complex value() const;

  /// Bitwise equality for finite points; all infinities are equal.
  friend constexpr bool operator==(const SpherePoint& lhs, const SpherePoint& rhs) noexcept {
    if (lhs.infinite_ || rhs.infinite_) return lhs.infinite_ == rhs.infinite_;
    return lhs.value_ == rhs.value_;
  }

 private:
  complex value_{0.0, 0.0};
  bool infinite_ = false;
};

/// Chordal distance on the unit-diameter Riemann sphere, in [0, 1].
double chordal_distance(const SpherePoint& a, const SpherePoint& b) noexcept;

/// Approximate equality: chordal distance at most `tol`.
bool approx_equal(const SpherePoint& a, const SpherePoint& b, double tol) noexcept;

/// z ↦ (a z + b) / (c z + d) with ad − bc ≠ 0.
class MoebiusMap {
 public:
  /// Throws DegenerateMap when ad − bc == 0.
  MoebiusMap(complex a, complex b, complex c, complex d);

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  complex a() const noexcept { return a_; }
  complex b() const noexcept { return b_; }
  complex c() const noexcept { return c_; }
  complex d() const noexcept { return d_; }
  complex determinant() const noexcept { return a_ * d_ - b_ * c_; }

  /// False when |ad − bc| < 1e-12 · max(|a|,|b|,|c|,|d|)².
  bool well_conditioned() const noexcept { return well_conditioned_; }

  MoebiusMap inverse() const;

  /// this ∘ other
  MoebiusMap compose(const MoebiusMap& other) const;

 private:
  complex a_, b_, c_, d_;
  bool well_conditioned_ = true;
};

SpherePoint moebius_apply(const MoebiusMap& m, const SpherePoint& p);

/// (a, b; c, d) = (a − c)(b − d) / ((a − d)(b − c)).
///
/// One argument may be infinite, in which case the matching closed-form limit
/// is used. Throws MultipleInfinities for two or more infinite arguments and
/// DegenerateConfiguration when a numerator factor and a denominator factor
/// both vanish to within 1e-12 of the configuration scale. Returns infinity
/// when only the denominator vanishes exactly.
SpherePoint cross_ratio(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c,
                        const SpherePoint& d);

}  // namespace stokes
