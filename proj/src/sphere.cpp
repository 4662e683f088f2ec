#include "stokes/sphere.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "stokes/errors.hpp"

namespace stokes {

namespace {

constexpr double kDegenerateRelative = 1e-12;
constexpr double kConditioningRelative = 1e-12;

// A cross-ratio factor (p − q); empty when either point is ∞, since the
// infinite factors cancel between numerator and denominator.
std::optional<complex> difference(const SpherePoint& p, const SpherePoint& q) {
  if (p.is_infinite() || q.is_infinite()) return std::nullopt;
  return p.value() - q.value();
}

}  // namespace

complex SpherePoint::value() const {
  if (infinite_) throw Error(ErrorKind::InvalidArgument, "the point at infinity has no finite value");
  return value_;
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) noexcept {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(a.value()));
  const complex za = a.value();
  const complex zb = b.value();
  return std::abs(za - zb) / (std::sqrt(1.0 + std::norm(za)) * std::sqrt(1.0 + std::norm(zb)));
}

bool approx_equal(const SpherePoint& a, const SpherePoint& b, double tol) noexcept {
  return chordal_distance(a, b) <= tol;
}

MoebiusMap::MoebiusMap(complex a, complex b, complex c, complex d) : a_(a), b_(b), c_(c), d_(d) {
  const double det = std::abs(determinant());
  if (!(det > 0.0)) throw Error(ErrorKind::DegenerateMap, "ad - bc = 0");
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  well_conditioned_ = det >= kConditioningRelative * scale * scale;
}

MoebiusMap MoebiusMap::inverse() const { return {d_, -b_, -c_, a_}; }

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

SpherePoint moebius_apply(const MoebiusMap& m, const SpherePoint& p) {
  if (p.is_infinite()) {
    if (m.c() == complex{0.0, 0.0}) return SpherePoint::infinity();
    return m.a() / m.c();
  }
  const complex z = p.value();
  const complex den = m.c() * z + m.d();
  if (den == complex{0.0, 0.0}) return SpherePoint::infinity();
  return (m.a() * z + m.b()) / den;
}

SpherePoint cross_ratio(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c,
                        const SpherePoint& d) {
  const std::array<const SpherePoint*, 4> points{&a, &b, &c, &d};
  int infinities = 0;
  double scale = 0.0;
  for (const auto* p : points) {
    if (p->is_infinite()) {
      ++infinities;
    } else {
      scale = std::max(scale, std::abs(p->value()));
    }
  }
  if (infinities > 1) {
    throw Error(ErrorKind::MultipleInfinities, "cross-ratio with more than one point at infinity");
  }

  const std::array<std::optional<complex>, 2> numerator{difference(a, c), difference(b, d)};
  const std::array<std::optional<complex>, 2> denominator{difference(a, d), difference(b, c)};

  const double threshold = kDegenerateRelative * scale;
  auto any_small = [threshold](const auto& factors) {
    return std::any_of(factors.begin(), factors.end(),
                       [threshold](const auto& f) { return f && std::abs(*f) <= threshold; });
  };
  if (any_small(numerator) && any_small(denominator)) {
    throw Error(ErrorKind::DegenerateConfiguration, "three of the four points coincide");
  }

  complex num{1.0, 0.0};
  complex den{1.0, 0.0};
  for (const auto& f : numerator) {
    num *= f.value_or(complex{1.0, 0.0});
  }
  for (const auto& f : denominator) {
    den *= f.value_or(complex{1.0, 0.0});
  }
  if (den == complex{0.0, 0.0}) return SpherePoint::infinity();
  return num / den;
}

}  // namespace stokes
