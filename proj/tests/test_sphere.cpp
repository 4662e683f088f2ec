#include <doctest.h>

#include <array>

#include "helpers.hpp"
#include "stokes/errors.hpp"
#include "stokes/sphere.hpp"

using namespace stokes;
using test::close;
using test::close_rel;

namespace {

const SpherePoint kInf = SpherePoint::infinity();

bool separated(const std::array<SpherePoint, 4>& p, double d) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (chordal_distance(p[i], p[j]) <= d) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("cross_ratio worked values") {
  CHECK(close(cross_ratio(2.0, 3.0, 1.0, 4.0).value(), 0.25, 1e-15));
  CHECK(cross_ratio(2.0, 5.0, 2.0, 7.0).value() == complex(0.0));
  CHECK(close(cross_ratio(1.0, -1.0, 0.0, kInf).value(), -1.0, 1e-15));
}

TEST_CASE("cross_ratio with one point at infinity in each slot") {
  const complex a{0.3, 1.0}, b{-1.2, 0.4}, c{2.0, -0.5}, d{0.1, 0.1};
  // Closed-form limits agree with the finite formula evaluated at a huge point.
  const complex big{1e7, 3e7};
  CHECK(close_rel(cross_ratio(kInf, b, c, d).value(), cross_ratio(big, b, c, d).value(), 1e-6));
  CHECK(close_rel(cross_ratio(a, kInf, c, d).value(), cross_ratio(a, big, c, d).value(), 1e-6));
  CHECK(close_rel(cross_ratio(a, b, kInf, d).value(), cross_ratio(a, b, big, d).value(), 1e-6));
  CHECK(close_rel(cross_ratio(a, b, c, kInf).value(), cross_ratio(a, b, c, big).value(), 1e-6));
}

TEST_CASE("cross_ratio rejects two infinities and coincident pairs") {
  CHECK_THROWS_AS(cross_ratio(kInf, kInf, 1.0, 2.0), Error);
  try {
    cross_ratio(kInf, 1.0, kInf, 2.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MultipleInfinities);
  }
  try {
    cross_ratio(1.0, 1.0, 1.0, 2.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateConfiguration);
  }
}

TEST_CASE("sphere point equality is exact and approximate comparison is separate") {
  CHECK(SpherePoint(1.0) == SpherePoint(1.0));
  CHECK_FALSE(SpherePoint(1.0) == SpherePoint(1.0 + 1e-16 * 4));
  CHECK(approx_equal(1.0, 1.0 + 1e-14, 1e-12));
  CHECK(kInf == SpherePoint::infinity());
  CHECK_FALSE(kInf == SpherePoint(1e300));
  CHECK_THROWS_AS(kInf.value(), Error);
  CHECK(chordal_distance(kInf, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("moebius_apply worked values") {
  CHECK(moebius_apply(MoebiusMap::identity(), complex{3, 4}).value() == complex{3, 4});
  CHECK(moebius_apply(MoebiusMap(0, 1, 1, 0), kInf).value() == complex(0.0));
  CHECK(moebius_apply(MoebiusMap(0, 1, 1, 0), 0.0).is_infinite());
  CHECK(moebius_apply(MoebiusMap(1, 2, 3, 4), 1.0).value().real() == doctest::Approx(3.0 / 7.0));
  CHECK(moebius_apply(MoebiusMap(1, 2, 3, 4), kInf).value().real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("moebius map construction") {
  CHECK_THROWS_AS(MoebiusMap(1, 2, 2, 4), Error);
  CHECK(MoebiusMap(1, 2, 3, 4).well_conditioned());
  CHECK_FALSE(MoebiusMap(1, 1, 1, 1 + 1e-14).well_conditioned());
}

TEST_CASE("property: cross-ratio is Moebius invariant") {
  test::Gen g(11);
  int trials = 0;
  while (trials < 500) {
    std::array<SpherePoint, 4> p{g.point(3), g.point(3), g.point(3), g.point(3)};
    if (trials % 5 == 0) p[trials / 5 % 4] = kInf;
    const MoebiusMap m(g.point(2), g.point(2), g.point(2), g.point(2));
    if (!separated(p, 0.05) || !m.well_conditioned()) continue;
    const SpherePoint before = cross_ratio(p[0], p[1], p[2], p[3]);
    std::array<SpherePoint, 4> q;
    for (int i = 0; i < 4; ++i) q[i] = moebius_apply(m, p[i]);
    if (!separated(q, 1e-6)) continue;
    const SpherePoint after = cross_ratio(q[0], q[1], q[2], q[3]);
    REQUIRE(before.is_finite());
    CHECK(close_rel(after.value(), before.value(), 1e-10));
    ++trials;
  }
}

TEST_CASE("property: symmetry and exchange identities") {
  test::Gen g(12);
  for (int i = 0; i < 500; ++i) {
    const complex a = g.point(2), b = g.point(2), c = g.point(2), d = g.point(2);
    if (!separated({SpherePoint(a), b, c, d}, 0.05)) continue;
    const complex x = cross_ratio(a, b, c, d).value();
    CHECK(close_rel(x, cross_ratio(b, a, d, c).value(), 1e-13));
    CHECK(close_rel(x * cross_ratio(a, b, d, c).value(), 1.0, 1e-12));
  }
}

TEST_CASE("property: inverse map round trip") {
  test::Gen g(13);
  for (int i = 0; i < 500; ++i) {
    const MoebiusMap m(g.point(2), g.point(2), g.point(2), g.point(2));
    if (!m.well_conditioned()) continue;
    const complex p = g.point(3);
    const SpherePoint back = moebius_apply(m, moebius_apply(m.inverse(), p));
    REQUIRE(back.is_finite());
    CHECK(close_rel(back.value(), p, 1e-12));
  }
}

TEST_CASE("property: composition matches sequential application") {
  test::Gen g(14);
  for (int i = 0; i < 200; ++i) {
    const MoebiusMap m(g.point(2), g.point(2), g.point(2), g.point(2));
    const MoebiusMap n(g.point(2), g.point(2), g.point(2), g.point(2));
    const complex p = g.point(1);
    const SpherePoint seq = moebius_apply(m, moebius_apply(n, p));
    const SpherePoint comp = moebius_apply(m.compose(n), p);
    if (seq.is_infinite() || std::abs(seq.value()) > 1e6) continue;
    CHECK(approx_equal(seq, comp, 1e-9));
  }
}
