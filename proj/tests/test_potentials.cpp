#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "stokes/errors.hpp"
#include "stokes/integrate.hpp"
#include "stokes/potentials.hpp"

using namespace stokes;
using test::close;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected stokes::Error");
  return ErrorKind::InvalidArgument;
}

// Classical RK4 with a fixed step on y'' = 6y² − z along a straight segment.
PIState rk4_reference(PIState s, complex z_end, int steps) {
  const complex h = (z_end - s.z) / static_cast<double>(steps);
  auto f = [](complex z, complex y, complex yp) {
    return std::pair<complex, complex>{yp, 6.0 * y * y - z};
  };
  for (int i = 0; i < steps; ++i) {
    const auto [k1y, k1p] = f(s.z, s.y, s.y_prime);
    const auto [k2y, k2p] = f(s.z + 0.5 * h, s.y + 0.5 * h * k1y, s.y_prime + 0.5 * h * k1p);
    const auto [k3y, k3p] = f(s.z + 0.5 * h, s.y + 0.5 * h * k2y, s.y_prime + 0.5 * h * k2p);
    const auto [k4y, k4p] = f(s.z + h, s.y + h * k3y, s.y_prime + h * k3p);
    s.y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    s.y_prime += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    s.z += h;
  }
  s.z = z_end;
  return s;
}

}  // namespace

TEST_CASE("eval_potential and schwarzian_rhs worked values") {
  CHECK(eval_potential(Perturbed{0, 0, 0}, 1.0).real() == doctest::Approx(4.75));
  CHECK(schwarzian_rhs(Perturbed{0, 0, 0}, 1.0).real() == doctest::Approx(-9.5));
  CHECK(eval_potential(Cubic{0, 0}, 2.0) == complex(32.0));
  CHECK(schwarzian_rhs(Cubic{0, 0}, 2.0) == complex(-64.0));
  const Cubic c{complex{0.3, -1}, complex{2.5, 0.5}};
  CHECK(eval_potential(c, 0.0) == -c.b);
  CHECK(schwarzian_rhs(c, 0.0) == 2.0 * c.b);
  CHECK(kind_of([] { eval_potential(Perturbed{1, 0, 0}, 1.0); }) == ErrorKind::SingularEvaluation);
}

TEST_CASE("singular point and linear coefficient") {
  CHECK(singular_point(Perturbed{complex{1, 2}, 0, 0}).value() == complex{1, 2});
  CHECK_FALSE(singular_point(Cubic{1, 1}).has_value());
  CHECK(linear_coefficient(Perturbed{0, 0, 0.5}) == complex(0.5));
  CHECK(linear_coefficient(Cubic{3, 0}) == complex(1.5));
}

TEST_CASE("property: schwarzian_rhs is exactly -2 Q") {
  test::Gen g(21);
  for (int i = 0; i < 1000; ++i) {
    const Potential p = i % 2 == 0 ? Potential{Perturbed{g.point(2), g.point(2), g.point(2)}}
                                   : Potential{Cubic{g.point(2), g.point(2)}};
    const complex lambda = g.point(4);
    CHECK(schwarzian_rhs(p, lambda) + 2.0 * eval_potential(p, lambda) == complex(0.0));
  }
}

TEST_CASE("pole_limit_potential mapping") {
  auto cubic = [](const PolePoint& p) { return std::get<Cubic>(pole_limit_potential(p)); };
  CHECK(cubic({0, 0}).a == complex(0.0));
  CHECK(cubic({0, 0}).b == complex(0.0));
  CHECK(cubic({1, 0.5}).a == complex(2.0));
  CHECK(cubic({1, 0.5}).b == complex(14.0));
  CHECK(cubic({-3, 2}).a == complex(-6.0));
  CHECK(cubic({-3, 2}).b == complex(56.0));
}

TEST_CASE("laurent_pair worked values and preconditions") {
  const LaurentValue v = laurent_pair({0, 0}, 1.0);
  CHECK(close(v.y, 7.0 / 6.0, 1e-14));
  CHECK(close(v.y_prime, -1.5, 1e-14));
  const LaurentValue w = laurent_pair({1, 0}, 2.0);
  CHECK(close(w.y, 19.0 / 15.0, 1e-14));
  CHECK(close(w.y_prime, -1.3, 1e-14));
  CHECK(kind_of([] { laurent_pair({0, 0}, 0.0); }) == ErrorKind::AtPole);
  CHECK(kind_of([] { laurent_pair({0, 0}, 1.5); }) == ErrorKind::OutsideTruncationRadius);
  for (const double d : {1e-2, 1e-3, 1e-4}) {
    const complex z = complex{0.5, 0.2} + d * complex{0.6, 0.8};
    const complex y = laurent_pair({complex{0.5, 0.2}, 1.0}, z).y;
    CHECK(std::abs(y * (z - complex{0.5, 0.2}) * (z - complex{0.5, 0.2}) - 1.0) < 10 * d * d);
  }
}

TEST_CASE("property: laurent_pair derivative is second-order consistent") {
  test::Gen g(22);
  for (int i = 0; i < 50; ++i) {
    const PolePoint p{g.point(1), g.point(1)};
    const complex z = p.location + g.uniform(0.3, 0.6) * std::polar(1.0, g.uniform(0, 2 * kPi));
    auto err = [&](double h) {
      const complex fd = (laurent_pair(p, z + h).y - laurent_pair(p, z - h).y) / (2 * h);
      return std::abs(fd - laurent_pair(p, z).y_prime);
    };
    const double e4 = err(1e-4), e5 = err(1e-5);
    CHECK(std::log10(e4 / e5) >= 1.9);
  }
}

TEST_CASE("property: Laurent data gives a potential close to the cubic limit") {
  for (const PolePoint p : {PolePoint{0, 0}, PolePoint{1, 0.5}, PolePoint{complex{0, 1}, -0.3}}) {
    const complex z = p.location + 0.05;
    const LaurentValue v = laurent_pair(p, z);
    const Potential pert = Perturbed{v.y, v.y_prime, z};
    const Potential lim = pole_limit_potential(p);
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
      const complex lambda = 2.0 * std::polar(1.0, 2 * kPi * k / 32);
      worst = std::max(worst, std::abs(eval_potential(pert, lambda) - eval_potential(lim, lambda)));
    }
    CHECK(worst < 1e-2);
  }
}

TEST_CASE("pi_rhs worked values") {
  CHECK(pi_rhs({0, 0, 0}) == std::pair<complex, complex>{0.0, 0.0});
  CHECK(pi_rhs({0, 1, 0}) == std::pair<complex, complex>{0.0, 6.0});
  CHECK(pi_rhs({5, 2, 3}) == std::pair<complex, complex>{3.0, 19.0});
}

TEST_CASE("integrate_pi_segment") {
  const PIState start{0, 1, 0};
  SUBCASE("zero length") {
    const PIState s = integrate_pi_segment(start, 0.0);
    CHECK(s.y == start.y);
    CHECK(s.y_prime == start.y_prime);
  }
  SUBCASE("matches fixed-step RK4 reference") {
    const PIState s = integrate_pi_segment(start, 0.1);
    const PIState ref = rk4_reference(start, 0.1, 10000);
    CHECK(close(s.y, ref.y, 1e-10));
    CHECK(close(s.y_prime, ref.y_prime, 1e-10));
  }
  SUBCASE("complex segment matches reference") {
    const PIState s = integrate_pi_segment(start, complex{0.2, 0.3});
    const PIState ref = rk4_reference(start, complex{0.2, 0.3}, 20000);
    CHECK(close(s.y, ref.y, 1e-9));
    CHECK(close(s.y_prime, ref.y_prime, 1e-9));
  }
  SUBCASE("composition over sub-segments") {
    test::Gen g(23);
    for (int i = 0; i < 10; ++i) {
      const complex end = g.point(0.4);
      const complex mid = g.uniform(0.2, 0.8) * end;
      const PIState direct = integrate_pi_segment(start, end);
      const PIState split = integrate_pi_segment(integrate_pi_segment(start, mid), end);
      CHECK(close(direct.y, split.y, 1e-9));
      CHECK(close(direct.y_prime, split.y_prime, 1e-9));
    }
  }
  SUBCASE("crossing a pole") {
    const PolePoint pole{0.7, 0.2};
    const complex z0 = pole.location + 0.03;
    const LaurentValue v = laurent_pair(pole, z0);
    CHECK(kind_of([&] { integrate_pi_segment({z0, v.y, v.y_prime}, pole.location - 0.2); }) ==
          ErrorKind::PoleEncountered);
  }
}
