#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "stokes/errors.hpp"
#include "stokes/monodromy.hpp"
#include "stokes/wkb.hpp"

using namespace stokes;
using test::close;

TEST_CASE("constants") {
  const auto& c = wkb::constants();
  // Γ(1/3) and Γ(11/6) evaluated with mpmath at 30 digits.
  CHECK(c.c_plus == doctest::Approx(1.8359448444686314).epsilon(1e-14));
  CHECK(std::abs(c.c_cos - c.c_plus / 2) < 1e-12);
  CHECK(std::abs(c.c_damp - std::sqrt(3.0) * c.c_cos) < 1e-12);
}

TEST_CASE("sigma0 worked values") {
  CHECK(close(wkb::sigma0(1e-12), complex{0, -1}, 1e-8));
  CHECK(close(wkb::sigma0(1.0), complex{0, -6.2710565}, 1e-6));
  // First zero of the cosine factor.
  const double b0 = -std::pow(kPi / 2 / wkb::constants().c_cos, 6.0 / 5.0);
  CHECK(b0 == doctest::Approx(-1.90523386).epsilon(1e-8));
  CHECK(std::abs(wkb::sigma0(b0)) < 1e-14);
  CHECK_THROWS_AS(wkb::sigma0(0.0), Error);
  CHECK_THROWS_AS(wkb::sigma0(std::nan("")), Error);
}

TEST_CASE("rescaling inverts the WKB envelope") {
  for (const double b : {0.5, 3.0, 10.0, 20.0}) {
    CHECK(close(wkb::rescale_sigma0(wkb::sigma0(b), b), 1.0, 1e-13));
    CHECK(wkb::rescaled_prediction(b) == 1.0);
  }
  for (const double b : {-0.5, -3.0, -10.0, -20.0}) {
    const complex r = wkb::rescale_sigma0(wkb::sigma0(b), b);
    CHECK(std::abs(r.imag()) < 1e-14);
    CHECK(r.real() == doctest::Approx(wkb::rescaled_prediction(b)).epsilon(1e-12));
  }
  CHECK(close(wkb::rescale_sigma0(complex{0, -2}, -1e-12), 1.0, 1e-8));
}

TEST_CASE("property: sigma0 decays for large negative b and is continuous") {
  double prev = std::abs(wkb::sigma0(-10.0));
  for (double b = -20.0; b >= -200.0; b -= 20.0) {
    const double envelope = 2 * std::exp(-wkb::constants().c_damp * std::pow(-b, 5.0 / 6.0));
    CHECK(std::abs(wkb::sigma0(b)) <= envelope);
    CHECK(envelope < prev + 1e-300);
    prev = envelope;
  }
  for (const double b : {-7.3, -1.1, 0.4, 6.2}) {
    CHECK(std::abs(wkb::sigma0(b + 1e-9) - wkb::sigma0(b)) < 1e-6 * std::max(1.0, std::abs(wkb::sigma0(b))));
  }
}

TEST_CASE("computed sigma_0 tracks the WKB prediction") {
  double dev10_pos = 0, dev20_pos = 0, dev10_neg = 0, dev20_neg = 0;
  for (const double b : {-20.0, -15.0, -10.0, 10.0, 15.0, 20.0}) {
    const StokesResult r = compute_stokes(Cubic{0, b});
    const double dev = std::abs(wkb::rescale_sigma0(r[0], b) - wkb::rescaled_prediction(b));
    CHECK(dev < 0.05);
    if (b == 10) dev10_pos = dev;
    if (b == 20) dev20_pos = dev;
    if (b == -10) dev10_neg = dev;
    if (b == -20) dev20_neg = dev;
  }
  CHECK(dev20_pos < dev10_pos);
  CHECK(dev20_neg < dev10_neg);
}
