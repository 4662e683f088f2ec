#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "stokes/errors.hpp"
#include "stokes/monodromy.hpp"

using namespace stokes;
using test::close;

namespace {

const complex kGolden{0.0, -1.6180339887498949};  // −i(1+√5)/2
const complex kOtherRoot{0.0, 0.6180339887498949};

double max_difference(const Quintuple& a, const Quintuple& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 5; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

AsymptoticValues roots_of_unity(complex scale) {
  AsymptoticValues w;
  for (int k = -2; k <= 2; ++k) w[k] = scale * std::polar(1.0, 2 * kPi * k / 5);
  return w;
}

}  // namespace

TEST_CASE("sector slots cover 0..4") {
  std::vector<bool> seen(5, false);
  for (int k = -2; k <= 2; ++k) seen[sector_slot(k)] = true;
  for (const bool s : seen) CHECK(s);
  CHECK(sector_slot(3) == sector_slot(-2));
  CHECK(sector_slot(-3) == sector_slot(2));
}

TEST_CASE("stokes_from_asymptotics on fifth roots of unity") {
  const Quintuple s = stokes_from_asymptotics(roots_of_unity(1.0));
  for (const complex v : s) CHECK(close(v, kGolden, 1e-14));
  CHECK(consistency_residual(s) < 1e-14);
}

TEST_CASE("stokes_from_asymptotics degenerate input") {
  AsymptoticValues w = roots_of_unity(1.0);
  w[1] = w[0].value() + 1e-10;
  try {
    stokes_from_asymptotics(w);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateAsymptotics);
  }
}

TEST_CASE("property: sigma is invariant under Moebius maps of the asymptotic values") {
  test::Gen g(41);
  int done = 0;
  while (done < 200) {
    AsymptoticValues w;
    for (int k = -2; k <= 2; ++k) w[k] = g.point(2);
    const MoebiusMap m(g.point(2), g.point(2), g.point(2), g.point(2));
    if (!m.well_conditioned()) continue;
    AsymptoticValues mw;
    bool ok = true;
    for (int k = -2; k <= 2; ++k) {
      mw[k] = moebius_apply(m, w[k]);
      for (int j = -2; j < k; ++j) ok &= chordal_distance(w[k], w[j]) > 0.05;
    }
    if (!ok) continue;
    const Quintuple a = stokes_from_asymptotics(w);
    const Quintuple b = stokes_from_asymptotics(mw);
    for (std::size_t i = 0; i < 5; ++i) CHECK(test::close_rel(a[i], b[i], 1e-9));
    ++done;
  }
}

TEST_CASE("consistency_residual worked values") {
  Quintuple s;
  s.fill(kGolden);
  CHECK(consistency_residual(s) < 1e-15);
  s.fill(kOtherRoot);
  CHECK(consistency_residual(s) < 1e-15);
  s.fill(0.0);
  CHECK(consistency_residual(s) == doctest::Approx(1.0));
}

TEST_CASE("pure cubic: symmetric quintuple equal to the recorded root") {
  const StokesResult r = compute_stokes(Cubic{0, 0});
  for (int k = -2; k <= 2; ++k) {
    CHECK(close(r[k], kGolden, 1e-9));
    CHECK(std::abs(r[k] * r[k] + complex{0, 1} * r[k] + 1.0) < 1e-8);
  }
  CHECK(r.residual < 1e-8);
  CHECK(r.rays[sector_slot(0)].sector == 0);
}

TEST_CASE("property: residual, Cauchy data, angle and mode independence on the grid") {
  std::vector<Potential> grid;
  for (const double a : {-2.0, 0.0, 2.0}) {
    for (const double b : {-2.0, 0.0, 2.0}) grid.emplace_back(Cubic{a, b});
  }
  grid.emplace_back(Perturbed{1, 0, 0.5});
  grid.emplace_back(Perturbed{complex{0.5, 0.5}, complex{-1, 0.2}, complex{0.3, -0.4}});
  StokesConfig data;
  data.data = {1.0, complex{2, 1}, 3.0};
  StokesConfig angle;
  angle.angle_offset = 0.1;
  StokesConfig lin;
  lin.mode = Mode::Linearized;
  for (const auto& p : grid) {
    const StokesResult r = compute_stokes(p);
    CHECK(r.residual < 1e-8);
    CHECK(max_difference(r.sigma, compute_stokes(p, data).sigma) < 1e-8);
    CHECK(max_difference(r.sigma, compute_stokes(p, angle).sigma) < 1e-8);
    CHECK(max_difference(r.sigma, compute_stokes(p, lin).sigma) < 1e-8);
  }
}

TEST_CASE("small |y| moves the base point") {
  const StokesResult r = compute_stokes(Perturbed{1e-9, 0, 0});
  CHECK(r.residual < 1e-8);
}

TEST_CASE("serial and parallel evaluation agree bitwise") {
  StokesConfig serial;
  serial.parallel = false;
  const Potential p = Cubic{complex{0.5, -1}, 1.5};
  const StokesResult a = compute_stokes(p);
  const StokesResult b = compute_stokes(p, serial);
  for (std::size_t i = 0; i < 5; ++i) CHECK(a.sigma[i] == b.sigma[i]);
}

TEST_CASE("isomonodromy") {
  const PIState start{0, 1, 0};
  CHECK(check_isomonodromy(start, 0.0) == 0.0);
  CHECK(check_isomonodromy(start, 0.5, 3) < 1e-6);
  const IsomonodromyReport rep = isomonodromy_report(start, 0.5, 3);
  CHECK(rep.states.size() == 3);
  CHECK(close(rep.states[1].z, 0.25, 1e-15));
  // Same y, y′ at a different z without following P-I: σ moves.
  const double frozen = max_difference(compute_stokes(Perturbed{1, 0, 0}).sigma,
                                       compute_stokes(Perturbed{1, 0, 0.5}).sigma);
  CHECK(frozen > 1e-3);
}

TEST_CASE("isomonodromy along a complex path") {
  CHECK(check_isomonodromy({0, 1, 0}, complex{0.2, 0.3}, 3) < 1e-6);
}

TEST_CASE("pole limit") {
  const std::vector<double> d{0.4, 0.2, 0.1};
  const auto dev = laurent_limit_check({0, 0}, d);
  REQUIRE(dev.size() == 3);
  CHECK(dev[1] <= dev[0]);
  CHECK(dev[2] <= dev[1]);
  CHECK(dev[2] < 1e-3);
  const std::vector<double> zero{0.0};
  try {
    laurent_limit_check({0, 0}, zero);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AtPole);
  }
}

TEST_CASE("pole limit with a nonzero Laurent coefficient approaches relatively") {
  const PolePoint p{1, 0.5};
  const std::vector<double> d{0.4, 0.2, 0.1};
  const auto dev = laurent_limit_check(p, d);
  const StokesResult lim = compute_stokes(pole_limit_potential(p));
  double scale = 0.0;
  for (const complex s : lim.sigma) scale = std::max(scale, std::abs(s));
  CHECK(dev[1] <= dev[0]);
  CHECK(dev[2] <= dev[1]);
  CHECK(dev[2] / scale < 0.05);
}
