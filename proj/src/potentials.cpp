#include "stokes/potentials.hpp"

#include <cmath>

#include "stokes/errors.hpp"
#include "stokes/ode.hpp"

namespace stokes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

complex eval_potential(const Potential& p, complex lambda) {
  return std::visit(
      overloaded{
          [lambda](const Perturbed& q) -> complex {
            const complex u = lambda - q.y;
            if (u == complex{0.0, 0.0}) {
              throw Error(ErrorKind::SingularEvaluation, "potential evaluated at its pole lambda = y");
            }
            const complex& y = q.y;
            const complex& yp = q.y_prime;
            const complex& z = q.z;
            return 4.0 * lambda * lambda * lambda - 2.0 * lambda * z + 2.0 * z * y -
                   4.0 * y * y * y + yp * yp + yp / u + 0.75 / (u * u);
          },
          [lambda](const Cubic& q) -> complex {
            return 4.0 * lambda * lambda * lambda - q.a * lambda - q.b;
          },
      },
      p);
}

complex schwarzian_rhs(const Potential& p, complex lambda) { return -2.0 * eval_potential(p, lambda); }

std::optional<complex> singular_point(const Potential& p) noexcept {
  if (const auto* q = std::get_if<Perturbed>(&p)) return q->y;
  return std::nullopt;
}

complex linear_coefficient(const Potential& p) noexcept {
  return std::visit(overloaded{[](const Perturbed& q) { return q.z; },
                               [](const Cubic& q) { return q.a / 2.0; }},
                    p);
}

Potential pole_limit_potential(const PolePoint& p) noexcept {
  return Cubic{2.0 * p.location, 28.0 * p.coeff4};
}

LaurentValue laurent_pair(const PolePoint& p, complex z) {
  const complex u = z - p.location;
  if (u == complex{0.0, 0.0}) throw Error(ErrorKind::AtPole, "Laurent expansion evaluated at the pole");
  if (std::abs(u) > 1.0) {
    throw Error(ErrorKind::OutsideTruncationRadius, "|z - pole| > 1 is outside the truncation guard");
  }
  const complex& a = p.location;
  const complex& b = p.coeff4;
  const complex u2 = u * u;
  const complex u3 = u2 * u;
  const complex u4 = u2 * u2;
  return {
      1.0 / u2 + a * u2 / 10.0 + u3 / 6.0 + b * u4,
      -2.0 / u3 + a * u / 5.0 + u2 / 2.0 + 4.0 * b * u3,
  };
}

std::pair<complex, complex> pi_rhs(const PIState& s) noexcept {
  return {s.y_prime, 6.0 * s.y * s.y - s.z};
}

PIState integrate_pi_segment(const PIState& start, complex z_end, const PIOptions& options) {
  const complex dz = z_end - start.z;
  if (dz == complex{0.0, 0.0}) return start;

  // Parameterize z = start.z + s·dz with s ∈ [0, 1].
  auto rhs = [&](double s, const ode::State<2>& u) -> ode::State<2> {
    const auto [dy, dyp] = pi_rhs({start.z + s * dz, u[0], u[1]});
    return {dz * dy, dz * dyp};
  };
  auto tol = ode::Tolerances<2>::uniform(options.abs_tol, options.rel_tol);
  tol.max_step = 0.05;
  tol.min_step = 1e-14;
  ode::DormandPrince<2, decltype(rhs)> solver(rhs, tol, 1e-3);

  double s = 0.0;
  ode::State<2> u{start.y, start.y_prime};
  auto guard = [&](double at, const ode::State<2>& v) {
    if (std::abs(v[0]) > options.pole_guard) {
      throw Error(ErrorKind::PoleEncountered,
                  "|y| exceeded the pole guard near z = " +
                      std::to_string((start.z + at * dz).real()) + "+" +
                      std::to_string((start.z + at * dz).imag()) + "i");
    }
  };
  try {
    solver.advance(s, u, 1.0, guard);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::StiffnessFailure) {
      throw Error(ErrorKind::PoleEncountered, std::string("step size collapsed: ") + e.what());
    }
    throw;
  }
  return {z_end, u[0], u[1]};
}

}  // namespace stokes
