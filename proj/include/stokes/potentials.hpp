#pragma once

// Potentials of the perturbed cubic oscillator ψ'' = Q(λ; y, y', z) ψ and of
// the cubic oscillator ψ'' = (4λ³ − aλ − b) ψ, together with the Painlevé-I
// machinery that moves (y, y') along z.

#include <complex>
#include <optional>
#include <variant>

namespace stokes {

using complex = std::complex<double>;

/// Q(λ) = 4λ³ − 2λz + 2zy − 4y³ + y'² + y'/(λ − y) + 3/(4(λ − y)²).
struct Perturbed {
  complex y;
  complex y_prime;
  complex z;
};

/// V(λ) = 4λ³ − aλ − b.
struct Cubic {
  complex a;
  complex b;
};

using Potential = std::variant<Perturbed, Cubic>;

/// Pole of a Painlevé-I solution with the free coefficient of (z − a)⁴ in its
/// Laurent expansion.
struct PolePoint {
  complex location;
  complex coeff4;
};

/// Cauchy data of a Painlevé-I solution at z.
struct PIState {
  complex z;
  complex y;
  complex y_prime;
};

struct LaurentValue {
  complex y;
  complex y_prime;
};

/// Throws SingularEvaluation at λ = y for the perturbed potential.
complex eval_potential(const Potential& p, complex lambda);

/// Right-hand side of {f, λ} = −2 Q(λ).
complex schwarzian_rhs(const Potential& p, complex lambda);

/// Finite singular point λ = y of the perturbed potential; none for Cubic.
std::optional<complex> singular_point(const Potential& p) noexcept;

/// Coefficient multiplying −2λ in the potential: z for Perturbed, a/2 for
/// Cubic. It enters the subleading term of the WKB phase.
complex linear_coefficient(const Potential& p) noexcept;

/// Cubic{2·location, 28·coeff4}.
Potential pole_limit_potential(const PolePoint& p) noexcept;

/// Laurent expansion truncated after the (z − a)⁴ term, and its derivative.
/// Requires 0 < |z − location| ≤ 1.
LaurentValue laurent_pair(const PolePoint& p, complex z);

/// (y', 6y² − z)
std::pair<complex, complex> pi_rhs(const PIState& s) noexcept;

struct PIOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  /// |y| above this along the path is treated as hitting a pole.
  double pole_guard = 1e6;
};

/// Continue the Painlevé-I state along the straight segment start.z → z_end.
/// Throws PoleEncountered when |y| exceeds the pole guard.
PIState integrate_pi_segment(const PIState& start, complex z_end, const PIOptions& options = {});

}  // namespace stokes
