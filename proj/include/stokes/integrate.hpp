#pragma once

// Ray integration of the Schwarzian equation {f, λ} = −2Q(λ) into a Stokes
// sector, and detection of the asymptotic value w_k(f).

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "stokes/potentials.hpp"
#include "stokes/sphere.hpp"

namespace stokes {

inline constexpr double kPi = 3.14159265358979323846;

enum class Mode { Direct, Linearized };

const char* to_string(Mode mode) noexcept;

/// Center of Stokes sector k: 2πk/5.
double sector_center(int sector) noexcept;

/// A ray λ* + e^{iα}x, x ≥ 0, into Stokes sector k, together with the
/// checkpoint spacing and stopping rule used to read off its limit.
struct RaySpec {
  int sector = 0;
  double angle = 0.0;
  complex base{0.0, 0.0};
  /// Checkpoint spacing Δ along x.
  double spacing = 0.1;
  /// Stopping criterion on successive checkpoint differences.
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  double min_length = 5.0;
  double max_length = 200.0;
  /// Local error tolerances of the Runge–Kutta pair.
  double ode_abs_tol = 1e-12;
  double ode_rel_tol = 1e-12;
  /// Chart switch when the active value exceeds this magnitude.
  double flip_threshold = 1e4;
  /// Consecutive checkpoint pairs that must satisfy the stopping criterion.
  int consecutive = 3;
};

/// Values of f, f', f'' at the base point λ*.
struct CauchyData {
  complex f0{0.0, 0.0};
  complex f1{1.0, 0.0};
  complex f2{0.0, 0.0};
};

/// Cauchy data of m∘f computed by the chain rule from the data of f.
CauchyData moebius_cauchy_data(const MoebiusMap& m, const CauchyData& c);

/// t(x) = f(λ* + e^{iα}x) with {t, x} = −2 e^{2iα} Q(λ* + e^{iα}x).
struct RayProblem {
  Potential potential;
  complex base;
  complex direction;
  /// t(0), t'(0), t''(0)
  std::array<complex, 3> initial;

  complex point(double x) const noexcept { return base + direction * x; }
  /// {t, x} at x
  complex rhs(double x) const;
};

/// Validates the ray (sector membership, distance from λ = y, Cauchy data)
/// and rotates the data onto the ray.
RayProblem transform_to_ray(const Potential& p, const RaySpec& ray, const CauchyData& c);

enum class Chart { Direct, Inverted };

/// Meromorphic continuation state: the jet (value, first, second derivative)
/// of f in the direct chart or of g = 1/f in the inverted chart.
struct ChartState {
  Chart chart = Chart::Direct;
  std::array<complex, 3> jet{};
  int flips = 0;
};

/// Switch between f and 1/f. Throws FlipAtZero for a vanishing value.
ChartState flip_chart(const ChartState& s);

struct RayResult {
  int sector = 0;
  double angle = 0.0;
  Mode mode = Mode::Direct;
  SpherePoint w;
  bool converged = false;
  double x_stop = 0.0;
  int checkpoints_used = 0;
  int flips = 0;
  /// Predicted decay exponent per unit x at the stopping point.
  double rate_estimate = 0.0;
  /// |t_n − t_{n−1}| for the last few checkpoints whose increment is above
  /// the rounding floor 1e-14·|t_n| (most recent last).
  std::vector<double> tail_increments;
  /// Linearized mode: max drift of φχ′ − φ′χ between renormalizations,
  /// relative to |φχ′| + |φ′χ|.
  double wronskian_drift = 0.0;
  long rk_steps = 0;
  /// Angle attempts consumed by the sector retry policy (1 = first angle worked).
  int attempts = 1;
};

/// Stopping rule on checkpoint samples t_0, t_1, ... taken at x = nΔ.
/// Returns the last sample once both the absolute and relative difference
/// criteria hold for `ray.consecutive` consecutive pairs whose checkpoints all
/// lie at x ≥ ray.min_length.
std::optional<complex> detect_convergence(std::span<const complex> samples, const RaySpec& ray);

/// Re((8/5)λ^{5/2} − zλ^{1/2}) at λ = λ* + e^{iα}x, with the λ^{1/2} branch
/// that makes it non-negative.
double convergence_rate_estimate(const Potential& p, const RaySpec& ray, double x);

RayResult integrate_ray(const Potential& p, const RaySpec& ray, const CauchyData& c, Mode mode);

}  // namespace stokes
