#pragma once

// Stokes multipliers from asymptotic values: five rays, one per Stokes
// sector, for a single solution f of the Schwarzian equation, then
// σ_k = i·(w_{k+1}, w_{k−2}; w_{k−1}, w_{k+2}).

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "stokes/integrate.hpp"
#include "stokes/potentials.hpp"
#include "stokes/sphere.hpp"

namespace stokes {

/// Array slot for sector index k ∈ ℤ₅ (k = −2 ↦ 0, ..., k = 2 ↦ 4).
constexpr std::size_t sector_slot(int k) noexcept {
  return static_cast<std::size_t>(((k + 2) % 5 + 5) % 5);
}

using Quintuple = std::array<complex, 5>;

/// w_k for k = −2..2, stored by sector_slot.
struct AsymptoticValues {
  std::array<SpherePoint, 5> w;

  SpherePoint& operator[](int k) noexcept { return w[sector_slot(k)]; }
  const SpherePoint& operator[](int k) const noexcept { return w[sector_slot(k)]; }
};

/// Minimum chordal separation required between adjacent asymptotic values.
inline constexpr double kDefaultMinSeparation = 1e-8;

/// All five σ_k, indexed by sector_slot. Throws DegenerateAsymptotics when
/// adjacent values are closer than `min_separation` (chordal) or a cross-ratio
/// configuration degenerates, and InfiniteMultiplier for an infinite
/// cross-ratio.
Quintuple stokes_from_asymptotics(const AsymptoticValues& w,
                                  double min_separation = kDefaultMinSeparation);

/// max_k |−i σ_{k+3} − 1 − σ_k σ_{k+1}|
double consistency_residual(const Quintuple& sigma) noexcept;

struct StokesConfig {
  Mode mode = Mode::Direct;
  /// Shared Cauchy data; base point defaults to 0, or 1 when |y| < 1e-6.
  CauchyData data{};
  std::optional<complex> base;
  /// Added to every sector-center angle before the retry policy applies.
  double angle_offset = 0.0;
  /// Spacing, stopping tolerances, lengths and integrator tolerances; the
  /// sector, angle and base fields are overwritten per ray.
  RaySpec ray{};
  double min_separation = kDefaultMinSeparation;
  bool parallel = true;
};

struct StokesResult {
  Quintuple sigma{};
  double residual = 0.0;
  AsymptoticValues w;
  std::array<RayResult, 5> rays;
  Mode mode = Mode::Direct;
  double wall_seconds = 0.0;

  complex operator[](int k) const noexcept { return sigma[sector_slot(k)]; }
};

/// Asymptotic value in sector k, trying the sector angle and then small
/// perturbations of it when the ray is singular or the integration fails.
RayResult integrate_sector(const Potential& p, int sector, const StokesConfig& config);

StokesResult compute_stokes(const Potential& p, const StokesConfig& config = {});

struct IsomonodromyReport {
  double max_deviation = 0.0;
  std::vector<PIState> states;
  std::vector<StokesResult> results;
};

/// σ at `samples` equally spaced points of the P-I segment start.z → z_end.
IsomonodromyReport isomonodromy_report(const PIState& start, complex z_end, int samples,
                                       const StokesConfig& config = {});

/// max over k and samples of |σ_k(z_i) − σ_k(z_0)| along the P-I segment.
double check_isomonodromy(const PIState& start, complex z_end, int samples = 3,
                          const StokesConfig& config = {});

/// For each distance d, max_k |σ_k(perturbed at location + d) − σ_k(cubic limit)|.
std::vector<double> laurent_limit_check(const PolePoint& p, std::span<const double> distances,
                                        const StokesConfig& config = {});

}  // namespace stokes
