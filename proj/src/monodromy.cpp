#include "stokes/monodromy.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <string>

#include "stokes/errors.hpp"

namespace stokes {

namespace {

constexpr std::array<double, 5> kAngleRetries{0.0, 0.07, -0.07, 0.13, -0.13};
constexpr double kSingularAngleMargin = 0.05;
const complex kI{0.0, 1.0};

bool retryable(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularRay:
    case ErrorKind::StiffnessFailure:
    case ErrorKind::RayThroughSingularity:
    case ErrorKind::NoConvergence:
      return true;
    default:
      return false;
  }
}

complex default_base(const Potential& p, const StokesConfig& config) {
  if (config.base) return *config.base;
  if (const auto y = singular_point(p); y && std::abs(*y) < 1e-6) return 1.0;
  return 0.0;
}

}  // namespace

Quintuple stokes_from_asymptotics(const AsymptoticValues& w, double min_separation) {
  for (int k = -2; k <= 2; ++k) {
    if (chordal_distance(w[k], w[k + 1]) <= min_separation) {
      throw Error(ErrorKind::DegenerateAsymptotics,
                  "asymptotic values of sectors " + std::to_string(k) + " and " +
                      std::to_string(k + 1 > 2 ? -2 : k + 1) + " coincide");
    }
  }
  Quintuple sigma{};
  for (int k = -2; k <= 2; ++k) {
    SpherePoint ratio;
    try {
      ratio = cross_ratio(w[k + 1], w[k - 2], w[k - 1], w[k + 2]);
    } catch (const Error& e) {
      throw Error(ErrorKind::DegenerateAsymptotics,
                  "sigma_" + std::to_string(k) + ": " + std::string(e.what()));
    }
    if (ratio.is_infinite()) {
      throw Error(ErrorKind::InfiniteMultiplier, "sigma_" + std::to_string(k) + " is infinite");
    }
    sigma[sector_slot(k)] = kI * ratio.value();
  }
  return sigma;
}

double consistency_residual(const Quintuple& sigma) noexcept {
  double residual = 0.0;
  for (int k = -2; k <= 2; ++k) {
    const complex defect =
        -kI * sigma[sector_slot(k + 3)] - 1.0 - sigma[sector_slot(k)] * sigma[sector_slot(k + 1)];
    residual = std::max(residual, std::abs(defect));
  }
  return residual;
}

RayResult integrate_sector(const Potential& p, int sector, const StokesConfig& config) {
  RaySpec ray = config.ray;
  ray.sector = sector;
  ray.base = default_base(p, config);
  const auto y = singular_point(p);
  const double center = sector_center(sector) + config.angle_offset;

  int attempts = 0;
  std::optional<Error> last_error;
  for (const double delta : kAngleRetries) {
    ray.angle = center + delta;
    if (y && *y != ray.base) {
      const double gap = std::remainder(ray.angle - std::arg(*y - ray.base), 2.0 * kPi);
      if (std::abs(gap) < kSingularAngleMargin) continue;
    }
    ++attempts;
    try {
      RayResult r = integrate_ray(p, ray, config.data, config.mode);
      r.attempts = attempts;
      return r;
    } catch (const Error& e) {
      if (!retryable(e.kind())) throw;
      last_error = e;
    }
  }
  if (last_error) throw *last_error;
  throw Error(ErrorKind::RayThroughSingularity,
              "no admissible ray angle in sector " + std::to_string(sector));
}

StokesResult compute_stokes(const Potential& p, const StokesConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  StokesResult result;
  result.mode = config.mode;

  if (config.parallel) {
    std::array<std::future<RayResult>, 5> pending;
    for (int k = -2; k <= 2; ++k) {
      pending[sector_slot(k)] =
          std::async(std::launch::async, [&p, &config, k] { return integrate_sector(p, k, config); });
    }
    // Collect every future before rethrowing so no task outlives this frame.
    std::optional<Error> failure;
    for (int k = -2; k <= 2; ++k) {
      try {
        result.rays[sector_slot(k)] = pending[sector_slot(k)].get();
      } catch (const Error& e) {
        if (!failure) failure = e;
      }
    }
    if (failure) throw *failure;
  } else {
    for (int k = -2; k <= 2; ++k) result.rays[sector_slot(k)] = integrate_sector(p, k, config);
  }

  for (int k = -2; k <= 2; ++k) result.w[k] = result.rays[sector_slot(k)].w;
  result.sigma = stokes_from_asymptotics(result.w, config.min_separation);
  result.residual = consistency_residual(result.sigma);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

IsomonodromyReport isomonodromy_report(const PIState& start, complex z_end, int samples,
                                       const StokesConfig& config) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be positive");
  IsomonodromyReport report;
  const int count = z_end == start.z ? 1 : samples;
  PIState state = start;
  for (int i = 0; i < count; ++i) {
    if (i > 0) {
      const complex z_next = start.z + (z_end - start.z) * (static_cast<double>(i) / (count - 1));
      state = integrate_pi_segment(state, z_next);
    }
    report.states.push_back(state);
    report.results.push_back(compute_stokes(Perturbed{state.y, state.y_prime, state.z}, config));
  }
  const Quintuple& reference = report.results.front().sigma;
  for (const auto& r : report.results) {
    for (std::size_t j = 0; j < 5; ++j) {
      report.max_deviation = std::max(report.max_deviation, std::abs(r.sigma[j] - reference[j]));
    }
  }
  return report;
}

double check_isomonodromy(const PIState& start, complex z_end, int samples,
                          const StokesConfig& config) {
  return isomonodromy_report(start, z_end, samples, config).max_deviation;
}

std::vector<double> laurent_limit_check(const PolePoint& p, std::span<const double> distances,
                                        const StokesConfig& config) {
  std::vector<double> deviations;
  deviations.reserve(distances.size());
  std::optional<Quintuple> limit;
  for (const double d : distances) {
    if (!(d <= 0.5)) throw Error(ErrorKind::InvalidArgument, "pole distance must be at most 0.5");
    const complex z = p.location + d;
    const LaurentValue yv = laurent_pair(p, z);
    if (!limit) limit = compute_stokes(pole_limit_potential(p), config).sigma;
    const Quintuple sigma = compute_stokes(Perturbed{yv.y, yv.y_prime, z}, config).sigma;
    double dev = 0.0;
    for (std::size_t j = 0; j < 5; ++j) dev = std::max(dev, std::abs(sigma[j] - (*limit)[j]));
    deviations.push_back(dev);
  }
  return deviations;
}

}  // namespace stokes
