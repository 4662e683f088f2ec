#include "stokes/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stokes/errors.hpp"
#include "stokes/ode.hpp"

namespace stokes {

namespace {

constexpr double kSingularRayDistance = 1e-6;
constexpr double kSingularStepDistance = 1e-9;
constexpr double kMinDerivative = 1e-300;
constexpr double kInfinityCutoff = 1e-8;
constexpr double kRenormalizeAbove = 1e100;
constexpr double kRoundingFloor = 1e-14;
constexpr double kRenormalizeFactor = 1e-100;
constexpr std::size_t kTailLength = 8;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_ray(const RaySpec& ray) {
  if (!(ray.spacing > 0.0) || !(ray.min_length >= 0.0) || !(ray.max_length >= ray.min_length) ||
      !(ray.abs_tol > 0.0) || !(ray.rel_tol > 0.0) || !(ray.ode_abs_tol > 0.0) ||
      !(ray.ode_rel_tol > 0.0) || !(ray.flip_threshold > 1.0) || ray.consecutive < 1) {
    throw Error(ErrorKind::InvalidRay, "ray parameters out of range");
  }
  const double offset = std::remainder(ray.angle - sector_center(ray.sector), 2.0 * kPi);
  if (!(std::abs(offset) < kPi / 5.0)) {
    throw Error(ErrorKind::InvalidRay, "ray angle lies outside its Stokes sector");
  }
}

// Distance from q to the ray base + direction·x, x ≥ 0 (|direction| = 1).
double distance_to_ray(complex q, complex base, complex direction) {
  const complex u = (q - base) * std::conj(direction);
  if (u.real() <= 0.0) return std::abs(q - base);
  return std::abs(u.imag());
}

void push_tail(std::vector<double>& tail, double value) {
  if (tail.size() == kTailLength) tail.erase(tail.begin());
  tail.push_back(value);
}

SpherePoint chart_value(Chart chart, complex v) {
  if (chart == Chart::Direct) return v;
  if (std::abs(v) < kInfinityCutoff) return SpherePoint::infinity();
  return 1.0 / v;
}

// Checkpoint bookkeeping shared by both modes. Samples are recorded in the
// chart active at the checkpoint; a chart change invalidates the history.
class CheckpointLog {
 public:
  explicit CheckpointLog(const RaySpec& ray) : ray_(ray) {}

  std::optional<complex> record(Chart chart, complex value) {
    if (!samples_.empty() && chart != chart_) {
      std::fill(samples_.begin(), samples_.end(), complex{kNaN, kNaN});
      tail_.clear();
    }
    chart_ = chart;
    if (!samples_.empty() && std::isfinite(samples_.back().real())) {
      // Increments at the rounding floor carry no information about the decay.
      const double step = std::abs(value - samples_.back());
      if (step > kRoundingFloor * std::abs(value)) push_tail(tail_, step);
    }
    samples_.push_back(value);
    return detect_convergence(samples_, ray_);
  }

  int size() const noexcept { return static_cast<int>(samples_.size()); }
  Chart chart() const noexcept { return chart_; }
  const std::vector<double>& tail() const noexcept { return tail_; }

 private:
  const RaySpec& ray_;
  std::vector<complex> samples_;
  std::vector<double> tail_;
  Chart chart_ = Chart::Direct;
};

RayResult integrate_direct(const Potential& p, const RaySpec& ray, const RayProblem& problem) {
  const auto y_sing = singular_point(p);

  ChartState chart;
  chart.jet = problem.initial;
  if (std::abs(chart.jet[0]) > ray.flip_threshold) chart = flip_chart(chart);

  // The Schwarzian equation is the same in both charts:
  // v''' = R v' + (3/2) v''² / v'.
  auto rhs = [&problem](double x, const ode::State<3>& v) -> ode::State<3> {
    return {v[1], v[2], problem.rhs(x) * v[1] + 1.5 * v[2] * v[2] / v[1]};
  };
  // t' and t'' decay super-exponentially; an absolute floor on them would let
  // v''²/v' lose all relative accuracy and destabilize the tail.
  auto tol = ode::Tolerances<3>::uniform(ray.ode_abs_tol, ray.ode_rel_tol);
  tol.abs_tol[1] = tol.abs_tol[2] = kMinDerivative;
  tol.scale_partner[2] = 1;
  tol.max_step = ray.spacing;
  ode::DormandPrince<3, decltype(rhs)> solver(rhs, tol, std::min(1e-3, ray.spacing));

  auto guard = [&](double x, ode::State<3>& v) {
    if (y_sing && std::abs(problem.point(x) - *y_sing) < kSingularStepDistance) {
      throw Error(ErrorKind::SingularRay, "integration step landed on the singular point");
    }
    if (std::abs(v[1]) < kMinDerivative) {
      throw Error(ErrorKind::StiffnessFailure, "first derivative underflowed before convergence");
    }
    if (std::abs(v[0]) > ray.flip_threshold) {
      chart.jet = v;
      chart = flip_chart(chart);
      v = chart.jet;
    }
  };

  CheckpointLog log(ray);
  log.record(chart.chart, chart.jet[0]);
  double x = 0.0;
  ode::State<3> state = chart.jet;
  for (int n = 1;; ++n) {
    const double x_next = n * ray.spacing;
    if (x_next > ray.max_length * (1.0 + 1e-12)) break;
    solver.advance(x, state, x_next, guard);
    if (const auto limit = log.record(chart.chart, state[0])) {
      RayResult r;
      r.w = chart_value(chart.chart, *limit);
      r.converged = true;
      r.x_stop = x;
      r.checkpoints_used = n;
      r.flips = chart.flips;
      r.rate_estimate = convergence_rate_estimate(p, ray, x);
      r.tail_increments = log.tail();
      r.rk_steps = solver.statistics().accepted;
      return r;
    }
  }
  throw Error(ErrorKind::NoConvergence,
              "sector " + std::to_string(ray.sector) + ": no convergence up to x = " +
                  std::to_string(ray.max_length));
}

RayResult integrate_linearized(const Potential& p, const RaySpec& ray, const RayProblem& problem) {
  // ψ'' = q ψ along the ray with q = e^{2iα} Q = −R/2, for R = {t, x}.
  auto rhs = [&problem](double x, const ode::State<4>& v) -> ode::State<4> {
    const complex q = -0.5 * problem.rhs(x);
    return {v[1], q * v[0], v[3], q * v[2]};
  };

  // χ(0) = 1, χ'(0) = s and φ(0) = t0, φ'(0) = t1 + t0 s reproduce
  // φ/χ = t0 + t1 x + t2 x²/2 + ... when s = −t2 / (2 t1).
  const auto& [t0, t1, t2] = problem.initial;
  const complex s = -t2 / (2.0 * t1);
  ode::State<4> state{t0, t1 + t0 * s, 1.0, s};

  auto wronskian = [](const ode::State<4>& v) { return v[0] * v[3] - v[1] * v[2]; };
  // Both solutions pick up the dominant growth, so W = φχ' − φ'χ becomes a
  // difference of two huge products; drift is measured against their size.
  auto drift_of = [&wronskian](const ode::State<4>& v, complex ref) {
    const double scale = std::abs(v[0] * v[3]) + std::abs(v[1] * v[2]);
    return std::abs(wronskian(v) - ref) / std::max(scale, std::abs(ref));
  };
  complex w_ref = wronskian(state);
  double drift = 0.0;

  auto tol = ode::Tolerances<4>::uniform(ray.ode_abs_tol, ray.ode_rel_tol);
  tol.max_step = ray.spacing;
  ode::DormandPrince<4, decltype(rhs)> solver(rhs, tol, std::min(1e-3, ray.spacing));

  auto guard = [&](double, ode::State<4>& v) {
    double big = 0.0;
    for (const auto& c : v) big = std::max(big, std::abs(c));
    if (big > kRenormalizeAbove) {
      drift = std::max(drift, drift_of(v, w_ref));
      for (auto& c : v) c *= kRenormalizeFactor;
      w_ref = wronskian(v);
    }
  };

  ChartState chart;
  auto ratio = [&chart](const ode::State<4>& v) {
    return chart.chart == Chart::Direct ? v[0] / v[2] : v[2] / v[0];
  };
  auto update_chart = [&](const ode::State<4>& v) {
    // Hysteresis on |φ/χ| (or |χ/φ|), mirroring the direct-mode flips.
    const complex r = ratio(v);
    if (!(std::abs(r) <= ray.flip_threshold)) {
      chart.chart = chart.chart == Chart::Direct ? Chart::Inverted : Chart::Direct;
      ++chart.flips;
    }
  };

  CheckpointLog log(ray);
  update_chart(state);
  log.record(chart.chart, ratio(state));
  double x = 0.0;
  for (int n = 1;; ++n) {
    const double x_next = n * ray.spacing;
    if (x_next > ray.max_length * (1.0 + 1e-12)) break;
    solver.advance(x, state, x_next, guard);
    drift = std::max(drift, drift_of(state, w_ref));
    update_chart(state);
    if (const auto limit = log.record(chart.chart, ratio(state))) {
      RayResult r;
      r.w = chart_value(chart.chart, *limit);
      r.converged = true;
      r.x_stop = x;
      r.checkpoints_used = n;
      r.flips = chart.flips;
      r.rate_estimate = convergence_rate_estimate(p, ray, x);
      r.tail_increments = log.tail();
      r.wronskian_drift = drift;
      r.rk_steps = solver.statistics().accepted;
      return r;
    }
  }
  throw Error(ErrorKind::NoConvergence,
              "sector " + std::to_string(ray.sector) + ": no convergence up to x = " +
                  std::to_string(ray.max_length));
}

}  // namespace

const char* to_string(Mode mode) noexcept {
  return mode == Mode::Direct ? "direct" : "linearized";
}

double sector_center(int sector) noexcept { return 2.0 * kPi * sector / 5.0; }

CauchyData moebius_cauchy_data(const MoebiusMap& m, const CauchyData& c) {
  const complex den = m.c() * c.f0 + m.d();
  if (den == complex{0.0, 0.0}) {
    throw Error(ErrorKind::InvalidCauchyData, "Moebius image of the base value is infinite");
  }
  const complex det = m.determinant();
  return {
      (m.a() * c.f0 + m.b()) / den,
      det * c.f1 / (den * den),
      det * (c.f2 * den - 2.0 * m.c() * c.f1 * c.f1) / (den * den * den),
  };
}

complex RayProblem::rhs(double x) const {
  return direction * direction * schwarzian_rhs(potential, point(x));
}

RayProblem transform_to_ray(const Potential& p, const RaySpec& ray, const CauchyData& c) {
  validate_ray(ray);
  if (!(std::abs(c.f1) > 1e-12)) {
    throw Error(ErrorKind::InvalidCauchyData, "f'(base) must be nonzero");
  }
  const complex direction = std::polar(1.0, ray.angle);
  if (const auto y = singular_point(p)) {
    if (distance_to_ray(*y, ray.base, direction) <= kSingularRayDistance) {
      throw Error(ErrorKind::RayThroughSingularity,
                  "ray in sector " + std::to_string(ray.sector) + " passes through lambda = y");
    }
  }
  return RayProblem{p, ray.base, direction, {c.f0, direction * c.f1, direction * direction * c.f2}};
}

ChartState flip_chart(const ChartState& s) {
  const auto& [f, f1, f2] = s.jet;
  if (!(std::abs(f) >= 1e-300)) throw Error(ErrorKind::FlipAtZero, "cannot invert a vanishing value");
  const complex inv = 1.0 / f;
  ChartState out;
  out.chart = s.chart == Chart::Direct ? Chart::Inverted : Chart::Direct;
  out.jet = {inv, -f1 * inv * inv, (2.0 * f1 * f1 - f * f2) * inv * inv * inv};
  out.flips = s.flips + 1;
  return out;
}

std::optional<complex> detect_convergence(std::span<const complex> samples, const RaySpec& ray) {
  const int n = static_cast<int>(samples.size()) - 1;
  const int needed = std::max(ray.consecutive, 1);
  if (n < needed) return std::nullopt;
  // All checkpoints carrying the criterion must lie past min_length.
  if ((n - needed + 1) * ray.spacing < ray.min_length - 1e-9 * ray.spacing) return std::nullopt;
  for (int j = n - needed + 1; j <= n; ++j) {
    const complex cur = samples[j];
    const complex diff = cur - samples[j - 1];
    const double abs_diff = std::abs(diff);
    if (abs_diff == 0.0) continue;
    if (!(abs_diff < ray.abs_tol)) return std::nullopt;
    if (!(abs_diff / std::abs(cur) < ray.rel_tol)) return std::nullopt;
  }
  return samples[n];
}

double convergence_rate_estimate(const Potential& p, const RaySpec& ray, double x) {
  const complex lambda = ray.base + std::polar(x, ray.angle);
  const complex root = std::sqrt(lambda);
  const complex z = linear_coefficient(p);
  const double exponent = (1.6 * lambda * lambda * root - z * root).real();
  return std::abs(exponent);
}

RayResult integrate_ray(const Potential& p, const RaySpec& ray, const CauchyData& c, Mode mode) {
  const RayProblem problem = transform_to_ray(p, ray, c);
  RayResult r = mode == Mode::Direct ? integrate_direct(p, ray, problem)
                                     : integrate_linearized(p, ray, problem);
  r.sector = ray.sector;
  r.angle = ray.angle;
  r.mode = mode;
  return r;
}

}  // namespace stokes
