#pragma once

// Dormand–Prince 5(4) embedded Runge–Kutta pair over complex state vectors
// parameterized by a real variable. Used for the Painlevé-I continuation and
// for the ray integrations.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>

#include "stokes/errors.hpp"

namespace stokes::ode {

using complex = std::complex<double>;

template <std::size_t N>
using State = std::array<complex, N>;

template <std::size_t N>
struct Tolerances {
  /// Per-component absolute tolerance.
  std::array<double, N> abs_tol{};
  double rel_tol = 1e-12;
  /// Optional per-component partner whose magnitude also enters the error
  /// scale of component i (−1 for none). Lets a component that starts at
  /// zero borrow the scale of a related one.
  std::array<int, N> scale_partner = filled(-1);
  double min_step = 1e-12;
  double max_step = 1.0;
  long max_steps = 5'000'000;

  static constexpr std::array<int, N> filled(int v) {
    std::array<int, N> a{};
    a.fill(v);
    return a;
  }

  static Tolerances uniform(double abs_tol, double rel_tol) {
    Tolerances t;
    t.abs_tol.fill(abs_tol);
    t.rel_tol = rel_tol;
    return t;
  }
};

struct Statistics {
  long accepted = 0;
  long rejected = 0;
};

namespace detail {

// Dormand & Prince (1980) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// b − b̂ (fifth minus fourth order weights)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
  State<N> out = y;
  for (const auto& [coef, k] : terms) {
    for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
  }
  return out;
}

}  // namespace detail

/// Adaptive integrator holding the current step size between calls, so a
/// long integration can be advanced checkpoint by checkpoint.
template <std::size_t N, class Rhs>
class DormandPrince {
 public:
  DormandPrince(Rhs rhs, Tolerances<N> tol, double initial_step = 1e-3)
      : rhs_(std::move(rhs)), tol_(tol), h_(initial_step) {}

  /// Advance `y` from `x` to `x_end`. The step never overshoots `x_end`.
  /// `guard(x, y)` is called after every accepted step. It may throw to abort,
  /// or replace `y` by an equivalent state (e.g. a chart switch).
  template <class Guard>
  void advance(double& x, State<N>& y, double x_end, Guard&& guard) {
    using namespace detail;
    const double direction = x_end >= x ? 1.0 : -1.0;
    while (direction * (x_end - x) > 0.0) {
      if (++steps_ > tol_.max_steps) {
        throw Error(ErrorKind::StiffnessFailure, "step budget exhausted");
      }
      const double remaining = std::abs(x_end - x);
      const double h = direction * std::min({h_, remaining, tol_.max_step});

      const State<N> k1 = rhs_(x, y);
      const State<N> k2 = rhs_(x + c2 * h, axpy(y, h, {{a21, &k1}}));
      const State<N> k3 = rhs_(x + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
      const State<N> k4 = rhs_(x + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State<N> k5 =
          rhs_(x + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const State<N> k6 =
          rhs_(x + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      const State<N> y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const State<N> k7 = rhs_(x + h, y_new);

      double err = 0.0;
      bool finite = true;
      for (std::size_t i = 0; i < N; ++i) {
        const complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * k7[i]);
        double magnitude = std::max(std::abs(y[i]), std::abs(y_new[i]));
        if (const int j = tol_.scale_partner[i]; j >= 0) {
          magnitude = std::max({magnitude, std::abs(y[j]), std::abs(y_new[j])});
        }
        const double sc = tol_.abs_tol[i] + tol_.rel_tol * magnitude;
        const double ratio = std::abs(e) / sc;
        if (!std::isfinite(ratio) || !std::isfinite(std::abs(y_new[i]))) finite = false;
        err = std::max(err, ratio);
      }

      if (finite && err <= 1.0) {
        x = std::abs(h) >= remaining ? x_end : x + h;
        y = y_new;
        ++stats_.accepted;
        guard(x, y);
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        const double proposal = std::abs(h) * factor;
        // A step clipped to land on x_end must not shrink the next one.
        h_ = std::min(std::abs(h) < h_ ? std::max(h_, proposal) : proposal, tol_.max_step);
      } else {
        ++stats_.rejected;
        const double factor = finite ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.25;
        h_ = std::abs(h) * factor;
        if (h_ < tol_.min_step) {
          throw Error(ErrorKind::StiffnessFailure, "adaptive step collapsed below minimum");
        }
      }
    }
  }

  void advance(double& x, State<N>& y, double x_end) {
    advance(x, y, x_end, [](double, const State<N>&) {});
  }

  double step_size() const noexcept { return h_; }
  const Statistics& statistics() const noexcept { return stats_; }

 private:
  Rhs rhs_;
  Tolerances<N> tol_;
  double h_;
  long steps_ = 0;
  Statistics stats_;
};

}  // namespace stokes::ode
