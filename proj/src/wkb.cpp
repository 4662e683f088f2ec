#include "stokes/wkb.hpp"

#include <cmath>

#include "stokes/errors.hpp"

namespace stokes::wkb {

namespace {

// Γ(1/3) and Γ(11/6) to 20 significant digits (mpmath.gamma at 30 digits).
constexpr double kGammaThird = 2.6789385347077476337;
constexpr double kGammaElevenSixths = 0.94065585825677163438;
constexpr double kPi = 3.14159265358979323846;

void require_nonzero(double b) {
  if (!(b != 0.0) || !std::isfinite(b)) {
    throw Error(ErrorKind::InvalidArgument, "WKB asymptotics need a finite nonzero real b");
  }
}

}  // namespace

const Constants& constants() noexcept {
  static const Constants c = [] {
    const double ratio = kGammaThird / kGammaElevenSixths;
    return Constants{
        std::sqrt(kPi / 3.0) * ratio / std::cbrt(4.0),
        std::sqrt(kPi / 3.0) * ratio / (2.0 * std::cbrt(4.0)),
        std::sqrt(kPi) * ratio / (2.0 * std::cbrt(4.0)),
    };
  }();
  return c;
}

complex sigma0(double b) {
  require_nonzero(b);
  const auto& c = constants();
  if (b > 0.0) return complex{0.0, -1.0} * std::exp(c.c_plus * std::pow(b, 5.0 / 6.0));
  const double s = std::pow(-b, 5.0 / 6.0);
  return complex{0.0, -2.0} * std::exp(-c.c_damp * s) * std::cos(c.c_cos * s);
}

complex rescale_sigma0(complex sigma, double b) {
  require_nonzero(b);
  const auto& c = constants();
  if (b > 0.0) return complex{0.0, 1.0} * std::exp(-c.c_plus * std::pow(b, 5.0 / 6.0)) * sigma;
  return complex{0.0, 0.5} * std::exp(c.c_damp * std::pow(-b, 5.0 / 6.0)) * sigma;
}

double rescaled_prediction(double b) {
  require_nonzero(b);
  if (b > 0.0) return 1.0;
  return std::cos(constants().c_cos * std::pow(-b, 5.0 / 6.0));
}

}  // namespace stokes::wkb
