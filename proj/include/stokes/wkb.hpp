#pragma once

// WKB asymptotics of σ_0(b) for ψ'' = (4λ³ − b)ψ and the rescalings that turn
// it into O(1) quantities for plotting.

#include <complex>

namespace stokes::wkb {

using complex = std::complex<double>;

struct Constants {
  /// √(π/3) Γ(1/3) / (2^{2/3} Γ(11/6))
  double c_plus;
  /// √(π/3) Γ(1/3) / (2^{5/3} Γ(11/6))
  double c_cos;
  /// √π Γ(1/3) / (2^{5/3} Γ(11/6))
  double c_damp;
};

const Constants& constants() noexcept;

/// b > 0: −i exp(C₊ b^{5/6});  b < 0: −2i exp(−C_damp (−b)^{5/6}) cos(C_cos (−b)^{5/6}).
/// Throws InvalidArgument for b = 0 or non-finite b.
complex sigma0(double b);

/// b > 0: i exp(−C₊ b^{5/6}) σ;  b < 0: (i/2) exp(C_damp (−b)^{5/6}) σ.
/// Both are normalized so that the WKB value maps to a real number.
complex rescale_sigma0(complex sigma, double b);

/// WKB value of the rescaled multiplier: 1 for b > 0, cos(C_cos (−b)^{5/6}) for b < 0.
double rescaled_prediction(double b);

}  // namespace stokes::wkb
