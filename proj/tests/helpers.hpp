#pragma once

#include <complex>
#include <algorithm>
#include <cstdint>
#include <random>

#include "stokes/potentials.hpp"

namespace test {

using stokes::complex;

// Deterministic generator for the hand-rolled property loops.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  complex point(double r) { return {uniform(-r, r), uniform(-r, r)}; }

 private:
  std::mt19937_64 rng_;
};

inline bool close(complex a, complex b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(complex a, complex b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace test
