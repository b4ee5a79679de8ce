#pragma once

// Continuous Fourier transform on a uniform grid, evaluated with FFTs.
//
//   F^(k) = (2π)^{-1/2} ∫ F(x) e^{+ikx} dx
//   F(x)  = (2π)^{-1/2} ∫ F^(k) e^{-ikx} dk
//
// For x_j = x0 + j dx (j < n, n even) the spectrum is sampled at
// k_m = (m - n/2) dk with dk = 2π / (n dx). The discrete pair is an exact
// inverse of itself, and Σ|F_j|² dx = Σ|F^_m|² dk.

#include <cstddef>
#include <span>
#include <vector>

#include "unruh/qops.hpp"

namespace unruh::fourier {

struct UniformGrid {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 0;

  double at(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
  double x_max() const { return at(n - 1); }
  double dk() const;
  /// Spectral sample k_m = (m - n/2) dk.
  double k_at(std::size_t m) const;
  void validate() const;
};

struct Spectrum {
  UniformGrid grid;  // the x grid this spectrum is dual to
  std::vector<cplx> values;

  double k_at(std::size_t m) const { return grid.k_at(m); }
  /// Index of k = 0.
  std::size_t zero_index() const { return grid.n / 2; }
};

Spectrum forward(const UniformGrid& grid, std::span<const cplx> samples);
std::vector<cplx> inverse(const Spectrum& spectrum);

/// Σ|v|² h.
double mass(std::span<const cplx> values, double h);

/// Fraction of Σ|v|² held in the outer `fraction` of the samples at each end.
double edge_mass_fraction(std::span<const cplx> values, double fraction);

}  // namespace unruh::fourier
