#pragma once

// Minkowski <-> Unruh smearing functions for wave packets.
//
// For a massless field the Minkowski/Unruh coefficients are
//   alpha^R_{ωΩ} = (2πω)^{-1/2} (ωl)^{+iεΩ},  alpha^L_{ωΩ} = (2πω)^{-1/2} (ωl)^{-iεΩ},
// so with x = ln(ωl) and F(x) = ω^{1/2} f(ω) the Unruh smearing functions are
// the Fourier image of F: g_R(Ω) = F^(εΩ), g_L(Ω) = F^(-εΩ). Packets are
// therefore sampled on a grid uniform in u = ln ω (the l-dependence is a pure
// phase l^{±iεΩ}). The massive field is handled the same way with the rapidity
// x = asinh(k/m) = ln((ω_k + k)/m) in place of ln(ωl).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unruh/fourier.hpp"
#include "unruh/qops.hpp"

namespace unruh::wavepacket {

using fourier::UniformGrid;

struct BogoliubovKernel {
  int epsilon = +1;  // +1 right movers, -1 left movers
  double l = 1.0;
  void validate() const;
};

struct MassiveKernel {
  double m = 1.0;
  void validate() const;
};

/// Massless coefficients (alpha^R, alpha^L) at Minkowski frequency ω and Unruh frequency Ω.
cplx alpha_R(double omega, double Omega, const BogoliubovKernel& kernel);
cplx alpha_L(double omega, double Omega, const BogoliubovKernel& kernel);
/// Massive coefficients (alpha^R, alpha^L) at momentum k.
std::pair<cplx, cplx> massive_alpha(double k, double Omega, const MassiveKernel& kernel);

/// f(ω) sampled at ω_j = exp(u_j), u uniform.
struct MinkowskiSmearing {
  UniformGrid grid;  // u = ln ω
  std::vector<cplx> samples;

  double omega(std::size_t j) const;
  /// ∫|f|² dω.
  double norm_squared() const;
  /// Rescales to unit norm; returns the norm before rescaling.
  double normalize();
};

/// f(k) sampled at k_j = m sinh(x_j), rapidity x uniform.
struct MassiveSmearing {
  UniformGrid grid;  // rapidity
  double m = 1.0;
  std::vector<cplx> samples;

  double momentum(std::size_t j) const;
  double energy(std::size_t j) const;
  /// ∫|f|² dk.
  double norm_squared() const;
  double normalize();
};

/// g_R, g_L sampled at Ω_i = i dΩ, i = 0 .. n/2 - 1, where dΩ = 2π/(n dx) is
/// set by the Minkowski-side grid the pair is dual to.
struct UnruhSmearingPair {
  UniformGrid dual_grid;
  std::vector<cplx> g_R;
  std::vector<cplx> g_L;

  double d_omega() const { return dual_grid.dk(); }
  double omega(std::size_t i) const { return static_cast<double>(i) * d_omega(); }
  std::size_t size() const { return g_R.size(); }
  /// ∫ |g|² dΩ over Ω >= 0, trapezoid weight 1/2 at Ω = 0.
  double norm_squared_R() const;
  double norm_squared_L() const;
  double norm_squared() const { return norm_squared_R() + norm_squared_L(); }
};

struct LogGaussianParams {
  double lambda = 1.0;
  double mu = 0.0;
  double omega0 = 1.0;
  void validate() const;
};

struct RapidityGaussianParams {
  double lambda = 1.0;
  double mu = 0.0;
  double center = 0.0;  // rapidity of the packet centre
  void validate() const;
};

/// Grid control. With `fixed` set, the grid is used as given and rejected if
/// it is too narrow; otherwise it is widened and refined until the packet
/// mass in the outer 5% of the grid and the spectral mass in the outer 10% of
/// the band both fall below `edge_tol`.
struct GridOptions {
  std::optional<UniformGrid> fixed;
  double edge_tol = 1e-10;
  std::size_t max_points = std::size_t{1} << 20;
};

inline constexpr double kSpatialEdgeFraction = 0.05;
inline constexpr double kSpectralEdgeFraction = 0.10;

MinkowskiSmearing f_log_gaussian(const LogGaussianParams& params, const GridOptions& grid = {});

/// cos(θ) f + sin(θ) f*, renormalized: f populates g_R, f* populates g_L
/// (for ε = +1 and μ >> λ^{1/2}).
MinkowskiSmearing f_mixed_log_gaussian(const LogGaussianParams& params, double mixing_angle,
                                       const GridOptions& grid = {});

enum class PacketFamily { Gamma, Bessel };

/// Gamma-type: 2^λ (ω/ω0)^{λ-iμ} e^{-ω/ω0} / sqrt(ω Γ(2λ)).
/// Bessel-type: (ω/ω0)^{-iμ} exp[-λ/2 (ω/ω0 + ω0/ω)] / sqrt(2ω K0(2λ)).
/// The quadrature norm of the analytic profile is checked against 1 (1e-8)
/// before numerical renormalization.
MinkowskiSmearing alternate_packet(PacketFamily family, const LogGaussianParams& params, const GridOptions& grid = {});

/// Gaussian in rapidity: F(x) = (λ/π)^{1/4} exp[-λ(x-c)²/2] e^{-iμ(x-c)}.
MassiveSmearing f_rapidity_gaussian(const RapidityGaussianParams& params, const MassiveKernel& kernel,
                                    const GridOptions& grid = {});

/// Tolerance for the aliasing checks performed by the transforms.
inline constexpr double kAliasTol = 1e-10;

UnruhSmearingPair g_from_f(const MinkowskiSmearing& f, const BogoliubovKernel& kernel, double alias_tol = kAliasTol);
MinkowskiSmearing f_from_g(const UnruhSmearingPair& pair, const BogoliubovKernel& kernel);

UnruhSmearingPair massive_g_from_f(const MassiveSmearing& f, const MassiveKernel& kernel, double alias_tol = kAliasTol);
MassiveSmearing massive_f_from_g(const UnruhSmearingPair& pair, const MassiveKernel& kernel);

/// Closed-form cropped Gaussians for the log-Gaussian packet, sampled on the
/// Ω grid dual to `dual_grid`.
UnruhSmearingPair closed_form_g(const LogGaussianParams& params, const BogoliubovKernel& kernel,
                                const UniformGrid& dual_grid);

/// L² distance ∫|f-h|² dω on a common grid.
double l2_distance(const MinkowskiSmearing& a, const MinkowskiSmearing& b);
double l2_distance(const MassiveSmearing& a, const MassiveSmearing& b);

struct MinkowskiMoments {
  double mean_omega = 0.0;
  double delta_omega = 0.0;
  double mean_log = 0.0;   // <ln ω>
  double delta_log = 0.0;  // Δ ln ω
};

MinkowskiMoments minkowski_moments(const MinkowskiSmearing& f);

inline constexpr double kDefaultLeakageThreshold = 1e-2;

struct PeakingReport {
  double peak_omega = 0.0;     // peak of the dominant sector
  double delta_omega = 0.0;    // spread of the signed Unruh frequency ±Ω over |g_R|²+|g_L|²
  double delta_log = 0.0;      // Δ ln(ωl), or Δ rapidity for the massive field
  double uncertainty_product = 0.0;
  double leakage = 0.0;        // minor-sector weight / total weight
  bool dominant_is_R = true;
  bool sma_valid = false;      // leakage < threshold
  double parseval_residual = 0.0;
};

PeakingReport peaking_report(const MinkowskiSmearing& f, const BogoliubovKernel& kernel,
                             double leakage_threshold = kDefaultLeakageThreshold);
PeakingReport peaking_report(const MassiveSmearing& f, const MassiveKernel& kernel,
                             double leakage_threshold = kDefaultLeakageThreshold);

}  // namespace unruh::wavepacket
