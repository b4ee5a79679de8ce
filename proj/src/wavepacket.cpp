#include "unruh/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace unruh::wavepacket {

namespace {

constexpr double kPi = std::numbers::pi;

// Packet in the log/rapidity domain: F(x) with ∫|F|² dx = ∫|f|² dω (or dk).
struct LogDomain {
  UniformGrid grid;
  std::vector<cplx> F;
};

std::size_t even_count(double half_width, double dx) {
  auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width / dx));
  n += n % 2;
  return std::max<std::size_t>(n, 4);
}

template <typename Fn>
std::vector<cplx> sample(const UniformGrid& g, Fn&& F) {
  std::vector<cplx> v(g.n);
  for (std::size_t j = 0; j < g.n; ++j) v[j] = F(g.at(j));
  return v;
}

std::string grid_diagnostic(const UniformGrid& g, double spatial, double spectral) {
  std::ostringstream os;
  os << "grid [" << g.x0 << ", " << g.x_max() << "] with " << g.n << " points is inadequate (edge mass "
     << spatial << ", spectral edge mass " << spectral << "); suggested bounds [" << g.x0 - 0.5 * (g.x_max() - g.x0)
     << ", " << g.x_max() + 0.5 * (g.x_max() - g.x0) << "] with spacing " << g.dx / 2;
  return os.str();
}

// Samples F on a grid that holds the packet in both domains. `center`,
// `half_width` and `dx` are starting guesses.
template <typename Fn>
LogDomain sample_adaptive(Fn&& F, double center, double half_width, double dx, const GridOptions& opt) {
  if (opt.fixed) {
    const UniformGrid g = *opt.fixed;
    g.validate();
    std::vector<cplx> v = sample(g, F);
    const double spatial = fourier::edge_mass_fraction(v, kSpatialEdgeFraction);
    const double spectral = fourier::edge_mass_fraction(fourier::forward(g, v).values, kSpectralEdgeFraction);
    if (!(spatial < opt.edge_tol) || !(spectral < opt.edge_tol))
      throw NumericError("packet does not fit: " + grid_diagnostic(g, spatial, spectral));
    return {g, std::move(v)};
  }
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = even_count(half_width, dx);
    if (n > opt.max_points) break;
    const UniformGrid g{center - 0.5 * static_cast<double>(n) * dx, dx, n};
    std::vector<cplx> v = sample(g, F);
    const double spatial = fourier::edge_mass_fraction(v, kSpatialEdgeFraction);
    const double spectral = fourier::edge_mass_fraction(fourier::forward(g, v).values, kSpectralEdgeFraction);
    const bool spatial_ok = spatial < opt.edge_tol;
    const bool spectral_ok = spectral < opt.edge_tol;
    if (spatial_ok && spectral_ok) return {g, std::move(v)};
    if (!spatial_ok) half_width *= 1.5;
    if (!spectral_ok) dx /= 1.5;
  }
  throw NumericError("grid too narrow: packet needs more than " + std::to_string(opt.max_points) + " points");
}

LogDomain to_log_domain(const MinkowskiSmearing& f) {
  LogDomain d{f.grid, f.samples};
  for (std::size_t j = 0; j < d.F.size(); ++j) d.F[j] *= std::sqrt(f.omega(j));
  return d;
}

LogDomain to_log_domain(const MassiveSmearing& f) {
  LogDomain d{f.grid, f.samples};
  for (std::size_t j = 0; j < d.F.size(); ++j) d.F[j] *= std::sqrt(f.energy(j));
  return d;
}

MinkowskiSmearing from_log_domain(LogDomain d) {
  MinkowskiSmearing f{d.grid, std::move(d.F)};
  for (std::size_t j = 0; j < f.samples.size(); ++j) f.samples[j] /= std::sqrt(f.omega(j));
  return f;
}

MassiveSmearing from_log_domain(LogDomain d, double m) {
  MassiveSmearing f{d.grid, m, std::move(d.F)};
  for (std::size_t j = 0; j < f.samples.size(); ++j) f.samples[j] /= std::sqrt(f.energy(j));
  return f;
}

// g_R(Ω) = e^{iεΩ s} F^(εΩ), g_L(Ω) = e^{-iεΩ s} F^(-εΩ), with s = ln l (0 for the massive field).
UnruhSmearingPair split_spectrum(const fourier::Spectrum& spec, int epsilon, double log_shift) {
  const std::size_t n = spec.grid.n;
  const std::size_t half = n / 2;
  UnruhSmearingPair pair{spec.grid, std::vector<cplx>(half), std::vector<cplx>(half)};
  for (std::size_t i = 0; i < half; ++i) {
    const double Om = pair.omega(i);
    const std::size_t plus = half + i;
    const std::size_t minus = half - i;
    const std::size_t r_idx = epsilon > 0 ? plus : minus;
    const std::size_t l_idx = epsilon > 0 ? minus : plus;
    pair.g_R[i] = spec.values[r_idx] * std::polar(1.0, epsilon * Om * log_shift);
    pair.g_L[i] = l_idx < n ? spec.values[l_idx] * std::polar(1.0, -epsilon * Om * log_shift) : cplx{};
  }
  return pair;
}

fourier::Spectrum merge_spectrum(const UnruhSmearingPair& pair, int epsilon, double log_shift) {
  const UniformGrid& g = pair.dual_grid;
  g.validate();
  const std::size_t half = g.n / 2;
  if (pair.g_R.size() != half || pair.g_L.size() != half) throw InvalidArgument("smearing pair does not match its grid");
  fourier::Spectrum spec{g, std::vector<cplx>(g.n)};
  for (std::size_t i = 1; i < half; ++i) {
    const double Om = pair.omega(i);
    const cplx r = pair.g_R[i] * std::polar(1.0, -epsilon * Om * log_shift);
    const cplx l = pair.g_L[i] * std::polar(1.0, epsilon * Om * log_shift);
    spec.values[epsilon > 0 ? half + i : half - i] = r;
    spec.values[epsilon > 0 ? half - i : half + i] = l;
  }
  spec.values[half] = 0.5 * (pair.g_R[0] + pair.g_L[0]);
  return spec;
}

void check_alias(const LogDomain& d, const fourier::Spectrum& spec, double tol) {
  const double spatial = fourier::edge_mass_fraction(d.F, kSpatialEdgeFraction);
  const double spectral = fourier::edge_mass_fraction(spec.values, kSpectralEdgeFraction);
  if (spatial > tol || spectral > tol) throw NumericError("aliasing detected: " + grid_diagnostic(d.grid, spatial, spectral));
}

PeakingReport report_from(const LogDomain& d, const fourier::Spectrum& spec, const UnruhSmearingPair& pair,
                          double threshold) {
  PeakingReport rep;

  // Spread of x over |F|².
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < d.F.size(); ++j) {
    const double p = std::norm(d.F[j]);
    const double x = d.grid.at(j);
    w += p;
    m1 += p * x;
  }
  m1 /= w;
  for (std::size_t j = 0; j < d.F.size(); ++j) {
    const double dx = d.grid.at(j) - m1;
    m2 += std::norm(d.F[j]) * dx * dx;
  }
  rep.delta_log = std::sqrt(m2 / w);

  // Spread of the signed Unruh frequency over the whole spectrum.
  double sw = 0.0, k1 = 0.0, k2 = 0.0;
  for (std::size_t m = 0; m < spec.values.size(); ++m) {
    const double p = std::norm(spec.values[m]);
    sw += p;
    k1 += p * spec.k_at(m);
  }
  k1 /= sw;
  for (std::size_t m = 0; m < spec.values.size(); ++m) {
    const double dk = spec.k_at(m) - k1;
    k2 += std::norm(spec.values[m]) * dk * dk;
  }
  rep.delta_omega = std::sqrt(k2 / sw);
  rep.uncertainty_product = rep.delta_omega * rep.delta_log;

  const double nR = pair.norm_squared_R();
  const double nL = pair.norm_squared_L();
  rep.dominant_is_R = nR >= nL;
  rep.leakage = std::min(nR, nL) / (nR + nL);
  rep.sma_valid = rep.leakage < threshold;
  rep.parseval_residual = std::abs(fourier::mass(d.F, d.grid.dx) - (nR + nL));

  const auto& g = rep.dominant_is_R ? pair.g_R : pair.g_L;
  std::size_t imax = 0;
  for (std::size_t i = 1; i < g.size(); ++i)
    if (std::abs(g[i]) > std::abs(g[imax])) imax = i;
  double peak = pair.omega(imax);
  if (imax > 0 && imax + 1 < g.size() && std::abs(g[imax - 1]) > 0.0 && std::abs(g[imax + 1]) > 0.0) {
    // Parabolic refinement of ln|g| (exact for Gaussian profiles).
    const double a = std::log(std::abs(g[imax - 1]));
    const double b = std::log(std::abs(g[imax]));
    const double c = std::log(std::abs(g[imax + 1]));
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) peak += 0.5 * (a - c) / denom * pair.d_omega();
  }
  rep.peak_omega = peak;
  return rep;
}

double log_gaussian_spectral_reach(double lambda, double mu) { return std::abs(mu) + 8.0 * std::sqrt(lambda) + 1.0; }

}  // namespace

// ---------------------------------------------------------------------------

void BogoliubovKernel::validate() const {
  if (epsilon != 1 && epsilon != -1) throw InvalidArgument("epsilon must be +1 or -1");
  if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("length scale l must be > 0");
}

void MassiveKernel::validate() const {
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("mass must be > 0");
}

void LogGaussianParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be > 0");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidArgument("omega0 must be > 0");
  if (!std::isfinite(mu)) throw InvalidArgument("mu must be finite");
}

void RapidityGaussianParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be > 0");
  if (!std::isfinite(mu) || !std::isfinite(center)) throw InvalidArgument("mu and center must be finite");
}

cplx alpha_R(double omega, double Omega, const BogoliubovKernel& k) {
  k.validate();
  if (!(omega > 0.0) || !(Omega > 0.0)) throw InvalidArgument("alpha requires omega > 0 and Omega > 0");
  return std::polar(1.0 / std::sqrt(2.0 * kPi * omega), k.epsilon * Omega * std::log(omega * k.l));
}

cplx alpha_L(double omega, double Omega, const BogoliubovKernel& k) {
  k.validate();
  if (!(omega > 0.0) || !(Omega > 0.0)) throw InvalidArgument("alpha requires omega > 0 and Omega > 0");
  return std::polar(1.0 / std::sqrt(2.0 * kPi * omega), -k.epsilon * Omega * std::log(omega * k.l));
}

std::pair<cplx, cplx> massive_alpha(double k, double Omega, const MassiveKernel& kernel) {
  kernel.validate();
  if (!(Omega > 0.0)) throw InvalidArgument("massive alpha requires Omega > 0");
  const double w = std::hypot(kernel.m, k);
  const double rapidity = std::asinh(k / kernel.m);  // = ln((ω + k) / m)
  const double mag = 1.0 / std::sqrt(2.0 * kPi * w);
  return {std::polar(mag, Omega * rapidity), std::polar(mag, -Omega * rapidity)};
}

// ---------------------------------------------------------------------------

double MinkowskiSmearing::omega(std::size_t j) const { return std::exp(grid.at(j)); }

double MinkowskiSmearing::norm_squared() const { return fourier::mass(to_log_domain(*this).F, grid.dx); }

double MinkowskiSmearing::normalize() {
  const double n = std::sqrt(norm_squared());
  if (!(n > 0.0)) throw NumericError("cannot normalize a zero smearing function");
  for (auto& v : samples) v /= n;
  return n;
}

double MassiveSmearing::momentum(std::size_t j) const { return m * std::sinh(grid.at(j)); }
double MassiveSmearing::energy(std::size_t j) const { return m * std::cosh(grid.at(j)); }

double MassiveSmearing::norm_squared() const { return fourier::mass(to_log_domain(*this).F, grid.dx); }

double MassiveSmearing::normalize() {
  const double n = std::sqrt(norm_squared());
  if (!(n > 0.0)) throw NumericError("cannot normalize a zero smearing function");
  for (auto& v : samples) v /= n;
  return n;
}

double UnruhSmearingPair::norm_squared_R() const {
  if (g_R.empty()) return 0.0;
  return (fourier::mass(g_R, 1.0) - 0.5 * std::norm(g_R[0])) * d_omega();
}

double UnruhSmearingPair::norm_squared_L() const {
  if (g_L.empty()) return 0.0;
  return (fourier::mass(g_L, 1.0) - 0.5 * std::norm(g_L[0])) * d_omega();
}

// ---------------------------------------------------------------------------

MinkowskiSmearing f_log_gaussian(const LogGaussianParams& p, const GridOptions& grid) {
  p.validate();
  const double c = std::log(p.omega0);
  const double amp = std::pow(p.lambda / kPi, 0.25);
  auto F = [&](double u) {
    const double t = u - c;
    return std::polar(amp * std::exp(-0.5 * p.lambda * t * t), -p.mu * t);
  };
  const double sigma = 1.0 / std::sqrt(p.lambda);
  LogDomain d = sample_adaptive(F, c, 8.0 * sigma, 0.9 * kPi / log_gaussian_spectral_reach(p.lambda, p.mu), grid);
  return from_log_domain(std::move(d));
}

MinkowskiSmearing f_mixed_log_gaussian(const LogGaussianParams& p, double mixing_angle, const GridOptions& grid) {
  p.validate();
  const double c = std::log(p.omega0);
  const double amp = std::pow(p.lambda / kPi, 0.25);
  const double ca = std::cos(mixing_angle), sa = std::sin(mixing_angle);
  auto F = [&](double u) {
    const double t = u - c;
    const double mag = amp * std::exp(-0.5 * p.lambda * t * t);
    return mag * (ca * std::polar(1.0, -p.mu * t) + sa * std::polar(1.0, p.mu * t));
  };
  const double sigma = 1.0 / std::sqrt(p.lambda);
  MinkowskiSmearing f = from_log_domain(
      sample_adaptive(F, c, 8.0 * sigma, 0.9 * kPi / log_gaussian_spectral_reach(p.lambda, p.mu), grid));
  f.normalize();
  return f;
}

MinkowskiSmearing alternate_packet(PacketFamily family, const LogGaussianParams& p, const GridOptions& grid) {
  p.validate();
  const double c = std::log(p.omega0);
  LogDomain d;
  if (family == PacketFamily::Gamma) {
    // F(u) = 2^λ e^{λt - e^t} / sqrt(Γ(2λ)) · e^{-iμt}, t = ln(ω/ω0)
    const double log_norm = p.lambda * std::log(2.0) - 0.5 * std::lgamma(2.0 * p.lambda);
    if (!std::isfinite(log_norm)) throw NumericError("gamma-function evaluation failed");
    auto F = [&](double u) {
      const double t = u - c;
      const double e = log_norm + p.lambda * t - std::exp(t);
      return std::polar(std::exp(e), -p.mu * t);
    };
    const double peak = c + std::log(p.lambda);
    d = sample_adaptive(F, peak, 10.0 / std::sqrt(p.lambda), 0.9 * kPi / (std::abs(p.mu) + 20.0), grid);
  } else {
    // F(u) = e^{-λ cosh t} / sqrt(2 K0(2λ)) · e^{-iμt}
    const double k0 = std::cyl_bessel_k(0.0, 2.0 * p.lambda);
    if (!(k0 > 0.0) || !std::isfinite(k0)) throw NumericError("modified Bessel function K0 evaluation failed");
    const double log_norm = -0.5 * std::log(2.0 * k0);
    auto F = [&](double u) {
      const double t = u - c;
      return std::polar(std::exp(log_norm - p.lambda * std::cosh(t)), -p.mu * t);
    };
    d = sample_adaptive(F, c, 8.0 / std::sqrt(p.lambda), 0.9 * kPi / (std::abs(p.mu) + 20.0), grid);
  }
  MinkowskiSmearing f = from_log_domain(std::move(d));
  const double n2 = f.norm_squared();
  if (std::abs(n2 - 1.0) > 1e-8)
    throw NumericError("analytic normalization check failed: quadrature norm " + std::to_string(n2));
  f.normalize();
  return f;
}

MassiveSmearing f_rapidity_gaussian(const RapidityGaussianParams& p, const MassiveKernel& kernel,
                                    const GridOptions& grid) {
  p.validate();
  kernel.validate();
  const double amp = std::pow(p.lambda / kPi, 0.25);
  auto F = [&](double x) {
    const double t = x - p.center;
    return std::polar(amp * std::exp(-0.5 * p.lambda * t * t), -p.mu * t);
  };
  const double sigma = 1.0 / std::sqrt(p.lambda);
  LogDomain d = sample_adaptive(F, p.center, 8.0 * sigma, 0.9 * kPi / log_gaussian_spectral_reach(p.lambda, p.mu), grid);
  return from_log_domain(std::move(d), kernel.m);
}

// ---------------------------------------------------------------------------

UnruhSmearingPair g_from_f(const MinkowskiSmearing& f, const BogoliubovKernel& kernel, double alias_tol) {
  kernel.validate();
  const LogDomain d = to_log_domain(f);
  const fourier::Spectrum spec = fourier::forward(d.grid, d.F);
  check_alias(d, spec, alias_tol);
  return split_spectrum(spec, kernel.epsilon, std::log(kernel.l));
}

MinkowskiSmearing f_from_g(const UnruhSmearingPair& pair, const BogoliubovKernel& kernel) {
  kernel.validate();
  const fourier::Spectrum spec = merge_spectrum(pair, kernel.epsilon, std::log(kernel.l));
  return from_log_domain({pair.dual_grid, fourier::inverse(spec)});
}

UnruhSmearingPair massive_g_from_f(const MassiveSmearing& f, const MassiveKernel& kernel, double alias_tol) {
  kernel.validate();
  if (f.m != kernel.m) throw InvalidArgument("smearing function and kernel use different masses");
  const LogDomain d = to_log_domain(f);
  const fourier::Spectrum spec = fourier::forward(d.grid, d.F);
  check_alias(d, spec, alias_tol);
  return split_spectrum(spec, +1, 0.0);
}

MassiveSmearing massive_f_from_g(const UnruhSmearingPair& pair, const MassiveKernel& kernel) {
  kernel.validate();
  const fourier::Spectrum spec = merge_spectrum(pair, +1, 0.0);
  return from_log_domain({pair.dual_grid, fourier::inverse(spec)}, kernel.m);
}

UnruhSmearingPair closed_form_g(const LogGaussianParams& p, const BogoliubovKernel& kernel, const UniformGrid& dual_grid) {
  p.validate();
  kernel.validate();
  dual_grid.validate();
  const double amp = std::pow(kPi * p.lambda, -0.25);
  const double phase_rate = kernel.epsilon * std::log(p.omega0 * kernel.l);
  const double em = kernel.epsilon * p.mu;
  UnruhSmearingPair pair{dual_grid, std::vector<cplx>(dual_grid.n / 2), std::vector<cplx>(dual_grid.n / 2)};
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double Om = pair.omega(i);
    pair.g_R[i] = std::polar(amp * std::exp(-0.5 * (Om - em) * (Om - em) / p.lambda), phase_rate * Om);
    pair.g_L[i] = std::polar(amp * std::exp(-0.5 * (Om + em) * (Om + em) / p.lambda), -phase_rate * Om);
  }
  return pair;
}

double l2_distance(const MinkowskiSmearing& a, const MinkowskiSmearing& b) {
  if (a.grid.n != b.grid.n || a.grid.dx != b.grid.dx || a.grid.x0 != b.grid.x0)
    throw InvalidArgument("L2 distance requires a common grid");
  MinkowskiSmearing diff = a;
  for (std::size_t j = 0; j < diff.samples.size(); ++j) diff.samples[j] -= b.samples[j];
  return diff.norm_squared();
}

double l2_distance(const MassiveSmearing& a, const MassiveSmearing& b) {
  if (a.grid.n != b.grid.n || a.grid.dx != b.grid.dx || a.grid.x0 != b.grid.x0 || a.m != b.m)
    throw InvalidArgument("L2 distance requires a common grid");
  MassiveSmearing diff = a;
  for (std::size_t j = 0; j < diff.samples.size(); ++j) diff.samples[j] -= b.samples[j];
  return diff.norm_squared();
}

MinkowskiMoments minkowski_moments(const MinkowskiSmearing& f) {
  const LogDomain d = to_log_domain(f);
  double w = 0.0, om = 0.0, om2 = 0.0, lg = 0.0, lg2 = 0.0;
  for (std::size_t j = 0; j < d.F.size(); ++j) {
    const double p = std::norm(d.F[j]);
    const double u = d.grid.at(j);
    const double o = std::exp(u);
    w += p;
    om += p * o;
    om2 += p * o * o;
    lg += p * u;
    lg2 += p * u * u;
  }
  MinkowskiMoments m;
  m.mean_omega = om / w;
  m.delta_omega = std::sqrt(std::max(0.0, om2 / w - m.mean_omega * m.mean_omega));
  m.mean_log = lg / w;
  m.delta_log = std::sqrt(std::max(0.0, lg2 / w - m.mean_log * m.mean_log));
  return m;
}

PeakingReport peaking_report(const MinkowskiSmearing& f, const BogoliubovKernel& kernel, double threshold) {
  kernel.validate();
  const LogDomain d = to_log_domain(f);
  const fourier::Spectrum spec = fourier::forward(d.grid, d.F);
  return report_from(d, spec, split_spectrum(spec, kernel.epsilon, std::log(kernel.l)), threshold);
}

PeakingReport peaking_report(const MassiveSmearing& f, const MassiveKernel& kernel, double threshold) {
  kernel.validate();
  const LogDomain d = to_log_domain(f);
  const fourier::Spectrum spec = fourier::forward(d.grid, d.F);
  return report_from(d, spec, split_spectrum(spec, +1, 0.0), threshold);
}

}  // namespace unruh::wavepacket
