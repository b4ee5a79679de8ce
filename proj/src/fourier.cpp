#include "unruh/fourier.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace unruh::fourier {

namespace {

// The FFTW planner is not thread-safe; execution of a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

// In-place length-n transform; sign = FFTW_FORWARD (e^{-2πi jm/n}) or FFTW_BACKWARD (e^{+2πi jm/n}).
void fft_in_place(std::vector<cplx>& data, int sign) {
  static_assert(sizeof(cplx) == sizeof(fftw_complex));
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE));
  }
  if (!plan) throw NumericError("FFTW failed to create a plan");
  fftw_execute(plan.get());
}

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

}  // namespace

double UniformGrid::dk() const { return 2.0 * std::numbers::pi / (static_cast<double>(n) * dx); }

double UniformGrid::k_at(std::size_t m) const {
  return (static_cast<double>(m) - static_cast<double>(n / 2)) * dk();
}

void UniformGrid::validate() const {
  if (n < 4 || n % 2 != 0) throw InvalidArgument("grid point count must be even and >= 4");
  if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0)) throw InvalidArgument("grid spacing must be finite and > 0");
}

Spectrum forward(const UniformGrid& grid, std::span<const cplx> samples) {
  grid.validate();
  if (samples.size() != grid.n) throw InvalidArgument("sample count does not match grid");
  std::vector<cplx> buf(samples.begin(), samples.end());
  for (std::size_t j = 1; j < grid.n; j += 2) buf[j] = -buf[j];
  fft_in_place(buf, FFTW_BACKWARD);
  for (std::size_t m = 0; m < grid.n; ++m)
    buf[m] *= kInvSqrt2Pi * grid.dx * std::polar(1.0, grid.k_at(m) * grid.x0);
  return {grid, std::move(buf)};
}

std::vector<cplx> inverse(const Spectrum& spectrum) {
  const UniformGrid& grid = spectrum.grid;
  grid.validate();
  if (spectrum.values.size() != grid.n) throw InvalidArgument("spectrum size does not match grid");
  std::vector<cplx> buf(grid.n);
  for (std::size_t m = 0; m < grid.n; ++m) buf[m] = spectrum.values[m] * std::polar(1.0, -grid.k_at(m) * grid.x0);
  fft_in_place(buf, FFTW_FORWARD);
  const double scale = kInvSqrt2Pi * grid.dk();
  for (std::size_t j = 0; j < grid.n; ++j) buf[j] *= (j % 2 == 0 ? scale : -scale);
  return buf;
}

double mass(std::span<const cplx> values, double h) {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * h;
}

double edge_mass_fraction(std::span<const cplx> values, double fraction) {
  const std::size_t n = values.size();
  const auto edge = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(n)));
  const double total = mass(values, 1.0);
  if (total == 0.0) return 0.0;
  const double outer = mass(values.first(edge), 1.0) + mass(values.last(edge), 1.0);
  return outer / total;
}

}  // namespace unruh::fourier
