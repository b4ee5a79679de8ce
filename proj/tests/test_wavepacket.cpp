#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "unruh/wavepacket.hpp"

using namespace unruh;
using namespace unruh::wavepacket;

namespace {

double max_pointwise(const UnruhSmearingPair& a, const UnruhSmearingPair& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.g_R[i] - b.g_R[i]));
    m = std::max(m, std::abs(a.g_L[i] - b.g_L[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("Bogoliubov coefficients") {
  const BogoliubovKernel k{1, 2.0};
  const double w = 0.7, Om = 1.3;
  CHECK(std::abs(alpha_R(w, Om, k)) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi * w)));
  CHECK(std::arg(alpha_R(w, Om, k) * std::conj(alpha_L(w, Om, k))) ==
        doctest::Approx(std::remainder(2.0 * Om * std::log(w * 2.0), 2.0 * std::numbers::pi)));
  auto [aR, aL] = massive_alpha(0.0, Om, {1.0});
  CHECK(aR == aL);  // zero rapidity at k = 0
  CHECK_THROWS_AS(alpha_R(w, Om, {0, 1.0}), InvalidArgument);
}

TEST_CASE("log-Gaussian quadrature matches the closed form") {
  for (double l : {1.0, 2.5}) {
    const LogGaussianParams p{1.0, 5.0, 1.0};
    const BogoliubovKernel k{1, l};
    auto f = f_log_gaussian(p);
    CHECK(f.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    auto g = g_from_f(f, k);
    CHECK(max_pointwise(g, closed_form_g(p, k, g.dual_grid)) < 1e-6);
  }
  const LogGaussianParams p{2.0, -3.0, 1.7};
  auto g = g_from_f(f_log_gaussian(p), {-1, 1.0});
  CHECK(max_pointwise(g, closed_form_g(p, {-1, 1.0}, g.dual_grid)) < 1e-6);
}

TEST_CASE("Parseval and round trip") {
  const BogoliubovKernel k{1, 1.0};
  auto f = f_log_gaussian({1.0, 5.0, 1.0});
  auto g = g_from_f(f, k);
  CHECK(std::abs(g.norm_squared() - f.norm_squared()) < 1e-6);
  CHECK(l2_distance(f, f_from_g(g, k)) < 1e-6);
  auto rep = peaking_report(f, k);
  CHECK(rep.parseval_residual < 1e-6);
}

TEST_CASE("peaking and leakage of the log-Gaussian") {
  auto rep = peaking_report(f_log_gaussian({1.0, 5.0, 1.0}), {1, 1.0});
  CHECK(rep.dominant_is_R);
  CHECK(rep.peak_omega == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(rep.delta_log == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
  CHECK(rep.uncertainty_product >= 0.5 - 1e-3);
  CHECK(rep.uncertainty_product == doctest::Approx(0.5).epsilon(0.02));
  CHECK(rep.leakage < 1e-10);
  CHECK(rep.sma_valid);

  auto flipped = peaking_report(f_log_gaussian({1.0, 5.0, 1.0}), {-1, 1.0});
  CHECK_FALSE(flipped.dominant_is_R);

  auto broad = peaking_report(f_log_gaussian({1.0, 0.0, 1.0}), {1, 1.0});
  CHECK(broad.leakage == doctest::Approx(0.5).epsilon(1e-6));
  CHECK_FALSE(broad.sma_valid);
}

TEST_CASE("Minkowski moments") {
  for (double lambda : {0.5, 1.0, 3.0}) {
    auto m = minkowski_moments(f_log_gaussian({lambda, 2.0, 1.5}));
    CHECK(m.mean_omega == doctest::Approx(1.5 * std::exp(1.0 / (4.0 * lambda))).epsilon(1e-8));
    CHECK(m.mean_log == doctest::Approx(std::log(1.5)).epsilon(1e-8));
    CHECK(m.delta_log == doctest::Approx(1.0 / std::sqrt(2.0 * lambda)).epsilon(1e-8));
  }
}

TEST_CASE("mixed packet populates both sectors") {
  const LogGaussianParams p{1.0, 6.0, 1.0};
  const BogoliubovKernel k{1, 1.0};
  double prev = -1.0;
  for (double theta : {0.0, 0.1, 0.4, std::numbers::pi / 4.0}) {
    auto f = f_mixed_log_gaussian(p, theta);
    CHECK(f.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    auto rep = peaking_report(f, k);
    CHECK(rep.leakage > prev);
    prev = rep.leakage;
    CHECK(rep.parseval_residual < 1e-6);
  }
  CHECK(prev == doctest::Approx(0.5).epsilon(1e-6));
  auto slight = peaking_report(f_mixed_log_gaussian(p, 0.1), k);
  CHECK(slight.leakage == doctest::Approx(std::pow(std::sin(0.1), 2)).epsilon(1e-3));
}

TEST_CASE("gamma and Bessel packets") {
  const BogoliubovKernel k{1, 1.0};
  for (auto fam : {PacketFamily::Gamma, PacketFamily::Bessel}) {
    for (double lambda : {0.75, 1.0, 2.0}) {
      auto f = alternate_packet(fam, {lambda, 6.0, 1.0});
      CHECK(f.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
      auto g = g_from_f(f, k);
      CHECK(std::abs(g.norm_squared() - 1.0) < 1e-6);
      CHECK(l2_distance(f, f_from_g(g, k)) < 1e-6);
      auto rep = peaking_report(f, k);
      CHECK(rep.uncertainty_product >= 0.5 - 1e-3);
      CHECK(rep.dominant_is_R);
    }
  }
}

TEST_CASE("gamma packet profile maxima") {
  // |f|² ∝ ω^{2λ-1} e^{-2ω/ω0} peaks at ω0 (2λ-1)/2; ω|f|² peaks at λ ω0.
  const double omega0 = 2.0;
  GridOptions opt;
  opt.fixed = UniformGrid{-12.0, 18.0 / 4096, 4096};
  auto f = alternate_packet(PacketFamily::Gamma, {1.0, 0.0, omega0}, opt);
  std::size_t a = 0, b = 0;
  for (std::size_t j = 0; j < f.samples.size(); ++j) {
    if (std::norm(f.samples[j]) > std::norm(f.samples[a])) a = j;
    if (f.omega(j) * std::norm(f.samples[j]) > f.omega(b) * std::norm(f.samples[b])) b = j;
  }
  CHECK(f.omega(a) == doctest::Approx(omega0 / 2.0).epsilon(0.005));
  CHECK(f.omega(b) == doctest::Approx(omega0).epsilon(0.005));
}

TEST_CASE("massive pipeline reproduces the massless transform under x = rapidity") {
  auto massless = f_log_gaussian({1.0, 5.0, 1.0});
  GridOptions shared;
  shared.fixed = massless.grid;
  const MassiveKernel mk{1.0};
  auto massive = f_rapidity_gaussian({1.0, 5.0, 0.0}, mk, shared);
  CHECK(massive.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  auto g0 = g_from_f(massless, {1, 1.0});
  auto g1 = massive_g_from_f(massive, mk);
  CHECK(max_pointwise(g0, g1) < 1e-6);
  CHECK(l2_distance(massive, massive_f_from_g(g1, mk)) < 1e-6);
  auto r0 = peaking_report(massless, {1, 1.0});
  auto r1 = peaking_report(massive, mk);
  CHECK(std::abs(r0.peak_omega - r1.peak_omega) < 1e-6);
  CHECK(std::abs(r0.uncertainty_product - r1.uncertainty_product) < 1e-6);
  for (std::size_t j = 0; j < massive.samples.size(); j += 97)
    CHECK(massive.momentum(j) == doctest::Approx(std::sinh(massive.grid.at(j))));
}

TEST_CASE("narrow fixed grids are rejected") {
  GridOptions opt;
  opt.fixed = UniformGrid{-1.0, 0.01, 200};
  CHECK_THROWS_AS(f_log_gaussian({1.0, 5.0, 1.0}, opt), NumericError);
  opt.fixed = UniformGrid{-20.0, 1.0, 40};  // too coarse for μ = 5
  CHECK_THROWS_AS(f_log_gaussian({1.0, 5.0, 1.0}, opt), NumericError);
  CHECK_THROWS_AS(f_log_gaussian({-1.0, 5.0, 1.0}), InvalidArgument);
}
