#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "unruh/fourier.hpp"

using namespace unruh;
using namespace unruh::fourier;

namespace {

// Direct O(n^2) Riemann sum of (2π)^{-1/2} Σ F(x_j) e^{i k_m x_j} dx.
std::vector<cplx> brute_force(const UniformGrid& g, const std::vector<cplx>& F) {
  std::vector<cplx> out(g.n);
  for (std::size_t m = 0; m < g.n; ++m) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) s += F[j] * std::polar(1.0, g.k_at(m) * g.at(j));
    out[m] = s * g.dx / std::sqrt(2.0 * std::numbers::pi);
  }
  return out;
}

}  // namespace

TEST_CASE("forward transform matches the brute-force sum") {
  std::mt19937 rng(42);
  std::normal_distribution<double> nd;
  for (std::size_t n : {8u, 30u, 64u}) {
    const UniformGrid g{-1.7, 0.23, n};
    std::vector<cplx> F(n);
    for (auto& v : F) v = cplx(nd(rng), nd(rng));
    auto fast = forward(g, F);
    auto slow = brute_force(g, F);
    for (std::size_t m = 0; m < n; ++m) CHECK(std::abs(fast.values[m] - slow[m]) < 1e-12);
    auto back = inverse(fast);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(back[j] - F[j]) < 1e-12);
  }
}

TEST_CASE("Gaussian is its own transform") {
  const UniformGrid g{-20.0, 40.0 / 512, 512};
  std::vector<cplx> F(g.n);
  for (std::size_t j = 0; j < g.n; ++j) F[j] = std::exp(-0.5 * g.at(j) * g.at(j));
  auto s = forward(g, F);
  CHECK(s.k_at(s.zero_index()) == 0.0);
  for (std::size_t m = 0; m < g.n; ++m) CHECK(std::abs(s.values[m] - std::exp(-0.5 * s.k_at(m) * s.k_at(m))) < 1e-12);
  CHECK(mass(s.values, g.dk()) == doctest::Approx(mass(F, g.dx)).epsilon(1e-13));
}

TEST_CASE("shifted packets pick up a phase") {
  const UniformGrid g{-15.0, 0.05, 800};
  const double x0 = 3.0;
  std::vector<cplx> F(g.n);
  for (std::size_t j = 0; j < g.n; ++j) F[j] = std::exp(-0.5 * (g.at(j) - x0) * (g.at(j) - x0));
  auto s = forward(g, F);
  for (std::size_t m = 0; m < g.n; m += 37) {
    const double k = s.k_at(m);
    CHECK(std::abs(s.values[m] - std::exp(-0.5 * k * k) * std::polar(1.0, k * x0)) < 1e-12);
  }
}

TEST_CASE("edge mass and grid validation") {
  std::vector<cplx> v(100, cplx(0.0));
  v[50] = 1.0;
  CHECK(edge_mass_fraction(v, 0.05) == 0.0);
  v[0] = 1.0;
  CHECK(edge_mass_fraction(v, 0.05) == doctest::Approx(0.5));
  CHECK_THROWS_AS(forward(UniformGrid{0.0, 1.0, 7}, std::vector<cplx>(7)), InvalidArgument);
  CHECK_THROWS_AS(forward(UniformGrid{0.0, 1.0, 8}, std::vector<cplx>(6)), InvalidArgument);
  CHECK_THROWS_AS(forward(UniformGrid{0.0, -1.0, 8}, std::vector<cplx>(8)), InvalidArgument);
}
