#include <doctest.h>

#include <cmath>
#include <numbers>

#include "unruh/bosonic.hpp"

using namespace unruh;
using namespace unruh::bosonic;

namespace {

// Alice-Rob negativity for q_R = 1 from the 2x2 blocks of the partially
// transposed state on {|0,n+1>, |1,n>}, summed far past any truncation.
double alice_rob_block_oracle(double r) {
  const double t = std::tanh(r), c = std::cosh(r);
  auto f2 = [&](long n) { return n < 0 ? 0.0 : std::pow(t, 2.0 * n) / (c * c); };
  double neg = 0.0;
  for (long n = 0; n < 20000; ++n) {
    const double a = 0.5 * f2(n + 1);
    const double b = 0.5 * f2(n - 1) * n / (c * c);
    const double off = 0.5 * f2(n) * std::sqrt(n + 1.0) / c;
    const double lo = 0.5 * (a + b) - std::sqrt(0.25 * (a - b) * (a - b) + off * off);
    if (lo < 0.0) neg -= lo;
    if (f2(n) < 1e-300) break;
  }
  return neg;
}

double r0_anchor(double q) {
  const double ql2 = 1.0 - q * q;
  return (std::sqrt(ql2 * ql2 + 4.0 * q * q) - ql2) / 4.0;
}

BosonScenario scenario(double r, UnruhWeights w, int n_max = 30) { return {{r, false}, w, {n_max}}; }

}  // namespace

TEST_CASE("squeezed vacuum coefficients and tail") {
  for (double r : {0.0, 0.3, 1.0, 2.0}) {
    auto f = vacuum_coefficients(r, 40);
    double s = 0.0;
    for (double x : f) s += x * x;
    CHECK(s + vacuum_tail_weight(r, 40) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(vacuum_coefficients(0.0, 5)[0] == 1.0);
  CHECK(unruh_vacuum_ket(1.0, 10).norm_before == doctest::Approx(std::sqrt(1.0 - vacuum_tail_weight(1.0, 10))));
}

TEST_CASE("squeezing from acceleration") {
  auto s = squeezing_from_acceleration(1.0, 2.0);
  CHECK(std::tanh(s.r) == doctest::Approx(std::exp(-std::numbers::pi / 2.0)));
  CHECK_FALSE(s.effectively_infinite);
  auto big = squeezing_from_acceleration(1e-12, 1.0);
  CHECK(big.effectively_infinite);
  CHECK(big.r == kSqueezingCap);
  CHECK_THROWS_AS(squeezing_from_acceleration(1.0, 0.0), InvalidArgument);
}

TEST_CASE("joint state is normalized and reduced states are valid") {
  auto s = scenario(0.7, UnruhWeights::from_abs(0.8), 20);
  auto js = joint_state(s);
  CHECK(js.ket.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(js.ket.space().dim() == 2 * 21 * 21);
  auto ar = rho_alice_rob(s);
  CHECK(ar.trace() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(ar.space().factors()[1].label == kRegionI);
  auto aar = rho_alice_antirob(s);
  CHECK(aar.space().factors()[1].label == kRegionII);
}

TEST_CASE("r = 0 closed-form anchor") {
  for (double q : {1.0, 0.9, 0.8, 0.7, 0.3}) {
    auto n = bosonic_negativity_pair(scenario(0.0, UnruhWeights::from_abs(q)));
    CHECK(n.alice_rob == doctest::Approx(r0_anchor(q)).epsilon(1e-12));
    CHECK(n.alice_antirob == doctest::Approx(r0_anchor(std::sqrt(1.0 - q * q))).epsilon(1e-12));
  }
}

TEST_CASE("q_R = 1 matches the analytic block oracle") {
  CHECK(alice_rob_block_oracle(0.5) == doctest::Approx(0.327556200067).epsilon(1e-11));
  for (double r : {0.25, 0.5, 1.0, 1.5}) {
    auto n = bosonic_negativity_pair(scenario(r, {}));
    CHECK(n.convergence.converged);
    CHECK(std::abs(n.alice_rob - alice_rob_block_oracle(r)) < 1e-7);
    CHECK(n.alice_antirob < 1e-9);
  }
}

TEST_CASE("truncation doubles until the solver converges") {
  auto n = bosonic_negativity_pair(scenario(1.0, {}));
  CHECK(n.convergence.n_max_used == 60);
  CHECK(n.convergence.delta < 1e-6);
  CHECK(n.convergence.tail < 1e-8);

  auto fixed = bosonic_negativity_fixed(scenario(1.0, {}, 30));
  CHECK_FALSE(fixed.convergence.tail_ok);

  BosonSolverOptions opt;
  CHECK_THROWS_AS(bosonic_negativity_pair(scenario(3.0, {}), opt), ConvergenceError);
  opt.throw_on_failure = false;
  auto far = bosonic_negativity_pair(scenario(3.0, {}), opt);
  CHECK_FALSE(far.convergence.converged);
  CHECK(far.convergence.n_max_used == 120);
  CHECK(far.alice_rob < 0.01);
}

TEST_CASE("effectively infinite acceleration gives zero") {
  BosonScenario s{squeezing_from_acceleration(1e-12, 1.0), UnruhWeights::from_abs(0.8), {30}};
  auto n = bosonic_negativity_pair(s);
  CHECK(n.alice_rob == 0.0);
  CHECK(n.alice_antirob == 0.0);
  CHECK(n.convergence.effectively_infinite);
}

TEST_CASE("negativities are insensitive to the phases of the Unruh weights") {
  const auto base = UnruhWeights::from_abs(0.8);
  for (double r : {0.3, 0.8}) {
    auto ref = bosonic_negativity_fixed(scenario(r, base, 25));
    for (double phi : {std::numbers::pi / 7.0, std::numbers::pi / 3.0, 1.0}) {
      UnruhWeights w{base.q_R * std::polar(1.0, phi), base.q_L * std::polar(1.0, -2.0 * phi)};
      auto n = bosonic_negativity_fixed(scenario(r, w, 25));
      CHECK(std::abs(n.alice_rob - ref.alice_rob) < 1e-10);
      CHECK(std::abs(n.alice_antirob - ref.alice_antirob) < 1e-10);
    }
  }
}

TEST_CASE("swapping q_R and q_L swaps the bipartitions") {
  const auto w = UnruhWeights::from_abs(0.9);
  auto a = bosonic_negativity_fixed(scenario(0.6, w, 25));
  auto b = bosonic_negativity_fixed(scenario(0.6, w.swapped(), 25));
  CHECK(a.alice_rob == doctest::Approx(b.alice_antirob).epsilon(1e-12));
  CHECK(a.alice_antirob == doctest::Approx(b.alice_rob).epsilon(1e-12));
}

TEST_CASE("curve rows are ordered and never throw") {
  const double grid[] = {0.0, 0.5, 1.0, 3.0};
  auto rows = bosonic_curve(0.7, grid, 30);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(rows[i].r == grid[i]);
  CHECK(rows[0].convergence.converged);
  CHECK_FALSE(rows[3].convergence.converged);
  CHECK(rows[0].alice_rob > rows[1].alice_rob);
  CHECK(rows[1].alice_rob > rows[2].alice_rob);
}

TEST_CASE("invalid scenarios are rejected") {
  CHECK_THROWS_AS(bosonic_negativity_pair(scenario(-0.1, {})), InvalidArgument);
  CHECK_THROWS_AS(bosonic_negativity_pair(scenario(0.5, {cplx(1.0), cplx(1.0)})), InvalidArgument);
  CHECK_THROWS_AS(bosonic_negativity_pair(scenario(0.5, {}, 0)), InvalidArgument);
  CHECK_THROWS_AS(UnruhWeights::from_abs(1.2), InvalidArgument);
}
