#include "unruh/bosonic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "unruh/parallel.hpp"

namespace unruh::bosonic {

namespace {

void check_r(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("squeezing parameter r must be finite and >= 0");
}

void check_n_max(int n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
}

void check_scenario(const BosonScenario& s) {
  check_r(s.squeezing.r);
  check_n_max(s.truncation.n_max);
  s.weights.validate();
}

TensorSpace rindler_pair_space(int n_max) {
  const auto d = static_cast<std::size_t>(n_max) + 1;
  return TensorSpace({{kRegionI, d}, {kRegionII, d}});
}

// Unnormalized excitation amplitudes on I ⊗ II; only n + 1 <= n_max survives.
CVector excitation_amplitudes(double r, const UnruhWeights& w, int n_max) {
  const auto f = vacuum_coefficients(r, n_max);
  const double ch = std::cosh(r);
  const auto d = static_cast<Eigen::Index>(n_max) + 1;
  CVector amps = CVector::Zero(d * d);
  for (int n = 0; n < n_max; ++n) {
    const double c = f[n] * std::sqrt(n + 1.0) / ch;
    amps((n + 1) * d + n) += w.q_R * c;  // |n+1>_I |n>_II
    amps(n * d + n + 1) += w.q_L * c;    // |n>_I |n+1>_II
  }
  return amps;
}

CVector vacuum_amplitudes(double r, int n_max) {
  const auto f = vacuum_coefficients(r, n_max);
  const auto d = static_cast<Eigen::Index>(n_max) + 1;
  CVector amps = CVector::Zero(d * d);
  for (Eigen::Index n = 0; n < d; ++n) amps(n * d + n) = f[n];
  return amps;
}

}  // namespace

BosonSqueezing squeezing_from_acceleration(double omega_a, double a) {
  if (!(omega_a > 0.0) || !(a > 0.0)) throw InvalidArgument("frequency and acceleration must be > 0");
  const double t = std::exp(-std::numbers::pi * omega_a / a);
  if (t >= std::tanh(kSqueezingCap)) return {kSqueezingCap, true};
  return {std::atanh(t), false};
}

std::vector<double> vacuum_coefficients(double r, int n_max) {
  check_r(r);
  check_n_max(n_max);
  const double t = std::tanh(r);
  std::vector<double> f(static_cast<std::size_t>(n_max) + 1);
  double p = 1.0 / std::cosh(r);
  for (auto& v : f) {
    v = p;
    p *= t;
  }
  return f;
}

double vacuum_tail_weight(double r, int n_max) {
  check_r(r);
  return std::pow(std::tanh(r), 2.0 * (n_max + 1));
}

TruncatedKet unruh_vacuum_ket(double r, int n_max) {
  check_r(r);
  check_n_max(n_max);
  FockKet ket(rindler_pair_space(n_max), vacuum_amplitudes(r, n_max));
  const double n = ket.normalize();
  return {std::move(ket), n};
}

TruncatedKet unruh_excitation_ket(const BosonScenario& s) {
  check_scenario(s);
  FockKet ket(rindler_pair_space(s.truncation.n_max), excitation_amplitudes(s.squeezing.r, s.weights, s.truncation.n_max));
  const double n = ket.normalize();
  return {std::move(ket), n};
}

TruncatedKet joint_state(const BosonScenario& s) {
  check_scenario(s);
  const int n_max = s.truncation.n_max;
  const CVector vac = vacuum_amplitudes(s.squeezing.r, n_max);
  const CVector exc = excitation_amplitudes(s.squeezing.r, s.weights, n_max);
  const auto d = vac.size();
  CVector amps(2 * d);
  amps.head(d) = vac / std::sqrt(2.0);
  amps.tail(d) = exc / std::sqrt(2.0);
  TensorSpace space = TensorSpace({{kAlice, 2}}).concat(rindler_pair_space(n_max));
  FockKet ket(std::move(space), std::move(amps));
  const double n = ket.normalize();
  return {std::move(ket), n};
}

DensityOperator rho_alice_rob(const BosonScenario& s) {
  const std::vector<std::string> keep{kAlice, kRegionI};
  return partial_trace(joint_state(s).ket, keep);
}

DensityOperator rho_alice_antirob(const BosonScenario& s) {
  const std::vector<std::string> keep{kAlice, kRegionII};
  return partial_trace(joint_state(s).ket, keep);
}

BosonNegativities bosonic_negativity_fixed(const BosonScenario& s) {
  const TruncatedKet psi = joint_state(s);
  const std::vector<std::string> keep_rob{kAlice, kRegionI};
  const std::vector<std::string> keep_antirob{kAlice, kRegionII};
  BosonNegativities out;
  out.alice_rob = negativity(partial_trace(psi.ket, keep_rob), kAlice).value;
  out.alice_antirob = negativity(partial_trace(psi.ket, keep_antirob), kAlice).value;
  out.convergence.n_max_used = s.truncation.n_max;
  out.convergence.tail = vacuum_tail_weight(s.squeezing.r, s.truncation.n_max);
  return out;
}

BosonNegativities bosonic_negativity_pair(const BosonScenario& scenario, const BosonSolverOptions& options) {
  check_scenario(scenario);
  if (options.n_max_cap < scenario.truncation.n_max) throw InvalidArgument("n_max exceeds the configured cap");

  if (scenario.squeezing.effectively_infinite) {
    BosonNegativities out;
    out.convergence = {scenario.truncation.n_max, 0.0, vacuum_tail_weight(scenario.squeezing.r, scenario.truncation.n_max),
                       true, true, true, true};
    return out;
  }

  BosonScenario s = scenario;
  for (;;) {
    BosonNegativities base = bosonic_negativity_fixed(s);
    BosonScenario probe = s;
    probe.truncation.n_max += options.probe_step;
    const BosonNegativities next = bosonic_negativity_fixed(probe);

    auto& rep = base.convergence;
    rep.delta = std::max(std::abs(next.alice_rob - base.alice_rob), std::abs(next.alice_antirob - base.alice_antirob));
    rep.delta_ok = rep.delta < options.delta_tol;
    rep.tail_ok = rep.tail < options.tail_bound;
    rep.converged = rep.delta_ok && rep.tail_ok;
    if (rep.converged) return base;

    if (s.truncation.n_max >= options.n_max_cap) {
      if (options.throw_on_failure)
        throw ConvergenceError("bosonic negativity did not converge at n_max = " + std::to_string(s.truncation.n_max) +
                                   " (delta = " + std::to_string(rep.delta) + ", tail = " + std::to_string(rep.tail) + ")",
                               base);
      return base;
    }
    s.truncation.n_max = std::min(2 * s.truncation.n_max, options.n_max_cap);
  }
}

std::vector<BosonCurveRow> bosonic_curve(double q_abs, std::span<const double> r_grid, int n_max,
                                         BosonSolverOptions options) {
  const UnruhWeights w = UnruhWeights::from_abs(q_abs);
  for (double r : r_grid) check_r(r);
  options.throw_on_failure = false;
  std::vector<BosonCurveRow> rows(r_grid.size());
  parallel_for(r_grid.size(), [&](std::size_t i) {
    const BosonScenario s{{r_grid[i], false}, w, {n_max}};
    const BosonNegativities n = bosonic_negativity_pair(s, options);
    rows[i] = {q_abs, r_grid[i], n.alice_rob, n.alice_antirob, n.convergence};
  });
  return rows;
}

}  // namespace unruh::bosonic
