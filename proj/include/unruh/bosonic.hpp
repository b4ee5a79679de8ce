#pragma once

// Bosonic inertial/accelerated entanglement in a truncated Rindler Fock basis.
//
// The joint state lives on M ⊗ I ⊗ II where M is Alice's two-level Minkowski
// mode (occupations 0, 1) and I, II are the Rindler wedge modes truncated at
// occupation n_max.

#include <span>
#include <vector>

#include "unruh/qops.hpp"
#include "unruh/weights.hpp"

namespace unruh::bosonic {

inline constexpr const char* kAlice = "M";
inline constexpr const char* kRegionI = "I";
inline constexpr const char* kRegionII = "II";

/// r values derived from acceleration are clamped here.
inline constexpr double kSqueezingCap = 10.0;

struct BosonSqueezing {
  double r = 0.0;
  /// Set when the acceleration formula diverged past kSqueezingCap.
  bool effectively_infinite = false;
};

/// r = artanh(exp(-pi * omega_a / a)), capped at kSqueezingCap.
BosonSqueezing squeezing_from_acceleration(double omega_a, double a);

struct BosonTruncation {
  int n_max = 30;
};

struct BosonScenario {
  BosonSqueezing squeezing;
  UnruhWeights weights;
  BosonTruncation truncation;
};

/// f[n] = tanh^n(r) / cosh(r), n = 0..n_max.
std::vector<double> vacuum_coefficients(double r, int n_max);

/// Squeezed-vacuum weight beyond n_max: sum_{n > n_max} f[n]^2 = tanh^{2(n_max+1)} r.
double vacuum_tail_weight(double r, int n_max);

/// A renormalized truncated ket together with its norm before renormalization.
struct TruncatedKet {
  FockKet ket;
  double norm_before = 1.0;
};

TruncatedKet unruh_vacuum_ket(double r, int n_max);
TruncatedKet unruh_excitation_ket(const BosonScenario& scenario);
TruncatedKet joint_state(const BosonScenario& scenario);

DensityOperator rho_alice_rob(const BosonScenario& scenario);
DensityOperator rho_alice_antirob(const BosonScenario& scenario);

struct BosonSolverOptions {
  int n_max_cap = 120;
  int probe_step = 5;        // convergence compares n_max and n_max + probe_step
  double delta_tol = 1e-6;   // |ΔN| acceptance
  double tail_bound = 1e-8;  // squeezed-vacuum tail acceptance
  bool throw_on_failure = true;
};

struct ConvergenceReport {
  int n_max_used = 0;
  double delta = 0.0;  // max(|ΔN_AR|, |ΔN_AAR|) between n_max and n_max + probe_step
  double tail = 0.0;
  bool delta_ok = false;
  bool tail_ok = false;
  bool converged = false;
  bool effectively_infinite = false;
};

struct BosonNegativities {
  double alice_rob = 0.0;
  double alice_antirob = 0.0;
  ConvergenceReport convergence;
};

/// Thrown by bosonic_negativity_pair when n_max reaches the cap unconverged.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, BosonNegativities partial)
      : NumericError(what), partial_(partial) {}
  const BosonNegativities& partial() const { return partial_; }

 private:
  BosonNegativities partial_;
};

/// Negativities at a fixed truncation, no convergence control.
BosonNegativities bosonic_negativity_fixed(const BosonScenario& scenario);

/// Starts at scenario.truncation.n_max and doubles until both the tail bound
/// and the n_max vs n_max+5 stability test pass, up to options.n_max_cap.
BosonNegativities bosonic_negativity_pair(const BosonScenario& scenario, const BosonSolverOptions& options = {});

struct BosonCurveRow {
  double q_abs = 0.0;
  double r = 0.0;
  double alice_rob = 0.0;
  double alice_antirob = 0.0;
  ConvergenceReport convergence;
};

/// One row per grid point; q_R = q_abs, q_L = sqrt(1 - q_abs^2), both real.
/// Rows are evaluated concurrently and returned in grid order; unconverged
/// rows are reported, not thrown.
std::vector<BosonCurveRow> bosonic_curve(double q_abs, std::span<const double> r_grid, int n_max,
                                         BosonSolverOptions options = {});

}  // namespace unruh::bosonic
