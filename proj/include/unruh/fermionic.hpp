#pragma once

// Grassmann-scalar (spinless fermion) version of the inertial/accelerated
// entanglement problem. Each Rindler frequency carries four binary slots,
// ordered (I+, II-, I-, II+): particle in I, antiparticle in II, antiparticle
// in I, particle in II. The flat index of |n n' n'' n'''> is 8n + 4n' + 2n'' + n'''.
//
// States are assembled from fixed coefficient tables rather than by applying
// anticommuting operators, so the sign conventions of those tables are
// reproduced exactly.

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "unruh/qops.hpp"
#include "unruh/weights.hpp"

namespace unruh::fermionic {

inline constexpr const char* kAlice = "M";
inline constexpr const char* kParticleI = "I+";
inline constexpr const char* kAntiparticleII = "II-";
inline constexpr const char* kAntiparticleI = "I-";
inline constexpr const char* kParticleII = "II+";

struct FermionSqueezing {
  double r = 0.0;  // in [0, pi/4]
};

/// r = arctan(exp(-pi * omega_a / a)); tends to pi/4 for infinite acceleration.
FermionSqueezing fermion_squeezing_from_acceleration(double omega_a, double a);
/// r = arctan(exp(-pi * energy)), for a dimensionless Rindler mode energy.
FermionSqueezing fermion_squeezing_from_energy(double energy);

struct FermionScenario {
  FermionSqueezing squeezing;
  UnruhWeights weights;
};

/// The 16-dimensional four-slot space.
TensorSpace grassmann_space();

FockKet grassmann_vacuum(double r);
FockKet grassmann_one_particle(double r, const UnruhWeights& weights);
/// (|0>_M ⊗ vacuum + |1>_M ⊗ one-particle) / sqrt(2), dimension 32.
FockKet fermion_joint_state(const FermionScenario& scenario);

/// Basis |i>_M |j>_I+ |k>_I-.
DensityOperator rho_alice_rob_fermi(const FermionScenario& scenario);
/// Basis |i>_M |j>_II- |k>_II+.
DensityOperator rho_alice_antirob_fermi(const FermionScenario& scenario);

enum class Bipartition { AliceRob, AliceAntiRob };
enum class NegativityMethod { Blocks, Full };

struct PTBlock {
  Eigen::Matrix3cd matrix;
  std::array<std::string, 3> basis;  // e.g. "100" = |1>_M |0> |0>
};

struct PTBlocks {
  Bipartition bipartition = Bipartition::AliceRob;
  std::array<PTBlock, 2> blocks;
};

/// The two 3x3 partial-transpose blocks that carry all negative eigenvalues,
/// written directly in terms of C = cos r, S = sin r, q_R and q_L.
PTBlocks pt_blocks(const FermionScenario& scenario, Bipartition bipartition);

/// Full 8x8 partial transpose (Alice's factor transposed).
PartialTransposeMatrix full_partial_transpose(const FermionScenario& scenario, Bipartition bipartition);

struct FermionNegativities {
  double alice_rob = 0.0;
  double alice_antirob = 0.0;
};

FermionNegativities fermionic_negativity_pair(const FermionScenario& scenario,
                                              NegativityMethod method = NegativityMethod::Blocks);

/// Agreement tolerance between the block and full-space routes.
inline constexpr double kMethodAgreementTol = 1e-10;

struct CheckedFermionNegativities {
  FermionNegativities value;  // block route
  double residual = 0.0;      // max deviation of the full route
};

/// Evaluates both routes; throws NumericError if they disagree beyond kMethodAgreementTol.
CheckedFermionNegativities fermionic_negativity_checked(const FermionScenario& scenario);

struct FermionCurveRow {
  double q_abs = 0.0;
  double r = 0.0;
  double alice_rob = 0.0;
  double alice_antirob = 0.0;
  double method_residual = 0.0;
};

struct FermionCurve {
  std::vector<FermionCurveRow> rows;
  /// |q_R| < 1/sqrt(2): the roles of the two bipartitions are exchanged.
  bool swap_equivalent = false;
};

FermionCurve fermionic_curve(double q_abs, std::span<const double> r_grid);

}  // namespace unruh::fermionic
