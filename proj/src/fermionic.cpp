#include "unruh/fermionic.hpp"

#include <cmath>
#include <numbers>

#include "unruh/parallel.hpp"

namespace unruh::fermionic {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

void check_r(double r) {
  if (!(r >= 0.0 && r <= kQuarterPi + 1e-15)) throw InvalidArgument("fermionic r must lie in [0, pi/4]");
}

void check_scenario(const FermionScenario& s) {
  check_r(s.squeezing.r);
  s.weights.validate();
}

std::size_t slot_index(int n0, int n1, int n2, int n3) { return 8 * n0 + 4 * n1 + 2 * n2 + n3; }

std::vector<std::string> keep_for(Bipartition b) {
  if (b == Bipartition::AliceRob) return {kAlice, kParticleI, kAntiparticleI};
  return {kAlice, kAntiparticleII, kParticleII};
}

}  // namespace

FermionSqueezing fermion_squeezing_from_acceleration(double omega_a, double a) {
  if (!(omega_a > 0.0) || !(a > 0.0)) throw InvalidArgument("frequency and acceleration must be > 0");
  return {std::atan(std::exp(-std::numbers::pi * omega_a / a))};
}

FermionSqueezing fermion_squeezing_from_energy(double energy) {
  if (!(energy >= 0.0)) throw InvalidArgument("Rindler mode energy must be >= 0");
  return {std::atan(std::exp(-std::numbers::pi * energy))};
}

TensorSpace grassmann_space() {
  return TensorSpace({{kParticleI, 2}, {kAntiparticleII, 2}, {kAntiparticleI, 2}, {kParticleII, 2}});
}

FockKet grassmann_vacuum(double r) {
  check_r(r);
  const double c = std::cos(r), s = std::sin(r);
  CVector a = CVector::Zero(16);
  a(slot_index(0, 0, 0, 0)) = c * c;
  a(slot_index(0, 0, 1, 1)) = -s * c;
  a(slot_index(1, 1, 0, 0)) = s * c;
  a(slot_index(1, 1, 1, 1)) = -s * s;
  return FockKet(grassmann_space(), std::move(a));
}

FockKet grassmann_one_particle(double r, const UnruhWeights& w) {
  check_r(r);
  w.validate();
  const double c = std::cos(r), s = std::sin(r);
  CVector a = CVector::Zero(16);
  a(slot_index(1, 0, 0, 0)) = w.q_R * c;
  a(slot_index(1, 0, 1, 1)) = -w.q_R * s;
  a(slot_index(1, 1, 0, 1)) = w.q_L * s;
  a(slot_index(0, 0, 0, 1)) = w.q_L * c;
  return FockKet(grassmann_space(), std::move(a));
}

FockKet fermion_joint_state(const FermionScenario& s) {
  check_scenario(s);
  const FockKet vac = grassmann_vacuum(s.squeezing.r);
  const FockKet one = grassmann_one_particle(s.squeezing.r, s.weights);
  CVector a(32);
  a.head(16) = vac.amplitudes() / std::sqrt(2.0);
  a.tail(16) = one.amplitudes() / std::sqrt(2.0);
  return FockKet(TensorSpace({{kAlice, 2}}).concat(grassmann_space()), std::move(a));
}

DensityOperator rho_alice_rob_fermi(const FermionScenario& s) {
  const auto keep = keep_for(Bipartition::AliceRob);
  return partial_trace(fermion_joint_state(s), keep);
}

DensityOperator rho_alice_antirob_fermi(const FermionScenario& s) {
  const auto keep = keep_for(Bipartition::AliceAntiRob);
  return partial_trace(fermion_joint_state(s), keep);
}

PTBlocks pt_blocks(const FermionScenario& sc, Bipartition b) {
  check_scenario(sc);
  const double C = std::cos(sc.squeezing.r), S = std::sin(sc.squeezing.r);
  const cplx qr = sc.weights.q_R, ql = sc.weights.q_L;
  const cplx qrc = std::conj(qr), qlc = std::conj(ql);
  const double qr2 = std::norm(qr), ql2 = std::norm(ql);
  const double C2 = C * C, S2 = S * S, C3 = C2 * C, S3 = S2 * S;

  PTBlocks out;
  out.bipartition = b;
  Eigen::Matrix3cd m1, m2;
  if (b == Bipartition::AliceRob) {
    m1 << C2 * ql2, C3 * qrc, -qrc * ql * S * C,
          C3 * qr, S2 * C2, -ql * S3,
          -qr * qlc * S * C, -qlc * S3, qr2 * S2;
    m2 << C2 * C2, -ql * C2 * S, 0.0,
          -qlc * C2 * S, 0.0, qrc * S2 * C,
          0.0, qr * S2 * C, S2 * S2;
    out.blocks[0] = {0.5 * m1, {"100", "010", "111"}};
    out.blocks[1] = {0.5 * m2, {"000", "101", "011"}};
  } else {
    m1 << S2 * ql2, S3 * qrc, qrc * ql * S * C,
          S3 * qr, C2 * S2, ql * C3,
          qr * qlc * S * C, qlc * C3, qr2 * C2;
    m2 << S2 * S2, ql * S2 * C, 0.0,
          qlc * S2 * C, 0.0, qrc * C2 * S,
          0.0, qr * C2 * S, C2 * C2;
    out.blocks[0] = {0.5 * m1, {"111", "001", "100"}};
    out.blocks[1] = {0.5 * m2, {"011", "110", "000"}};
  }
  return out;
}

PartialTransposeMatrix full_partial_transpose(const FermionScenario& s, Bipartition b) {
  const auto keep = keep_for(b);
  return partial_transpose(partial_trace(fermion_joint_state(s), keep), kAlice);
}

namespace {

double block_negativity(const PTBlocks& blocks) {
  double n = 0.0;
  for (const auto& blk : blocks.blocks) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(blk.matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("3x3 block eigensolver failed");
    const auto& ev = solver.eigenvalues();
    n += negativity_from_spectrum({ev.data(), ev.data() + ev.size()}).value;
  }
  return n;
}

double full_negativity(const FermionScenario& s, Bipartition b) {
  return negativity_from_spectrum(hermitian_eigenvalues(full_partial_transpose(s, b).matrix)).value;
}

}  // namespace

FermionNegativities fermionic_negativity_pair(const FermionScenario& s, NegativityMethod method) {
  check_scenario(s);
  if (method == NegativityMethod::Blocks)
    return {block_negativity(pt_blocks(s, Bipartition::AliceRob)), block_negativity(pt_blocks(s, Bipartition::AliceAntiRob))};
  return {full_negativity(s, Bipartition::AliceRob), full_negativity(s, Bipartition::AliceAntiRob)};
}

CheckedFermionNegativities fermionic_negativity_checked(const FermionScenario& s) {
  const auto blocks = fermionic_negativity_pair(s, NegativityMethod::Blocks);
  const auto full = fermionic_negativity_pair(s, NegativityMethod::Full);
  const double residual =
      std::max(std::abs(blocks.alice_rob - full.alice_rob), std::abs(blocks.alice_antirob - full.alice_antirob));
  if (!(residual <= kMethodAgreementTol))
    throw NumericError("block and full-space negativities disagree by " + std::to_string(residual) +
                       " at r = " + std::to_string(s.squeezing.r));
  return {blocks, residual};
}

FermionCurve fermionic_curve(double q_abs, std::span<const double> r_grid) {
  const UnruhWeights w = UnruhWeights::from_abs(q_abs);
  for (double r : r_grid) check_r(r);
  FermionCurve curve;
  curve.swap_equivalent = q_abs < std::numbers::sqrt2 / 2.0 - 1e-15;
  curve.rows.resize(r_grid.size());
  parallel_for(r_grid.size(), [&](std::size_t i) {
    const auto n = fermionic_negativity_checked({{r_grid[i]}, w});
    curve.rows[i] = {q_abs, r_grid[i], n.value.alice_rob, n.value.alice_antirob, n.residual};
  });
  return curve;
}

}  // namespace unruh::fermionic
