#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "unruh/qops.hpp"

using namespace unruh;

namespace {

TensorSpace qubits(const char* a, const char* b) { return TensorSpace({{a, 2}, {b, 2}}); }

FockKet bell() {
  FockKet k(qubits("A", "B"));
  k.set_amplitude({0, 0}, 1.0 / std::sqrt(2.0));
  k.set_amplitude({1, 1}, 1.0 / std::sqrt(2.0));
  return k;
}

CMatrix random_unitary(std::size_t d, std::mt19937& rng) {
  std::normal_distribution<double> g;
  CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
  return Eigen::HouseholderQR<CMatrix>(m).householderQ() * CMatrix::Identity(d, d);
}

// Brute-force partial transpose of the second factor of a dA x dB operator.
CMatrix naive_pt_second(const CMatrix& m, std::size_t dA, std::size_t dB) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < dA; ++a)
    for (std::size_t b = 0; b < dB; ++b)
      for (std::size_t c = 0; c < dA; ++c)
        for (std::size_t d = 0; d < dB; ++d) out(a * dB + b, c * dB + d) = m(a * dB + d, c * dB + b);
  return out;
}

double naive_negativity(const CMatrix& pt) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(pt, Eigen::EigenvaluesOnly);
  double n = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) n += std::max(0.0, -es.eigenvalues()(i));
  return n;
}

}  // namespace

TEST_CASE("tensor space indexing is row-major with the first factor slowest") {
  TensorSpace s({{"A", 2}, {"B", 3}, {"C", 4}});
  CHECK(s.dim() == 24);
  CHECK(s.stride(0) == 12);
  CHECK(s.stride(2) == 1);
  const std::size_t occ[] = {1, 2, 3};
  CHECK(s.flat_index(occ) == 23);
  for (std::size_t f = 0; f < s.dim(); ++f) {
    auto o = s.occupations(f);
    CHECK(s.flat_index(o) == f);
  }
  CHECK_THROWS_AS(s.position("D"), InvalidArgument);
  CHECK_THROWS_AS(s.concat(TensorSpace({{"B", 2}})), InvalidArgument);
  const std::string keep[] = {"C", "A"};
  auto sub = s.restrict_to(keep);
  REQUIRE(sub.rank() == 2);
  CHECK(sub.factors()[0].label == "A");  // original order is preserved
}

TEST_CASE("density operator validation") {
  TensorSpace s({{"A", 2}});
  CMatrix m(2, 2);
  m << 0.5, 0.1, 0.2, 0.5;
  CHECK_THROWS_AS(DensityOperator::from_matrix(s, m), InvalidArgument);
  m << 0.6, 0.0, 0.0, 0.6;
  CHECK_THROWS_AS(DensityOperator::from_matrix(s, m), InvalidArgument);
  m << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityOperator::from_matrix(s, m), InvalidArgument);
  m << 0.5, 0.5, 0.5, 0.5;
  CHECK_NOTHROW(DensityOperator::from_matrix(s, m));
}

TEST_CASE("Bell state partial transpose spectrum") {
  auto rho = DensityOperator::projector(bell());
  for (const char* f : {"A", "B"}) {
    auto nv = negativity(rho, f);
    REQUIRE(nv.eigenvalues.size() == 4);
    CHECK(nv.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-14));
    for (int i = 1; i < 4; ++i) CHECK(nv.eigenvalues[i] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(nv.value == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("partial transpose matches a brute-force index swap and is an involution") {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  const std::size_t dA = 3, dB = 4;
  CMatrix m(dA * dB, dA * dB);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = cplx(g(rng), g(rng));
  TensorSpace s({{"A", dA}, {"B", dB}});
  const CMatrix pt = partial_transpose(s, m, "B");
  CHECK((pt - naive_pt_second(m, dA, dB)).norm() < 1e-14);
  CHECK((partial_transpose(s, pt, "B") - m).norm() < 1e-14);
  // transposing A instead equals the full transpose of the B-transposed matrix
  CHECK((partial_transpose(s, m, "A") - pt.transpose()).norm() < 1e-14);
}

TEST_CASE("pure-state negativity follows the Schmidt coefficients") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t dA = 3, dB = 4;
    std::vector<double> p(dA);
    for (auto& x : p) x = u(rng);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= total;
    double sum_sqrt = 0.0;
    for (double x : p) sum_sqrt += std::sqrt(x);
    const double expected = (sum_sqrt * sum_sqrt - 1.0) / 2.0;

    CVector psi = CVector::Zero(dA * dB);
    for (std::size_t i = 0; i < dA; ++i) psi(i * dB + i) = std::sqrt(p[i]);
    const CMatrix U = random_unitary(dA, rng), V = random_unitary(dB, rng);
    Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> M(psi.data(), dA, dB);
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rotated = U * M * V.transpose();
    CVector out = Eigen::Map<CVector>(rotated.data(), dA * dB);

    FockKet ket(TensorSpace({{"A", dA}, {"B", dB}}), out);
    auto rho = DensityOperator::projector(ket);
    CHECK(negativity(rho, "B").value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(negativity(rho, "A").value == doctest::Approx(expected).epsilon(1e-12));

    const std::string keep[] = {"A"};
    auto reduced = partial_trace(ket, keep);
    auto spec = hermitian_eigenvalues(reduced.matrix());
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < dA; ++i) CHECK(spec[i] == doctest::Approx(p[i]).epsilon(1e-12));
  }
}

TEST_CASE("Werner mixture against an independent eigen oracle") {
  auto bell_rho = DensityOperator::projector(bell()).matrix();
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.9, 1.0}) {
    CMatrix m = p * bell_rho + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
    auto rho = DensityOperator::from_matrix(qubits("A", "B"), m);
    const double oracle = naive_negativity(naive_pt_second(m, 2, 2));
    CHECK(negativity(rho, "B").value == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(negativity(rho, "B").value == doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 4.0)).epsilon(1e-13));
  }
}

TEST_CASE("negativity is invariant under local unitaries") {
  std::mt19937 rng(3);
  auto bell_rho = DensityOperator::projector(bell()).matrix();
  CMatrix m = 0.5 * bell_rho + 0.5 * CMatrix::Identity(4, 4) / 4.0;
  const double base = negativity(DensityOperator::from_matrix(qubits("A", "B"), m), "B").value;
  CHECK(base == doctest::Approx(0.125).epsilon(1e-13));
  for (int t = 0; t < 10; ++t) {
    CMatrix U = Eigen::kroneckerProduct(random_unitary(2, rng), random_unitary(2, rng));
    CMatrix rotated = U * m * U.adjoint();
    rotated = 0.5 * (rotated + rotated.adjoint());
    CHECK(negativity(DensityOperator::from_matrix(qubits("A", "B"), rotated), "B").value ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("ket and density partial traces agree") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  TensorSpace s({{"A", 2}, {"B", 3}, {"C", 2}});
  CVector v(s.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  FockKet ket(s, v);
  ket.normalize();
  auto rho = DensityOperator::projector(ket);
  for (const auto& keep : std::vector<std::vector<std::string>>{{"A"}, {"B"}, {"A", "C"}, {"B", "C"}}) {
    auto a = partial_trace(ket, keep);
    auto b = partial_trace(rho, keep);
    CHECK(a.space() == b.space());
    CHECK((a.matrix() - b.matrix()).norm() < 1e-14);
    CHECK(a.trace() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("tensor products of product states carry no negativity") {
  FockKet a(TensorSpace({{"A", 2}}));
  a.set_amplitude({0}, 0.6);
  a.set_amplitude({1}, cplx(0.0, 0.8));
  FockKet b(TensorSpace({{"B", 3}}));
  b.set_amplitude({2}, 1.0);
  auto ab = tensor_product(a, b);
  CHECK(ab.amplitude({1, 2}) == cplx(0.0, 0.8));
  CHECK(negativity(DensityOperator::projector(ab), "B").value == 0.0);
  auto rho = tensor_product(DensityOperator::projector(a), DensityOperator::projector(b));
  CHECK((rho.matrix() - DensityOperator::projector(ab).matrix()).norm() < 1e-15);
}
