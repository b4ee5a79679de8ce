#include "unruh/qops.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace unruh {

TensorSpace::TensorSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 1) throw InvalidArgument("tensor factor '" + f.label + "' has dimension 0");
    if (!seen.insert(f.label).second) throw InvalidArgument("duplicate tensor factor label '" + f.label + "'");
  }
  strides_.assign(factors_.size(), 1);
  dim_ = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    strides_[i] = dim_;
    dim_ *= factors_[i].dim;
  }
}

bool TensorSpace::contains(std::string_view label) const {
  return std::any_of(factors_.begin(), factors_.end(), [&](const Factor& f) { return f.label == label; });
}

std::size_t TensorSpace::position(std::string_view label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return i;
  throw InvalidArgument("unknown tensor factor '" + std::string(label) + "'");
}

std::size_t TensorSpace::flat_index(std::span<const std::size_t> occupations) const {
  if (occupations.size() != factors_.size()) throw InvalidArgument("occupation list has wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (occupations[i] >= factors_[i].dim)
      throw InvalidArgument("occupation out of range for factor '" + factors_[i].label + "'");
    idx += occupations[i] * strides_[i];
  }
  return idx;
}

std::vector<std::size_t> TensorSpace::occupations(std::size_t flat) const {
  if (flat >= dim_) throw InvalidArgument("flat index out of range");
  std::vector<std::size_t> occ(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    occ[i] = flat / strides_[i];
    flat %= strides_[i];
  }
  return occ;
}

TensorSpace TensorSpace::concat(const TensorSpace& other) const {
  std::vector<Factor> all = factors_;
  for (const auto& f : other.factors_) {
    if (contains(f.label)) throw InvalidArgument("tensor product label collision on '" + f.label + "'");
    all.push_back(f);
  }
  return TensorSpace(std::move(all));
}

TensorSpace TensorSpace::restrict_to(std::span<const std::string> labels) const {
  if (labels.empty()) throw InvalidArgument("empty factor selection");
  std::vector<bool> chosen(factors_.size(), false);
  for (const auto& l : labels) chosen[position(l)] = true;
  std::vector<Factor> kept;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (chosen[i]) kept.push_back(factors_[i]);
  return TensorSpace(std::move(kept));
}

// ---------------------------------------------------------------------------

FockKet::FockKet(TensorSpace space, CVector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim())
    throw InvalidArgument("amplitude vector length does not match space dimension");
}

FockKet::FockKet(TensorSpace space) : space_(std::move(space)), amplitudes_(CVector::Zero(space_.dim())) {}

cplx FockKet::amplitude(std::initializer_list<std::size_t> occupations) const {
  return amplitudes_(space_.flat_index(std::span(occupations.begin(), occupations.size())));
}

void FockKet::set_amplitude(std::initializer_list<std::size_t> occupations, cplx value) {
  amplitudes_(space_.flat_index(std::span(occupations.begin(), occupations.size()))) = value;
}

double FockKet::normalize() {
  const double n = norm();
  if (n == 0.0) throw NumericError("cannot normalize the zero ket");
  amplitudes_ /= n;
  return n;
}

// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(TensorSpace space, CMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) throw InvalidArgument("density matrix size does not match space");
}

DensityOperator DensityOperator::unchecked(TensorSpace space, CMatrix matrix) {
  return DensityOperator(std::move(space), std::move(matrix));
}

DensityOperator DensityOperator::from_matrix(TensorSpace space, CMatrix matrix) {
  DensityOperator rho(std::move(space), std::move(matrix));
  const CMatrix& m = rho.matrix_;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(m.trace() - cplx(1.0)) > 1e-10) throw InvalidArgument("density matrix trace differs from 1");
  const auto ev = hermitian_eigenvalues(m);
  if (!ev.empty() && ev.front() < -1e-10) throw InvalidArgument("density matrix has a negative eigenvalue");
  return rho;
}

DensityOperator DensityOperator::projector(const FockKet& ket) {
  const double n2 = ket.amplitudes().squaredNorm();
  if (n2 == 0.0) throw NumericError("projector of the zero ket");
  CMatrix m = ket.amplitudes() * ket.amplitudes().adjoint() / n2;
  return DensityOperator(ket.space(), std::move(m));
}

// ---------------------------------------------------------------------------

FockKet tensor_product(const FockKet& a, const FockKet& b) {
  TensorSpace space = a.space().concat(b.space());
  const auto nb = b.amplitudes().size();
  CVector amps(a.amplitudes().size() * nb);
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) amps.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  return FockKet(std::move(space), std::move(amps));
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  TensorSpace space = a.space().concat(b.space());
  const CMatrix& A = a.matrix();
  const CMatrix& B = b.matrix();
  CMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return DensityOperator::unchecked(std::move(space), std::move(out));
}

namespace {

// Splits every flat index of `space` into (kept index, traced index).
struct IndexSplit {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
};

IndexSplit split_indices(const TensorSpace& space, std::span<const std::string> keep) {
  std::vector<bool> is_kept(space.rank(), false);
  for (const auto& l : keep) is_kept[space.position(l)] = true;

  IndexSplit s;
  for (std::size_t p = 0; p < space.rank(); ++p) (is_kept[p] ? s.kept_dim : s.traced_dim) *= space.factors()[p].dim;
  s.kept.resize(space.dim());
  s.traced.resize(space.dim());
  for (std::size_t flat = 0; flat < space.dim(); ++flat) {
    std::size_t k = 0, t = 0, rem = flat;
    for (std::size_t p = 0; p < space.rank(); ++p) {
      const std::size_t occ = rem / space.stride(p);
      rem %= space.stride(p);
      const std::size_t d = space.factors()[p].dim;
      if (is_kept[p])
        k = k * d + occ;
      else
        t = t * d + occ;
    }
    s.kept[flat] = k;
    s.traced[flat] = t;
  }
  return s;
}

}  // namespace

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep) {
  TensorSpace reduced = rho.space().restrict_to(keep);
  const IndexSplit s = split_indices(rho.space(), keep);
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(s.kept_dim), static_cast<Eigen::Index>(s.kept_dim));
  const std::size_t d = rho.space().dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (s.traced[i] == s.traced[j]) out(s.kept[i], s.kept[j]) += m(i, j);
  return DensityOperator::unchecked(std::move(reduced), std::move(out));
}

DensityOperator partial_trace(const FockKet& ket, std::span<const std::string> keep) {
  TensorSpace reduced = ket.space().restrict_to(keep);
  const IndexSplit s = split_indices(ket.space(), keep);
  CMatrix psi = CMatrix::Zero(static_cast<Eigen::Index>(s.kept_dim), static_cast<Eigen::Index>(s.traced_dim));
  for (std::size_t flat = 0; flat < ket.space().dim(); ++flat) psi(s.kept[flat], s.traced[flat]) = ket.amplitudes()(flat);
  const double n2 = ket.amplitudes().squaredNorm();
  if (n2 == 0.0) throw NumericError("partial trace of the zero ket");
  CMatrix out = psi * psi.adjoint() / n2;
  return DensityOperator::unchecked(std::move(reduced), std::move(out));
}

CMatrix partial_transpose(const TensorSpace& space, const CMatrix& m, std::string_view factor) {
  const std::size_t p = space.position(factor);
  const std::size_t stride = space.stride(p);
  const std::size_t fd = space.factors()[p].dim;
  const std::size_t d = space.dim();
  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t ni = (i / stride) % fd;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t nj = (j / stride) % fd;
      const std::size_t ti = i + (nj - ni) * stride;  // wraps correctly in unsigned arithmetic
      const std::size_t tj = j + (ni - nj) * stride;
      out(ti, tj) = m(i, j);
    }
  }
  return out;
}

PartialTransposeMatrix partial_transpose(const DensityOperator& rho, std::string_view factor) {
  return {rho.space(), std::string(factor), partial_transpose(rho.space(), rho.matrix(), factor)};
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("Hermitian eigensolver failed to converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

NegativityValue negativity_from_spectrum(std::vector<double> eigenvalues) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  double n = 0.0;
  for (double l : eigenvalues)
    if (l <= -kNegativityCutoff) n -= l;
  return {n, std::move(eigenvalues)};
}

NegativityValue negativity(const DensityOperator& rho, std::string_view factor) {
  return negativity_from_spectrum(hermitian_eigenvalues(partial_transpose(rho.space(), rho.matrix(), factor)));
}

}  // namespace unruh
