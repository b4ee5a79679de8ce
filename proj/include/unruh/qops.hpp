#pragma once

// Finite-dimensional quantum-operator algebra on labeled tensor spaces.
//
// Index convention (used everywhere in the library): the flat index of a
// basis state |n_0 n_1 ... n_{k-1}> is row-major with the leftmost factor
// varying slowest, i.e. idx = ((n_0 * d_1 + n_1) * d_2 + n_2) ...

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace unruh {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Raised for malformed inputs (unknown labels, out-of-range parameters).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot deliver a trustworthy result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TensorSpace {
 public:
  struct Factor {
    std::string label;
    std::size_t dim;

    bool operator==(const Factor&) const = default;
  };

  TensorSpace() = default;
  explicit TensorSpace(std::vector<Factor> factors);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return factors_.size(); }
  const std::vector<Factor>& factors() const { return factors_; }

  bool contains(std::string_view label) const;
  /// Position of a factor; throws InvalidArgument for unknown labels.
  std::size_t position(std::string_view label) const;
  std::size_t factor_dim(std::string_view label) const { return factors_[position(label)].dim; }

  /// Distance in the flat index between consecutive values of factor `pos`.
  std::size_t stride(std::size_t pos) const { return strides_[pos]; }

  std::size_t flat_index(std::span<const std::size_t> occupations) const;
  std::vector<std::size_t> occupations(std::size_t flat) const;

  /// Concatenation `this ⊗ other`; throws on label collision.
  TensorSpace concat(const TensorSpace& other) const;
  /// Sub-space of the listed labels, kept in this space's factor order.
  TensorSpace restrict_to(std::span<const std::string> labels) const;

  bool operator==(const TensorSpace& other) const { return factors_ == other.factors_; }

 private:
  std::vector<Factor> factors_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 1;
};

class FockKet {
 public:
  FockKet(TensorSpace space, CVector amplitudes);
  /// Zero ket on `space`.
  explicit FockKet(TensorSpace space);

  const TensorSpace& space() const { return space_; }
  const CVector& amplitudes() const { return amplitudes_; }
  CVector& amplitudes() { return amplitudes_; }

  cplx amplitude(std::initializer_list<std::size_t> occupations) const;
  void set_amplitude(std::initializer_list<std::size_t> occupations, cplx value);

  double norm() const { return amplitudes_.norm(); }
  /// Rescales to unit norm and returns the norm before rescaling.
  double normalize();

 private:
  TensorSpace space_;
  CVector amplitudes_;
};

class DensityOperator {
 public:
  /// Validating constructor: Hermitian (1e-12), unit trace (1e-10),
  /// eigenvalues >= -1e-10.
  static DensityOperator from_matrix(TensorSpace space, CMatrix matrix);
  /// |psi><psi| / <psi|psi>.
  static DensityOperator projector(const FockKet& ket);
  /// Skips the spectral check; used for operators built by exact algebra.
  static DensityOperator unchecked(TensorSpace space, CMatrix matrix);

  const TensorSpace& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  DensityOperator(TensorSpace space, CMatrix matrix);

  TensorSpace space_;
  CMatrix matrix_;
};

struct PartialTransposeMatrix {
  TensorSpace space;
  std::string transposed_factor;
  CMatrix matrix;
};

struct NegativityValue {
  double value = 0.0;
  std::vector<double> eigenvalues;  // ascending
};

/// Eigenvalues in (-kNegativityCutoff, 0) are treated as zero.
inline constexpr double kNegativityCutoff = 1e-12;

FockKet tensor_product(const FockKet& a, const FockKet& b);
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep);
/// Reduced state of a pure ket without forming the full projector.
DensityOperator partial_trace(const FockKet& ket, std::span<const std::string> keep);

PartialTransposeMatrix partial_transpose(const DensityOperator& rho, std::string_view factor);
CMatrix partial_transpose(const TensorSpace& space, const CMatrix& m, std::string_view factor);

/// Ascending eigenvalues of a Hermitian matrix (dense solver).
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// -sum of eigenvalues below -kNegativityCutoff.
NegativityValue negativity_from_spectrum(std::vector<double> eigenvalues);
NegativityValue negativity(const DensityOperator& rho, std::string_view factor);

}  // namespace unruh
