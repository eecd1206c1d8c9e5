#pragma once

// Operator algebra on tensor-product state spaces: symbolic sums of
// site-local matrix products (OpSum) and their assembly into sparse matrices
// over either the full product basis or a sorted subset of it.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lgtlab/kernels.hpp"

namespace lgt {

using LocalMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;

/// Mixed-radix product space. Site 0 is the most significant digit, so the
/// last site varies fastest in the product index.
class ProductSpace {
 public:
  ProductSpace() = default;
  explicit ProductSpace(std::vector<int> dims);

  int sites() const { return static_cast<int>(dims_.size()); }
  int dim(int site) const { return dims_[site]; }
  const std::vector<int>& dims() const { return dims_; }
  std::uint64_t stride(int site) const { return strides_[site]; }
  std::uint64_t size() const { return size_; }

  int digit(std::uint64_t index, int site) const {
    return static_cast<int>((index / strides_[site]) % static_cast<std::uint64_t>(dims_[site]));
  }
  void decode(std::uint64_t index, std::span<int> digits) const;
  std::uint64_t encode(std::span<const int> digits) const;

 private:
  std::vector<int> dims_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_ = 1;
};

struct SiteFactor {
  int site = 0;
  LocalMatrix matrix;
};

/// coeff * (product over sites of local matrices). Factors are kept sorted by
/// site with at most one factor per site; sites without a factor carry the
/// identity.
class OpString {
 public:
  OpString() = default;
  explicit OpString(cplx coeff) : coeff_(coeff) {}

  static OpString local(int site, LocalMatrix m, cplx coeff = 1.0);

  cplx coeff() const { return coeff_; }
  const std::vector<SiteFactor>& factors() const { return factors_; }

  OpString operator*(const OpString& rhs) const;
  OpString adjoint() const;
  OpString scaled(cplx s) const;

 private:
  cplx coeff_{1.0, 0.0};
  std::vector<SiteFactor> factors_;
};

class OpSum {
 public:
  OpSum() = default;
  OpSum(OpString term) { terms_.push_back(std::move(term)); }  // NOLINT

  const std::vector<OpString>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  OpSum& operator+=(const OpString& t);
  OpSum& operator+=(const OpSum& rhs);
  OpSum& operator-=(const OpSum& rhs);
  OpSum& operator*=(cplx s);

  OpSum adjoint() const;

  friend OpSum operator+(OpSum a, const OpSum& b) { return a += b; }
  friend OpSum operator-(OpSum a, const OpSum& b) { return a -= b; }
  friend OpSum operator*(const OpSum& a, const OpSum& b);
  friend OpSum operator*(cplx s, OpSum a) { return a *= s; }
  friend OpSum operator*(OpSum a, cplx s) { return a *= s; }

 private:
  std::vector<OpString> terms_;
};

/// Ordered list of product-space states spanning a (sub)space. A full basis
/// is represented implicitly.
class StateBasis {
 public:
  static StateBasis full(std::uint64_t size);
  static StateBasis subset(std::vector<std::uint64_t> states);  // sorted on construction

  std::int64_t size() const {
    return full_ ? static_cast<std::int64_t>(full_size_) : static_cast<std::int64_t>(states_->size());
  }
  bool is_full() const { return full_; }
  std::uint64_t state(std::int64_t i) const {
    return full_ ? static_cast<std::uint64_t>(i) : (*states_)[i];
  }
  std::optional<std::int64_t> find(std::uint64_t product) const;
  const std::vector<std::uint64_t>& states() const { return *states_; }

 private:
  bool full_ = true;
  std::uint64_t full_size_ = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> states_ =
      std::make_shared<std::vector<std::uint64_t>>();
};

class SparseOperator {
 public:
  using Matrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

  SparseOperator() = default;
  explicit SparseOperator(Matrix m, bool hermitian = false);

  static SparseOperator identity(std::int64_t n);
  static SparseOperator zero(std::int64_t n);
  static SparseOperator from_dense(const DenseMatrix& m, bool hermitian = false, double drop = 0.0);

  std::int64_t dim() const { return matrix_.rows(); }
  std::int64_t nonzeros() const { return matrix_.nonZeros(); }
  const Matrix& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }
  void set_hermitian(bool h) { hermitian_ = h; }

  CsrView view() const;
  void apply(std::span<const cplx> x, std::span<cplx> y) const;
  Vector apply(const Vector& x) const;

  SparseOperator adjoint() const;
  DenseMatrix dense() const;
  bool is_diagonal() const;
  Vector diagonal() const;
  /// max |A - A^dagger| over entries.
  double hermiticity_defect() const;

  SparseOperator& operator+=(const SparseOperator& rhs);
  SparseOperator& operator-=(const SparseOperator& rhs);
  SparseOperator& operator*=(cplx s);
  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  friend SparseOperator operator*(cplx s, SparseOperator a) { return a *= s; }
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);

 private:
  Matrix matrix_;
  bool hermitian_ = false;
};

double frobenius_norm(const SparseOperator& a);
double max_abs(const SparseOperator& a);

/// Frobenius norm of [a, b]. When either operand is diagonal the commutator
/// is evaluated entrywise without forming products.
double commutator_norm(const SparseOperator& a, const SparseOperator& b);

struct AssemblyStats {
  /// Squared norm of matrix elements whose row falls outside the target basis.
  double leaked_weight = 0.0;
};

/// Matrix of `op` on `basis`. Rows outside the basis are dropped and their
/// weight reported through `stats`.
SparseOperator assemble(const OpSum& op, const ProductSpace& space, const StateBasis& basis,
                        AssemblyStats* stats = nullptr);
SparseOperator assemble(const OpSum& op, const ProductSpace& space);

/// Dense exp(i * h) for a Hermitian local matrix.
LocalMatrix exp_i_hermitian(const LocalMatrix& h);

}  // namespace lgt
