#pragma once

// Gauss-law generators, gauge-invariant sectors, gauge transformations.
//
// Abelian generators are G_n = sum_out E - sum_in E - Q_n, an integer-valued
// diagonal sum of single-site terms. For Z_N the physical generator is the
// unitary exp(-i delta G_n), so a static label q means eigenvalue e^{-i delta q}.
// SU(2) has three generators per vertex, G^a_n = sum_out L^a - sum_in R^a - Q^a_n.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lgtlab/model.hpp"

namespace lgt {

struct LocalTerm {
  int site = 0;
  LocalMatrix matrix;
};

struct GaussGenerator {
  int vertex = 0;
  int component = 0;  // 0 for Abelian; 0, 1, 2 for x, y, z
  std::vector<LocalTerm> terms;
  int cyclic = 0;  // N for Z_N (operator exp(-i delta sum terms)), 0 otherwise

  /// The generator as an operator: the sum of terms, or the Z_N unitary.
  OpSum op() const;
  /// The Hermitian sum of terms regardless of cyclic.
  OpSum hermitian_part() const;
};

/// Abelian: one generator per vertex. SU(2): three per vertex, vertex major.
std::vector<GaussGenerator> gauss_generators(const Model& model);

/// Generators assembled on a basis (full space by default).
std::vector<SparseOperator> gauss_operators(const Model& model, const StateBasis& basis);
std::vector<SparseOperator> gauss_operators(const Model& model);

class EmptySectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GaussSector {
  std::vector<int> charges;
  /// Product states spanning the sector (Abelian) or the G^z = 0 subspace
  /// containing it (SU(2)).
  StateBasis basis;
  /// SU(2): orthonormal columns in `basis` coordinates spanning the sector.
  /// Empty for Abelian sectors, whose basis is already the sector.
  DenseMatrix isometry;

  bool product_basis() const { return isometry.size() == 0; }
  std::int64_t dim() const { return product_basis() ? basis.size() : isometry.cols(); }
};

/// Abelian sector by constrained enumeration; SU(2) singlet sector (charges
/// must be empty or all zero) via the kernel of sum_n,a (G^a_n)^2.
/// Throws EmptySectorError when no state satisfies the constraints.
GaussSector sector_basis(const Model& model, const std::vector<int>& charges);

/// Enumerates all product states with sum_site values[site][digit] == target
/// (mod modulus if positive) for each constraint. Output sorted ascending.
struct DiagonalConstraint {
  std::vector<std::pair<int, std::vector<int>>> terms;  // (site, value per digit)
  int target = 0;
  int modulus = 0;
};
std::vector<std::uint64_t> enumerate_constrained(const ProductSpace& space,
                                                 const std::vector<DiagonalConstraint>& constraints);

/// Product of exp(i angle_g G_g) over all generators, factored into local
/// exponentials. `angles` has one entry per generator of gauss_generators.
/// For Z_N only multiples of delta give symmetries.
OpString gauge_transformation(const Model& model, const std::vector<double>& angles);
SparseOperator gauge_transformation_unitary(const Model& model, const std::vector<double>& angles,
                                            const StateBasis& basis);

/// Multiplies each link value by (-1)^{sum of origin coordinates}.
std::vector<double> canonical_sign_transform(const Lattice& lattice, const std::vector<double>& link_values);

}  // namespace lgt
