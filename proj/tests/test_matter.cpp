#include "support.hpp"

#include "lgtlab/matter.hpp"

using namespace lgt;
using testing::kron;

namespace {

// Jordan-Wigner annihilators built directly from 2x2 blocks, mode 0 leftmost.
std::vector<DenseMatrix> jw_reference(int modes) {
  DenseMatrix a = DenseMatrix::Zero(2, 2), z = DenseMatrix::Zero(2, 2), id = DenseMatrix::Identity(2, 2);
  a(0, 1) = 1.0;
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  std::vector<DenseMatrix> out;
  for (int k = 0; k < modes; ++k) {
    DenseMatrix m = DenseMatrix::Identity(1, 1);
    for (int j = 0; j < modes; ++j) m = kron(m, j < k ? z : (j == k ? a : id));
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_SUITE("matter") {
  TEST_CASE("fermion operators match an explicit Jordan-Wigner construction") {
    const Lattice chain(1, {3});
    const FermionOps ops = fermion_ops(chain, FermionScheme::staggered);
    const auto ref = jw_reference(3);
    REQUIRE(ops.annihilators.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(testing::max_abs(ops.annihilators[k].dense() - ref[k]) < 1e-15);

    const Lattice square(2, {2, 2});
    const FermionOps two = fermion_ops(square, FermionScheme::su2fundamental);
    const auto ref8 = jw_reference(8);
    for (int k = 0; k < 8; ++k) CHECK(testing::max_abs(two.annihilators[k].dense() - ref8[k]) < 1e-15);
  }

  TEST_CASE("canonical anticommutation relations") {
    const Lattice square(2, {2, 2});
    const FermionOps ops = fermion_ops(square, FermionScheme::naive2d);
    const int n = static_cast<int>(ops.annihilators.size());
    CHECK(n == 8);
    const SparseOperator id = SparseOperator::identity(ops.space.size());
    const SparseOperator zero = SparseOperator::zero(ops.space.size());
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const SparseOperator& ci = ops.annihilators[i];
        const SparseOperator& cj = ops.annihilators[j];
        const SparseOperator& cdj = ops.creators[j];
        worst = std::max(worst, max_abs(ci * cdj + cdj * ci - (i == j ? id : zero)));
        worst = std::max(worst, max_abs(ci * cj + cj * ci));
      }
    CHECK(worst < 1e-14);
  }

  TEST_CASE("hopping sign on two modes") {
    const Lattice chain(1, {2});
    const FermionOps ops = fermion_ops(chain, FermionScheme::staggered);
    const DenseMatrix hop = ops.creators[0].dense() * ops.annihilators[1].dense();
    // |01> (index 1) -> |10> (index 2) with no string crossed
    CHECK(std::abs(hop(2, 1) - 1.0) < 1e-15);
    CHECK(hop.norm() == doctest::Approx(1.0));
    // the reverse hop, c1^dag c0, is also +1 here
    const DenseMatrix back = ops.creators[1].dense() * ops.annihilators[0].dense();
    CHECK(std::abs(back(1, 2) - 1.0) < 1e-15);
  }

  TEST_CASE("staggered charges") {
    const Lattice chain(1, {4});
    const FermionLayout layout = make_fermion_layout(chain, FermionScheme::staggered, 0);
    CHECK(abelian_charge_values(layout, chain, 0) == std::vector<int>{0, 1});
    CHECK(abelian_charge_values(layout, chain, 1) == std::vector<int>{-1, 0});
    const ProductSpace space({2, 2, 2, 2});
    const DenseMatrix q1 = assemble(staggered_charge(layout, chain, 1), space).dense();
    // vertex 1 empty, others empty: index 0
    CHECK(q1(0, 0).real() == -1.0);
    CHECK(q1(4, 4).real() == 0.0);
  }

  TEST_CASE("SU(2) matter charges") {
    const LocalMatrix qz = su2_charge_local(2);
    // local states: 0 empty, 1 = second species, 2 = first species, 3 = both
    CHECK(qz(0, 0).real() == 0.0);
    CHECK(qz(3, 3).real() == doctest::Approx(0.0));
    CHECK(qz(2, 2).real() == doctest::Approx(0.5));
    CHECK(qz(1, 1).real() == doctest::Approx(-0.5));
    const cplx i(0, 1);
    const LocalMatrix qx = su2_charge_local(0), qy = su2_charge_local(1);
    CHECK(testing::max_abs(qx * qy - qy * qx - i * qz) < 1e-15);
    // singlet and doubly occupied states carry zero Casimir
    const LocalMatrix c = qx * qx + qy * qy + qz * qz;
    CHECK(std::abs(c(0, 0)) < 1e-15);
    CHECK(std::abs(c(3, 3)) < 1e-15);
    CHECK(c(1, 1).real() == doctest::Approx(0.75));
  }

  TEST_CASE("Dirac sea is charge neutral") {
    const Lattice chain(1, {4});
    const std::uint64_t sea = dirac_sea_state(chain, FermionScheme::staggered);
    const FermionLayout layout = make_fermion_layout(chain, FermionScheme::staggered, 0);
    const ProductSpace space({2, 2, 2, 2});
    for (int v = 0; v < 4; ++v) {
      const DenseMatrix q = assemble(staggered_charge(layout, chain, v), space).dense();
      CHECK(std::abs(q(sea, sea)) < 1e-15);
    }
    const DenseMatrix n = assemble(total_number(layout), space).dense();
    CHECK(n(sea, sea).real() == 2.0);

    const Lattice square(2, {2, 2});
    const FermionLayout su2 = make_fermion_layout(square, FermionScheme::su2fundamental, 0);
    const std::uint64_t sea2 = dirac_sea_state(square, FermionScheme::su2fundamental);
    const DenseMatrix n2 = assemble(total_number(su2), ProductSpace({4, 4, 4, 4})).dense();
    CHECK(n2(sea2, sea2).real() == 4.0);
  }
}
