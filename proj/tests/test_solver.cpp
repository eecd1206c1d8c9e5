#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lgtlab/hamiltonian.hpp"
#include "lgtlab/solver.hpp"

using namespace lgt;

namespace {

SparseOperator ks_matter_chain() {
  HamiltonianSpec s;
  s.model = GaugeModel::ks_u1;
  s.truncation = 1;
  s.g2 = 1.1;
  s.epsilon = 0.6;
  s.mass = 0.4;
  s.matter = FermionScheme::staggered;
  const Model m(s, Lattice(1, {4}));
  return assemble_hamiltonian(m, StateBasis::full(m.space().size()));
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("small exact cases") {
    DenseMatrix d = DenseMatrix::Zero(4, 4);
    d.diagonal() << 3.0, -1.0, 2.0, 0.5;
    const EigenResult r = eigs(SparseOperator::from_dense(d, true), 2);
    CHECK(r.values[0] == doctest::Approx(-1.0));
    CHECK(r.values[1] == doctest::Approx(0.5));

    DenseMatrix x = DenseMatrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    const EigenResult rx = eigs(SparseOperator::from_dense(x, true), 2);
    CHECK(rx.values[0] == doctest::Approx(-1.0));
    CHECK(rx.values[1] == doctest::Approx(1.0));
  }

  TEST_CASE("Lanczos agrees with dense diagonalization") {
    const SparseOperator h = ks_matter_chain();
    const Eigen::VectorXd ref = testing::dense_spectrum(h.dense());
    EigsOptions opt;
    opt.dense_threshold = 0;
    const EigenResult r = eigs(h, 4, opt);
    CHECK_FALSE(r.dense);
    CHECK(r.max_residual < 1e-9);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(r.values[i] - ref[i]) < 1e-9);
  }

  TEST_CASE("spectrum is independent of the basis order") {
    const SparseOperator h = ks_matter_chain();
    const DenseMatrix d = h.dense();
    std::vector<int> perm(d.rows());
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::rotate(perm.begin(), perm.begin() + 17, perm.end());
    DenseMatrix p = DenseMatrix::Zero(d.rows(), d.cols());
    for (int i = 0; i < d.rows(); ++i) p(perm[i], i) = 1.0;
    EigsOptions opt;
    opt.dense_threshold = 0;
    const EigenResult a = eigs(h, 3, opt);
    const EigenResult b = eigs(SparseOperator::from_dense(p.adjoint() * d * p, true), 3, opt);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(a.values[i] - b.values[i]) < 1e-9);
  }

  TEST_CASE("U(1) plaquette at strong coupling") {
    HamiltonianSpec s;
    s.truncation = 2;
    s.g2 = 10.0;
    const Model m(s, Lattice(2, {2, 2}));
    const GaussSector sec = sector_basis(m, {0, 0, 0, 0});
    CHECK(sec.dim() == 5);
    const SparseOperator h = restrict_opsum(hamiltonian(m), m.space(), sec);
    const EigenResult r = eigs(h, 1);
    // second-order strong coupling: -2 (1/2g^2)^2 / (4 g^2 / 2)
    const double pert = -2.0 * std::pow(0.5 / s.g2, 2) / (2.0 * s.g2);
    CHECK(std::abs(r.values[0] - pert) < 1e-5);
    // the full-space ground state of H + penalty equals the sector result
    HamiltonianSpec sp = s;
    sp.lambda = 50.0;
    sp.terms.penalty = true;
    const Model mp(sp, Lattice(2, {2, 2}));
    const Eigen::VectorXd full = testing::dense_spectrum(assemble(hamiltonian(mp), mp.space()).dense());
    CHECK(std::abs(full[0] - r.values[0]) < 1e-12);
  }

  TEST_CASE("restriction of an SU(2) sector matches the penalized full space") {
    HamiltonianSpec s;
    s.model = GaugeModel::su2;
    s.truncation = 1;
    s.g2 = 1.5;
    const Model m(s, Lattice(2, {2, 2}));
    const GaussSector sec = sector_basis(m, {});
    const SparseOperator h = restrict_opsum(hamiltonian(m), m.space(), sec);
    CHECK(h.hermiticity_defect() < 1e-13);
    const Eigen::VectorXd sector = testing::dense_spectrum(h.dense());

    const SparseOperator hf = assemble(hamiltonian(m), m.space());
    SparseOperator pen = SparseOperator::zero(625);
    for (const auto& g : gauss_operators(m)) pen += g * g;
    const Eigen::VectorXd full = testing::dense_spectrum(hf.dense() + 40.0 * pen.dense());
    for (int i = 0; i < sector.size(); ++i) CHECK(std::abs(full[i] - sector[i]) < 1e-10);
  }

  TEST_CASE("time evolution") {
    const SparseOperator h = ks_matter_chain();
    const DenseMatrix d = h.dense();
    const Vector psi = testing::random_state(d.rows(), 5);
    const Trajectory tr = evolve(h, psi, 1.3, 13);
    CHECK(tr.converged);
    CHECK(tr.max_norm_deviation < 1e-12);
    const Vector ref = exp_i_hermitian(-1.3 * d) * psi;
    CHECK((tr.states.back() - ref).norm() < 1e-9);

    // semigroup: two half steps equal one full step
    const Vector half = krylov_expm(h, krylov_expm(h, psi, 0.65), 0.65);
    CHECK((half - krylov_expm(h, psi, 1.3)).norm() < 1e-10);

    // an eigenstate only picks up a phase
    const EigenResult r = eigs(h, 1);
    const Vector v = r.vectors.col(0);
    const Vector out = krylov_expm(h, v, 2.0);
    CHECK((out - std::exp(cplx(0, -2.0 * r.values[0])) * v).norm() < 1e-10);
  }

  TEST_CASE("second-order effective Hamiltonian on a toy model") {
    const double lam = 7.0, e1 = 0.3, e2 = -0.2;
    DenseMatrix h0 = DenseMatrix::Zero(3, 3);
    h0(2, 2) = lam;
    DenseMatrix v = DenseMatrix::Zero(3, 3);
    v(0, 2) = v(2, 0) = e1;
    v(1, 2) = v(2, 1) = e2;
    GaussSector sec;
    sec.basis = StateBasis::subset({0, 1});
    const auto rep = effective_second_order(SparseOperator::from_dense(h0, true), SparseOperator::from_dense(v, true),
                                            SparseOperator::zero(3), sec, lam);
    CHECK(rep.h_eff(0, 0).real() == doctest::Approx(-e1 * e1 / lam));
    CHECK(rep.h_eff(0, 1).real() == doctest::Approx(-e1 * e2 / lam));
    CHECK(rep.h_eff(1, 1).real() == doctest::Approx(-e2 * e2 / lam));
    CHECK(rep.leakage < 1e-15);

    h0(2, 2) = 0.0;
    CHECK_THROWS_AS(effective_second_order(SparseOperator::from_dense(h0, true), SparseOperator::from_dense(v, true),
                                           SparseOperator::zero(3), sec),
                    NumericalError);
  }

  TEST_CASE("pattern coefficient") {
    DenseMatrix pat = DenseMatrix::Zero(3, 3);
    pat(0, 1) = pat(1, 0) = 1.0;
    DenseMatrix h = 2.5 * pat;
    h(2, 2) = 4.0;
    const auto [c, rest] = pattern_coefficient(h, pat);
    CHECK(c == doctest::Approx(2.5));
    CHECK(rest < 1e-14);
  }
}
