#include "support.hpp"

#include <cmath>

#include "lgtlab/atommap.hpp"
#include "lgtlab/su2rep.hpp"

using namespace lgt;

namespace {

// Spectral projector of a Hermitian matrix onto eigenvalue `e`.
DenseMatrix eigenprojector(const DenseMatrix& h, double e) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  DenseMatrix p = DenseMatrix::Zero(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i)
    if (std::abs(es.eigenvalues()[i] - e) < 1e-9) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return p;
}

DenseMatrix spin_one_dot() {
  const double r = 1.0 / std::sqrt(2.0);
  DenseMatrix x = DenseMatrix::Zero(3, 3), y = DenseMatrix::Zero(3, 3), z = DenseMatrix::Zero(3, 3);
  x(0, 1) = x(1, 0) = x(1, 2) = x(2, 1) = r;
  y(0, 1) = cplx(0, -r);
  y(1, 0) = cplx(0, r);
  y(1, 2) = cplx(0, -r);
  y(2, 1) = cplx(0, r);
  z(0, 0) = 1.0;
  z(2, 2) = -1.0;
  return testing::kron(x, x) + testing::kron(y, y) + testing::kron(z, z);
}

const ScatteringCoefficients kDistinct = {{1, 0.4}, {3, -1.1}, {5, 0.7}, {7, 2.3}};

}  // namespace

TEST_SUITE("atommap") {
  TEST_CASE("scattering matrix elements") {
    // m_F must be conserved
    CHECK(std::abs(scattering_matrix_element(4, 2, 3, 1, 0, 1, kDistinct)) == 0.0);
    // the stretched state has F = 7/2 only
    CHECK(scattering_matrix_element(4, 4, 3, 3, 4, 3, kDistinct).real() == doctest::Approx(2.3));
    // equal coefficients give C times the identity
    const ScatteringCoefficients ones = {{1, 1.0}, {3, 1.0}, {5, 1.0}, {7, 1.0}};
    double worst = 0.0;
    for (int mb = -4; mb <= 4; mb += 2)
      for (int mf = -3; mf <= 3; mf += 2)
        for (int mb2 = -4; mb2 <= 4; mb2 += 2)
          for (int mf2 = -3; mf2 <= 3; mf2 += 2) {
            const double expect = (mb == mb2 && mf == mf2) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(scattering_matrix_element(4, mb2, 3, mf2, mb, mf, ones) - expect));
          }
    CHECK(worst < 1e-14);
  }

  TEST_CASE("channel table") {
    const HyperfineLevelScheme scheme;
    const ChannelTable t = enumerate_channels(scheme, kDistinct);
    CHECK_FALSE(t.degenerate);
    CHECK(t.channels.size() == 60);
    int allowed = 0;
    for (const auto& c : t.channels) {
      CHECK(c.tmb + c.tmf == c.tmb_out + c.tmf_out);
      if (c.tmb == c.tmb_out && c.tmf == c.tmf_out) CHECK(c.allowed_by_omega);
      allowed += c.allowed_by_omega;
    }
    CHECK(allowed > 0);
    CHECK(allowed < 60);
    HyperfineLevelScheme bad;
    bad.omega2 = bad.omega1;
    CHECK(enumerate_channels(bad, kDistinct).degenerate);
    bad.omega2 = 2.0 * bad.omega1;
    CHECK(enumerate_channels(bad, kDistinct).degenerate);
  }

  TEST_CASE("bosonic M reproduces the truncated rotation matrix") {
    for (LinkMapping lm : {LinkMapping::even, LinkMapping::odd}) {
      const MVerification v = build_M_and_verify(lm);
      CHECK(v.max_deviation < 1e-12);
      CHECK(v.number_leak == 0.0);
    }
    CHECK(m_interaction_gauge_defect() < 1e-12);
  }

  TEST_CASE("F = 1 projectors") {
    const F1Projectors p = f1_projectors(1.0, 1.0, 1.0);
    const DenseMatrix ff = spin_one_dot();
    CHECK(testing::max_abs(p.p0 - eigenprojector(ff, -2.0)) < 1e-13);
    CHECK(testing::max_abs(p.p2 - eigenprojector(ff, 1.0)) < 1e-13);
    CHECK(p.p0.trace().real() == doctest::Approx(1.0));
    CHECK(p.p2.trace().real() == doctest::Approx(5.0));
    CHECK(testing::max_abs(p.p0 * p.p2) < 1e-14);
    CHECK(testing::max_abs(p.p2 * p.p2 - p.p2) < 1e-14);
    // the unsymmetrized forms disagree only on the antisymmetric F = 1 states
    const DenseMatrix p1 = eigenprojector(ff, -1.0);
    CHECK(testing::max_abs(p.p2_printed - p.p2 - (p.p2_printed * p1)) < 1e-13);
    CHECK(testing::max_abs(p.p2_printed * p1) > 0.1);
    CHECK(p.g2 == 0.0);
    CHECK(f1_projectors(1.0, 2.0, 1.0).g2 > 0.0);
  }

  TEST_CASE("Schwinger-boson link interaction") {
    const SchwingerInteractionCheck s = schwinger_interaction_check(3);
    CHECK(s.identity_deviation < 1e-12);
    CHECK(s.number_commutator < 1e-12);
    CHECK(s.ell_commutator < 1e-12);
    CHECK(s.allowed_example_conserves);
    CHECK(s.forbidden_example_violates);
    CHECK(gip_channel_allowed(1, -1, 1, -1) == false);
    CHECK(gip_channel_allowed(1, 1, -1, -1));
  }

  TEST_CASE("coefficient fit is finite and reports its residual") {
    const CoefficientFit f = fit_scattering_coefficients(HyperfineLevelScheme{});
    CHECK(f.channels > 0);
    CHECK(f.coefficients.size() == 4);
    for (const auto& [k, v] : f.coefficients) CHECK(std::isfinite(v));
    CHECK(std::isfinite(f.residual));
  }
}
