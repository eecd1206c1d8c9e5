#include "support.hpp"

#include <cmath>
#include <map>

#include "lgtlab/su2rep.hpp"

using namespace lgt;

namespace {

// Clebsch-Gordan table built numerically: highest-weight states by
// orthogonalization, the rest by repeated lowering. Condon-Shortley phase:
// <j1 j1; j2 J-j1 | J J> > 0.
struct NumericCG {
  int tj1, tj2;
  int d1, d2;
  std::map<std::pair<int, int>, Eigen::VectorXd> states;  // (tJ, tM) -> coefficients over (a1, a2)

  NumericCG(int a, int b) : tj1(a), tj2(b), d1(a + 1), d2(b + 1) {
    const int n = d1 * d2;
    auto tm1 = [&](int i) { return tj1 - 2 * (i / d2); };
    auto tm2 = [&](int i) { return tj2 - 2 * (i % d2); };
    Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const int m1 = tm1(i), m2 = tm2(i);
      if (m1 > -tj1) lower(i + d2, i) = 0.5 * std::sqrt((tj1 + m1) * (tj1 - m1 + 2.0));
      if (m2 > -tj2) lower(i + 1, i) = 0.5 * std::sqrt((tj2 + m2) * (tj2 - m2 + 2.0));
    }
    for (int tJ = tj1 + tj2; tJ >= std::abs(tj1 - tj2); tJ -= 2) {
      Eigen::VectorXd best;
      double best_norm = 0.0;
      for (int i = 0; i < n; ++i) {
        if (tm1(i) + tm2(i) != tJ) continue;
        Eigen::VectorXd v = Eigen::VectorXd::Unit(n, i);
        for (const auto& [key, s] : states)
          if (key.second == tJ) v -= s.dot(v) * s;
        if (v.norm() > best_norm) {
          best_norm = v.norm();
          best = v;
        }
      }
      best /= best.norm();
      int anchor = 0;
      for (int i = 0; i < n; ++i)
        if (tm1(i) == tj1 && tm2(i) == tJ - tj1) anchor = i;
      if (best[anchor] < 0) best = -best;
      Eigen::VectorXd v = best;
      for (int tM = tJ; tM >= -tJ; tM -= 2) {
        states[{tJ, tM}] = v;
        if (tM > -tJ) {
          v = lower * v;
          v /= 0.5 * std::sqrt((tJ + tM) * (tJ - tM + 2.0));
        }
      }
    }
  }

  double operator()(int tm1, int tm2, int tJ, int tM) const {
    const auto it = states.find({tJ, tM});
    if (it == states.end() || tm1 + tm2 != tM) return 0.0;
    return it->second[((tj1 - tm1) / 2) * d2 + (tj2 - tm2) / 2];
  }
};

DenseMatrix comm(const DenseMatrix& a, const DenseMatrix& b) { return a * b - b * a; }

}  // namespace

TEST_SUITE("su2rep") {
  TEST_CASE("Clebsch-Gordan closed forms") {
    CHECK(cg(1.0, 0.0, 0.0, 0.0, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(cg(0.5, 0.5, 0.5, 0.5, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(cg(0.5, 0.5, 0.5, -0.5, 0.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(cg(0.5, -0.5, 0.5, 0.5, 0.0, 0.0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(cg2(2, 2, 2, 2, 2, 4) == 0.0);  // M out of range
    CHECK(cg2(2, 0, 2, 0, 6, 0) == 0.0);  // triangle violated
  }

  TEST_CASE("Racah formula agrees with the lowering-operator construction") {
    double worst = 0.0;
    for (int tj1 = 0; tj1 <= 4; ++tj1)
      for (int tj2 = 0; tj2 <= 4; ++tj2) {
        const NumericCG ref(tj1, tj2);
        for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
          for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
            for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
              const int tM = tm1 + tm2;
              if (std::abs(tM) > tJ) continue;
              worst = std::max(worst, std::abs(cg2(tj1, tm1, tj2, tm2, tJ, tM) - ref(tm1, tm2, tJ, tM)));
            }
      }
    CHECK(worst < 1e-13);
  }

  TEST_CASE("CG table matches direct evaluation") {
    const CGTable t(4);
    CHECK(t(3, 1, 2, -2, 3, -1) == doctest::Approx(cg2(3, 1, 2, -2, 3, -1)));
    CHECK(t(6, 2, 4, 0, 8, 2) == doctest::Approx(cg2(6, 2, 4, 0, 8, 2)));  // beyond the cap
  }

  TEST_CASE("link space algebra") {
    const SU2LinkSpace s(1);
    CHECK(s.local_dim() == 5);
    const auto& l = s.left();
    const auto& r = s.right();
    const cplx i(0, 1);
    CHECK(testing::max_abs(comm(l[0], l[1]) + i * l[2]) < 1e-14);
    CHECK(testing::max_abs(comm(l[1], l[2]) + i * l[0]) < 1e-14);
    CHECK(testing::max_abs(comm(r[0], r[1]) - i * r[2]) < 1e-14);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(testing::max_abs(comm(l[a], r[b])) < 1e-14);
    const DenseMatrix c = s.left_casimir();
    for (int tm : {1, -1})
      for (int tmp : {1, -1}) {
        const int k = s.index(1, tm, tmp);
        CHECK(c(k, k).real() == doctest::Approx(0.75));
      }
    CHECK(testing::max_abs(s.left_casimir() - s.right_casimir()) < 1e-14);
  }

  TEST_CASE("truncated rotation matrix on the singlet") {
    const SU2LinkSpace s(1);
    const TruncatedRotationMatrix u = truncated_rotation_matrix(s, 1);
    const int vac = s.index(0, 0, 0);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const Vector out = u(a, b).col(vac);
        const int k = s.index(1, 1 - 2 * a, 1 - 2 * b);
        CHECK(std::abs(out[k] - 1.0 / std::sqrt(2.0)) < 1e-14);
        CHECK(std::abs(out.norm() - 1.0 / std::sqrt(2.0)) < 1e-14);
      }
  }

  TEST_CASE("trace identity holds with a single measured defect") {
    const SU2LinkSpace s(1);
    const TruncatedRotationMatrix u = truncated_rotation_matrix(s, 1);
    DenseMatrix tr = DenseMatrix::Zero(5, 5);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) tr += u(a, b).adjoint() * u(a, b);
    const int vac = s.index(0, 0, 0);
    CHECK(std::abs(tr(vac, vac) - 2.0) < 1e-14);
    const TraceDefect td = measure_trace_defect(s, u);
    CHECK(td.residual < 1e-12);
    CHECK(td.f == doctest::Approx(1.5));
  }

  TEST_CASE("Schwinger bosons") {
    const SchwingerU1 sb = schwinger_u1(3);
    const int in = sb.index(1, 1), out = sb.index(2, 0);
    CHECK(std::abs(sb.lplus(out, in) - std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(sb.ell(in, in) - 1.0) < 1e-14);
    CHECK(std::abs(sb.lz(in, in)) < 1e-14);
    CHECK(sb.lplus.col(sb.index(2, 0)).norm() < 1e-14);
  }

  TEST_CASE("prepotential decomposition") {
    const Prepotential p = prepotential_decomposition(2);
    const cplx i(0, 1);
    // The per-mode Fock cutoff breaks the algebra only where N_L exceeds it.
    const DenseMatrix c = comm(p.left[0], p.left[1]) + i * p.left[2];
    for (int k = 0; k < p.local_dim; ++k)
      if (p.n_left(k, k).real() <= p.n_max) CHECK(c.col(k).norm() < 1e-12);
    const DenseMatrix diff = p.n_left - p.n_right;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(testing::max_abs(comm(diff, p.u[a][b])) < 1e-12);

    // U|vac> produces orthogonal states of weight 1/sqrt 2, as the CG construction does.
    const int vac = p.index(0, 0, 0, 0);
    std::vector<Vector> outs;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        outs.push_back(p.u[a][b].col(vac));
        CHECK(outs.back().norm() == doctest::Approx(1.0 / std::sqrt(2.0)));
      }
    for (std::size_t x = 0; x < outs.size(); ++x)
      for (std::size_t y = x + 1; y < outs.size(); ++y) CHECK(std::abs(outs[x].dot(outs[y])) < 1e-14);
  }
}
