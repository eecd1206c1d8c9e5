#include "support.hpp"

#include <cmath>

#include "lgtlab/lattice.hpp"
#include "lgtlab/linkalg.hpp"

using namespace lgt;

TEST_SUITE("lattice") {
  TEST_CASE("counts") {
    const Lattice chain(1, {4});
    CHECK(chain.vertex_count() == 4);
    CHECK(chain.link_count() == 3);
    CHECK(chain.plaquette_count() == 0);

    const Lattice square(2, {2, 2});
    CHECK(square.vertex_count() == 4);
    CHECK(square.link_count() == 4);
    CHECK(square.plaquette_count() == 1);

    const Lattice torus(2, {3, 3}, Boundary::periodic);
    CHECK(torus.vertex_count() == 9);
    CHECK(torus.link_count() == 18);
    CHECK(torus.plaquette_count() == 9);
  }

  TEST_CASE("out of scope shapes are rejected") {
    CHECK_THROWS_AS(Lattice(3, {2, 2, 2}), LatticeError);
    CHECK_THROWS_AS(Lattice(1, {1}), LatticeError);
    CHECK_THROWS_AS(Lattice(2, {2}), LatticeError);
  }

  TEST_CASE("staggered sign") {
    CHECK(staggered_sign({0, 0}) == 1);
    CHECK(staggered_sign({1, 0}) == -1);
    CHECK(staggered_sign({1, 1}) == 1);
  }

  TEST_CASE("each link borders two plaquettes on a torus, one on an open square") {
    for (Boundary b : {Boundary::periodic, Boundary::open}) {
      const Lattice lat(2, {3, 3}, b);
      std::vector<int> uses(lat.link_count(), 0);
      for (const auto& p : lat.plaquettes())
        for (int l : p.links) ++uses[l];
      for (int l = 0; l < lat.link_count(); ++l) {
        if (b == Boundary::periodic) {
          CHECK(uses[l] == 2);
        } else {
          CHECK(uses[l] >= 1);
          CHECK(uses[l] <= 2);
        }
      }
    }
  }

  TEST_CASE("plaquette traversal closes") {
    const Lattice lat(2, {3, 3}, Boundary::periodic);
    for (const auto& p : lat.plaquettes()) {
      int v = p.base_vertex;
      for (int i = 0; i < 4; ++i) {
        const Link& l = lat.link(p.links[i]);
        CHECK((p.forward[i] ? l.origin : l.target) == v);
        v = p.forward[i] ? l.target : l.origin;
      }
      CHECK(v == p.base_vertex);
    }
  }
}

TEST_SUITE("linkalg") {
  TEST_CASE("truncated U(1) ladder") {
    const LinkOperatorSet u = u1_ops(1);
    CHECK(u.local_dim == 3);
    // basis index i carries m = i - 1
    CHECK(std::abs(u.electric(1, 1)) == 0.0);
    CHECK(u.raise(2, 1) == cplx(1.0));
    CHECK(u.raise.col(2).norm() == 0.0);
    // [L, U] = U away from the truncation edge
    const DenseMatrix c = u.electric * u.raise - u.raise * u.electric;
    CHECK(testing::max_abs(c - u.raise) < 1e-15);
  }

  TEST_CASE("spin-gauge normalized ladder") {
    const LinkOperatorSet s = spin_gauge_ops(1);
    const DenseMatrix up = s.link_operator();
    CHECK(std::abs(up(1, 0) - 1.0) < 1e-15);  // |1,-1> -> |1,0>, sqrt(1 - m(m+1)/l(l+1)) = 1
    CHECK(up.col(2).norm() == 0.0);
    for (int l : {1, 2, 3})
      for (int i = 0; i < 2 * l + 1; ++i) CHECK(spin_gauge_ops(l).electric(i, i).real() == i - l);
  }

  TEST_CASE("Z_N clock and shift") {
    const LinkOperatorSet z = zn_ops(3);
    const double delta = 2.0 * std::acos(-1.0) / 3.0;
    CHECK(z.delta == doctest::Approx(delta));
    // index 2 is m = 1
    CHECK(std::abs(z.clock(2, 2) - std::exp(cplx(0, delta))) < 1e-15);
    // Q|-1> = |1>
    CHECK(std::abs(z.shift(2, 0) - 1.0) < 1e-15);
    const DenseMatrix lhs = z.clock.adjoint() * z.shift * z.clock;
    CHECK(testing::max_abs(lhs - std::exp(cplx(0, delta)) * z.shift) < 1e-14);
  }
}
