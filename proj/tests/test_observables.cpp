#include "support.hpp"

#include <cmath>

#include "lgtlab/hamiltonian.hpp"
#include "lgtlab/observables.hpp"

using namespace lgt;

namespace {

HamiltonianSpec electric_only(GaugeModel m, int trunc, double g2) {
  HamiltonianSpec s;
  s.model = m;
  s.truncation = trunc;
  s.g2 = g2;
  s.terms.magnetic = false;
  return s;
}

}  // namespace

TEST_SUITE("observables") {
  TEST_CASE("string flux profile") {
    const Model m(electric_only(GaugeModel::ks_u1, 1, 1.0), Lattice(1, {5}));
    const StringState s = strong_coupling_ground(m, 1, 2);
    const auto f = flux_profile(m, s.sector, s.state);
    CHECK(f == std::vector<double>{0, 1, 1, 0});
    CHECK(s.electric_residual < 1e-15);
    CHECK(strong_coupling_ground(m, 1, 0).electric_energy == 0.0);
    CHECK_THROWS_AS(strong_coupling_ground(m, 1, 4), LatticeError);
  }

  TEST_CASE("profile is unchanged by a gauge transformation") {
    HamiltonianSpec s = electric_only(GaugeModel::ks_u1, 1, 1.0);
    s.matter = FermionScheme::staggered;
    const Model m(s, Lattice(1, {4}));
    const StringState st = strong_coupling_ground(m, 0, 3);
    const Vector psi = to_product_basis(st.sector, st.state);
    const auto before = flux_profile(m, st.sector.basis, psi);
    const SparseOperator u = gauge_transformation_unitary(m, {0.3, -1.2, 2.2, 0.8}, st.sector.basis);
    const Vector moved = u.apply(psi);
    CHECK(flux_profile(m, st.sector.basis, moved) == before);
    CHECK(std::abs(std::abs(moved.dot(psi)) - 1.0) < 1e-14);
    for (double q : charge_density(m, st.sector.basis, psi)) CHECK(std::abs(q) < 1e-15);
  }

  TEST_CASE("strong-coupling string energies") {
    const Model u1(electric_only(GaugeModel::ks_u1, 1, 2.0), Lattice(1, {4}));
    CHECK(strong_coupling_ground(u1, 0, 3).electric_energy == doctest::Approx(3.0));

    const Model su2(electric_only(GaugeModel::su2, 1, 2.0), Lattice(1, {3}), {0, 2});
    const StringState s = strong_coupling_ground(su2, 0, 2);
    CHECK(s.electric_energy == doctest::Approx(1.5));
    const auto cas = flux_profile(su2, s.sector, s.state);
    CHECK(cas[0] == doctest::Approx(0.75));
    CHECK(cas[1] == doctest::Approx(0.75));
  }

  TEST_CASE("static potential is linear at strong coupling") {
    const Lattice chain(1, {6});
    for (auto [m, t, c2] : {std::tuple{GaugeModel::ks_u1, 2, 1.0}, std::tuple{GaugeModel::spin_gauge, 1, 1.0}}) {
      const auto curve = static_potential(electric_only(m, t, 1.4), chain, {0, 1, 2, 3, 4, 5});
      CHECK(curve.sigma == doctest::Approx(0.7 * c2));
      CHECK(curve.residual < 1e-12);
      PotentialOptions conj;
      conj.conjugate = true;
      const auto flipped = static_potential(electric_only(m, t, 1.4), chain, {0, 1, 2, 3, 4, 5}, conj);
      for (std::size_t i = 0; i < curve.points.size(); ++i)
        CHECK(flipped.points[i].energy == doctest::Approx(curve.points[i].energy));
    }
    const auto su2 = static_potential(electric_only(GaugeModel::su2, 1, 1.4), Lattice(1, {4}), {0, 1, 2, 3});
    CHECK(su2.sigma == doctest::Approx(0.7 * 0.75));
    CHECK(potential_csv(su2).rfind("R,E,dim\n", 0) == 0);
  }

  TEST_CASE("heavy matter barely screens at strong coupling") {
    HamiltonianSpec s = electric_only(GaugeModel::ks_u1, 1, 10.0);
    s.matter = FermionScheme::staggered;
    s.epsilon = 0.5;
    s.mass = 20.0;
    const auto curve = static_potential(s, Lattice(1, {6}), {0, 1, 2, 3, 4, 5});
    CHECK(std::abs(curve.sigma - 5.0) < 0.05 * 5.0);
  }

  TEST_CASE("flux-tube dynamics conserves what it should") {
    HamiltonianSpec s;
    s.model = GaugeModel::ks_u1;
    s.truncation = 1;
    s.matter = FermionScheme::staggered;
    s.g2 = 1.0;
    s.epsilon = 1.0;
    s.mass = 1.0;
    FluxTubeOptions opt;
    opt.t = 1.0;
    opt.steps = 10;
    const Lattice chain(1, {6});
    const FluxTubeReport r = flux_tube_breaking_scenario(s, chain, 3, opt);
    CHECK(r.converged);
    CHECK(r.norm_drift < 1e-10);
    CHECK(r.energy_drift < 1e-10);
    CHECK(r.charge_drift < 1e-10);
    CHECK(r.gauss_drift < 1e-10);
    CHECK(r.survival.front() == doctest::Approx(1.0));

    s.epsilon = 0.0;
    const FluxTubeReport frozen = flux_tube_breaking_scenario(s, chain, 3, opt);
    CHECK(frozen.profile_drift < 1e-12);

    // heavier matter keeps the string intact for longer
    s.epsilon = 0.3;
    s.mass = 5.0;
    const FluxTubeReport heavy = flux_tube_breaking_scenario(s, chain, 3, opt);
    s.mass = 0.1;
    const FluxTubeReport light = flux_tube_breaking_scenario(s, chain, 3, opt);
    CHECK(heavy.survival.back() > 0.9);
    CHECK(heavy.survival.back() > light.survival.back());
    CHECK_THROWS(flux_tube_breaking_scenario(s, chain, 2, opt));
  }

  TEST_CASE("plaquette studies") {
    const ConvergenceTable t = plaquette_convergence_study({0.5, 1.0}, {1, 2, 3}, 6);
    CHECK(t.strictly_decreasing());
    HamiltonianSpec strong;
    strong.model = GaugeModel::spin_gauge;
    strong.truncation = 1;
    strong.g2 = 1e4;
    CHECK(std::abs(single_plaquette_ground(strong)) < 1e-6);

    const ZnTrend z = zn_u1_trend(1.0, {3, 5, 7}, 6);
    CHECK(z.monotone());

    const EffectiveStudy e = effective_plaquette_study(1, 1.0, 1.0, {20.0, 80.0});
    CHECK(e.rows[0].coefficient == doctest::Approx(-2.0 / 20.0));
    CHECK(e.rows[1].coefficient == doctest::Approx(-2.0 / 80.0));
    CHECK(e.rows[1].mismatch < e.rows[0].mismatch);
    CHECK(e.rows[0].leakage < 1e-14);
  }
}
