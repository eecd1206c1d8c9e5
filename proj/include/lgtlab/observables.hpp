#pragma once

// Physics extraction on top of the model and solver layers: flux profiles,
// strong-coupling string states, static potentials with a string-tension fit,
// flux-tube dynamics, and the single-plaquette convergence and effective
// Hamiltonian studies.
//
// The strong-coupling string tension is (g^2/2) C2 with C2 = 1 for KS U(1)
// and spin-gauge (an m = 1 string costs L^2 = L_z^2 = 1 per link) and
// C2 = 3/4 for the SU(2) fundamental string.

#include <cstdint>
#include <string>
#include <vector>

#include "lgtlab/gauge.hpp"
#include "lgtlab/model.hpp"
#include "lgtlab/solver.hpp"

namespace lgt {

/// Lifts a sector-coordinate state to coefficients over sector.basis.
Vector to_product_basis(const GaussSector& sector, const Vector& state);

/// Per-link <L> (KS U(1)), <L_z> (spin-gauge), <m> (Z_N) or <Casimir> (SU(2)).
/// `state` holds coefficients over `basis`.
std::vector<double> flux_profile(const Model& model, const StateBasis& basis, const Vector& state);
std::vector<double> flux_profile(const Model& model, const GaussSector& sector, const Vector& state);

/// Per-vertex <Q_n> of the dynamical Abelian matter (zeros without matter).
std::vector<double> charge_density(const Model& model, const StateBasis& basis, const Vector& state);

/// Per-generator <G> for a state over `basis`; Abelian models only.
std::vector<double> gauss_expectations(const Model& model, const StateBasis& basis, const Vector& state);

double expectation(const SparseOperator& op, const Vector& state);

/// Vertex n + R along direction 0; throws LatticeError when it does not exist.
int string_endpoint(const Lattice& lattice, int n, int r);

/// Abelian static labels +1 at n and -1 at n + R (all zero for R = 0).
std::vector<int> string_charges(const Lattice& lattice, int n, int r);

struct StringState {
  GaussSector sector;
  Vector state;                // sector coordinates
  std::uint64_t product = 0;   // product index of the string (Abelian)
  double electric_energy = 0;  // <H_E>
  double electric_residual = 0;  // |H_E psi - E psi|
};

/// Straight flux string between charges at n and n + R along direction 0.
/// Abelian models build the product state with flux +1 on the R links and
/// the Dirac sea on matter sites. SU(2) models need static color sites on
/// both endpoints (R > 0); the string is the H_E ground state of the singlet
/// sector, which is unique and equals (prod U)|0>.
StringState strong_coupling_ground(const Model& model, int n, int r);

struct PotentialPoint {
  int r = 0;
  double energy = 0.0;
  std::int64_t dim = 0;
};

struct StaticPotentialCurve {
  std::vector<PotentialPoint> points;  // R ascending
  std::vector<int> fit_window;
  double sigma = 0.0;
  double offset = 0.0;
  double residual = 0.0;  // 2-norm of E - (sigma R + c) over the window
};

struct PotentialOptions {
  int origin = 0;              // vertex holding the positive charge
  bool conjugate = false;      // swap the charge signs (Abelian)
  EigsOptions eigs;
};

/// Sector ground energy for static charges at origin and origin + R, for each
/// R. The fit excludes R = 0 and the largest R unless fewer than two points
/// would remain, in which case it uses every R > 0 (or all R).
StaticPotentialCurve static_potential(const HamiltonianSpec& spec, const Lattice& lattice, std::vector<int> r_list,
                                      const PotentialOptions& options = {});
std::string potential_csv(const StaticPotentialCurve& curve);

struct FluxTubeReport {
  int origin = 0, r = 0;
  bool full_space = false;  // evolved on the full product space (else on the sector)
  std::vector<double> times;
  std::vector<std::vector<double>> flux;    // [time][link]
  std::vector<std::vector<double>> charge;  // [time][vertex]
  std::vector<double> energy;
  std::vector<double> survival;  // |<psi0|psi(t)>|^2
  double norm_drift = 0.0;
  double energy_drift = 0.0;
  double charge_drift = 0.0;
  double gauss_drift = 0.0;     // max over t, n of |<G_n>(t) - <G_n>(0)|
  double profile_drift = 0.0;   // max over t, l of |flux(t) - flux(0)|
  double interior_flux_min = 0.0;
  double halving_difference = 0.0;
  bool converged = true;
};

struct FluxTubeOptions {
  double t = 2.0;
  int steps = 40;
  int origin = -1;  // -1: chosen even vertex near the chain centre
  std::uint64_t full_space_limit = 1u << 17;
  EvolveOptions evolve;
};

/// Evolves the string state of a dynamical particle (even vertex occupied) at
/// origin and antiparticle (odd vertex emptied) at origin + R, R odd, under
/// the model Hamiltonian on a one-dimensional chain with staggered matter.
FluxTubeReport flux_tube_breaking_scenario(const HamiltonianSpec& spec, const Lattice& lattice, int r,
                                           const FluxTubeOptions& options = {});
std::string dynamics_csv(const FluxTubeReport& report);

/// Ground energy of the zero-charge sector of a single open plaquette.
double single_plaquette_ground(const HamiltonianSpec& spec, const EigsOptions& eigs = {});

struct ConvergenceRow {
  double g2 = 0.0;
  int ell = 0;
  double energy = 0.0;
  double gap = 0.0;  // |E(ell) - E_ref|
};

struct ConvergenceTable {
  int lambda_ref = 0;
  std::vector<double> g2;
  std::vector<double> reference;  // KS energy per g2
  std::vector<ConvergenceRow> rows;  // g2 major, ell ascending

  /// Gap strictly decreasing in ell for every g2.
  bool strictly_decreasing() const;
  /// gap(max ell) / gap(min ell) at the given g2.
  double ratio(double g2) const;
};

ConvergenceTable plaquette_convergence_study(const std::vector<double>& g2_list, const std::vector<int>& ell_list,
                                             int lambda_ref, const EigsOptions& eigs = {});
std::string convergence_csv(const ConvergenceTable& table);

struct ZnTrend {
  double g2 = 0.0;
  int lambda_ref = 0;
  double reference = 0.0;  // KS single-plaquette energy
  std::vector<int> n;
  std::vector<double> raw;     // Horn ground energy with lambda_zn = g^4 / delta^2
  std::vector<double> mapped;  // (raw + lambda_zn * links) / g^2
  std::vector<double> gap;     // |mapped - reference|

  bool monotone() const;  // gap strictly decreasing in N
};

ZnTrend zn_u1_trend(double g2, const std::vector<int>& n_list, int lambda_ref, const EigsOptions& eigs = {});

struct EffectiveRow {
  double lambda = 0.0;
  double coefficient = 0.0;  // plaquette coefficient in H_eff
  double unmatched = 0.0;
  double mismatch = 0.0;     // max |E_exact - E_eff| over the sector-sized low spectrum
  double hermiticity = 0.0;
  double leakage = 0.0;
};

struct EffectiveStudy {
  int ell = 1;
  double g2 = 1.0, eta = 0.0;
  std::vector<EffectiveRow> rows;
};

/// Single spin-gauge plaquette with penalty lambda, corner hopping eta and the
/// electric term as the gauge-invariant remainder; the exact low spectrum of
/// the penalized model is compared with second-order H_eff.
EffectiveStudy effective_plaquette_study(int ell, double g2, double eta, const std::vector<double>& lambdas,
                                         const EigsOptions& eigs = {});

}  // namespace lgt
