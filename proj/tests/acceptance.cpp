// One line per acceptance criterion; exits non-zero if any hard check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "lgtlab/atommap.hpp"
#include "lgtlab/hamiltonian.hpp"
#include "lgtlab/observables.hpp"
#include "lgtlab/su2rep.hpp"

#ifndef LGTLAB_CLI_PATH
#error "LGTLAB_CLI_PATH must point at the lgtlab executable"
#endif

using namespace lgt;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int n, const std::string& title, bool pass, const std::string& detail) {
  std::printf("criterion %d %s: %s (%s)\n", n, title.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

void gauge_invariance() {
  struct Family {
    GaugeModel model;
    int truncation;
    FermionScheme matter;
  };
  const std::vector<Family> families = {
      {GaugeModel::ks_u1, 1, FermionScheme::staggered},      {GaugeModel::ks_u1, 2, FermionScheme::staggered},
      {GaugeModel::spin_gauge, 1, FermionScheme::staggered}, {GaugeModel::spin_gauge, 2, FermionScheme::staggered},
      {GaugeModel::spin_gauge, 3, FermionScheme::staggered}, {GaugeModel::zn, 3, FermionScheme::staggered},
      {GaugeModel::zn, 5, FermionScheme::staggered},         {GaugeModel::su2, 1, FermionScheme::su2fundamental},
  };
  double worst = 0.0;
  int systems = 0;
  for (const auto& f : families)
    for (int dim : {2, 1})
      for (bool matter : {false, true}) {
        HamiltonianSpec s;
        s.model = f.model;
        s.truncation = f.truncation;
        s.g2 = 0.8;
        s.epsilon = 1.1;
        s.mass = 0.3;
        s.lambda_zn = 1.2;
        s.matter = matter ? f.matter : FermionScheme::none;
        const Model model(s, dim == 2 ? Lattice(2, {2, 2}) : Lattice(1, {4}));
        const SparseOperator h = assemble(hamiltonian(model), model.space());
        for (const auto& g : gauss_operators(model)) worst = std::max(worst, commutator_norm(h, g));
        ++systems;
      }
  report(1, "gauge invariance", worst < 1e-10, std::to_string(systems) + " systems, max |[H,G]| = " + fmt("%.2e", worst));
}

void string_tension() {
  struct Case {
    GaugeModel model;
    int truncation;
    double c2;
    int length;
  };
  const std::vector<Case> cases = {{GaugeModel::ks_u1, 2, 1.0, 6}, {GaugeModel::spin_gauge, 2, 1.0, 6},
                                   {GaugeModel::su2, 1, 0.75, 4}};
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
  for (const auto& c : cases) {
    HamiltonianSpec s;
    s.model = c.model;
    s.truncation = c.truncation;
    s.g2 = 1.6;
    s.terms.magnetic = false;
    std::vector<int> r;
    for (int i = 0; i < c.length; ++i) r.push_back(i);
    const auto t0 = std::chrono::steady_clock::now();
    const StaticPotentialCurve curve = static_potential(s, Lattice(1, {c.length}), r);
    seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double err = std::abs(curve.sigma - 0.5 * s.g2 * c.c2);
    pass = pass && err < 1e-10 && curve.residual < 1e-10;
    detail += to_string(c.model) + " sigma " + fmt("%.6f", curve.sigma) + ", ";
  }
  pass = pass && seconds < 5.0;
  report(2, "string tension", pass, detail + "runtime " + fmt("%.2f s", seconds));
}

void truncation_convergence() {
  const ConvergenceTable t = plaquette_convergence_study({0.5, 1.0, 2.0}, {1, 2, 3}, 8);
  const double ratio = t.ratio(1.0);
  std::string detail = "gaps strictly decreasing: " + std::string(t.strictly_decreasing() ? "yes" : "no") +
                       "; l=3/l=1 ratio at g2=1 " + fmt("%.4f", ratio);
  if (ratio > 0.5) detail += ", above the 0.5 soft threshold (warning)";
  report(3, "truncation convergence", t.strictly_decreasing(), detail);
}

void zn_limit() {
  const ZnTrend z = zn_u1_trend(1.0, {3, 5, 7, 9}, 8);
  std::string detail = "gaps";
  for (double g : z.gap) detail += " " + fmt("%.3e", g);
  report(4, "Z_N to U(1)", z.monotone(), detail);
}

void su2_machinery() {
  const SU2LinkSpace space(1);
  const TraceDefect td = measure_trace_defect(space, truncated_rotation_matrix(space, 1));
  const double even = build_M_and_verify(LinkMapping::even).max_deviation;
  const double odd = build_M_and_verify(LinkMapping::odd).max_deviation;
  const bool pass = td.residual < 1e-12 && even < 1e-12 && odd < 1e-12;
  report(5, "truncated SU(2) machinery", pass,
         "f = " + fmt("%.6f", td.f) + ", trace residual " + fmt("%.1e", td.residual) + ", |M-U| " + fmt("%.1e", even) +
             ", |M^dag-U| " + fmt("%.1e", odd));
}

void effective_scaling() {
  const EffectiveStudy e = effective_plaquette_study(1, 1.0, 1.0, {20.0, 40.0, 80.0});
  const double shrink = e.rows[0].mismatch / e.rows[2].mismatch;
  const double halving = e.rows[0].coefficient / e.rows[1].coefficient;
  const bool pass = shrink >= 8.0 && std::abs(halving - 2.0) / 2.0 < 1e-3;
  report(6, "effective Hamiltonian scaling", pass,
         "mismatch shrink x" + fmt("%.2f", shrink) + " for 4x lambda, coefficient ratio " + fmt("%.6f", halving));
}

void dynamics_conservation() {
  HamiltonianSpec s;
  s.model = GaugeModel::ks_u1;
  s.truncation = 1;
  s.matter = FermionScheme::staggered;
  s.g2 = 1.0;
  s.epsilon = 1.0;
  s.mass = 1.0;
  const Lattice chain(1, {6});
  const FluxTubeReport r = flux_tube_breaking_scenario(s, chain, 3);
  const double drift = std::max({r.norm_drift, r.energy_drift, r.charge_drift, r.gauss_drift});
  s.epsilon = 0.0;
  const FluxTubeReport still = flux_tube_breaking_scenario(s, chain, 3);
  const bool pass = r.converged && drift < 1e-8 && still.profile_drift < 1e-8;
  report(7, "dynamics conservation", pass,
         "max drift " + fmt("%.1e", drift) + ", static profile drift " + fmt("%.1e", still.profile_drift));
}

void atomic_dictionary() {
  const ScatteringCoefficients c = {{1, 0.3}, {3, -1.1}, {5, 0.7}, {7, 1.9}};
  double off = 0.0;
  for (int a = 4; a >= -4; a -= 2)
    for (int b = 3; b >= -3; b -= 2)
      for (int a2 = 4; a2 >= -4; a2 -= 2)
        for (int b2 = 3; b2 >= -3; b2 -= 2)
          if (a + b != a2 + b2) off = std::max(off, std::abs(scattering_matrix_element(4, a2, 3, b2, a, b, c)));
  const F1Projectors p = f1_projectors(1.0, 2.0, 1.0);
  const double t0 = p.p0.trace().real(), t2 = p.p2.trace().real();
  const SchwingerInteractionCheck sw = schwinger_interaction_check(3);
  const bool pass = off == 0.0 && std::abs(t0 - 1.0) < 1e-12 && std::abs(t2 - 5.0) < 1e-12 && sw.identity_deviation < 1e-12;
  report(8, "atomic dictionary", pass,
         "off-channel max " + fmt("%.1e", off) + ", traces " + fmt("%.6f", t0) + " " + fmt("%.6f", t2) +
             ", Schwinger deviation " + fmt("%.1e", sw.identity_deviation));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void reproducibility() {
  const fs::path root = fs::temp_directory_path() / "lgtlab_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  bool pass = true;
  int compared = 0;
  for (const char* scenario : {"potential", "dynamics", "plaquette_convergence", "channels"}) {
    for (const char* run : {"a", "b"}) {
      const fs::path out = root / scenario / run;
      const std::string cmd = std::string("\"") + LGTLAB_CLI_PATH + "\" " + scenario + " --out \"" + out.string() +
                              "\" > \"" + (root / (std::string(scenario) + run + ".log")).string() + "\" 2>&1";
      if (std::system(cmd.c_str()) != 0) pass = false;
    }
    if (!fs::is_directory(root / scenario / "a")) {
      pass = false;
      continue;
    }
    for (const auto& entry : fs::directory_iterator(root / scenario / "a")) {
      const std::string name = entry.path().filename().string();
      if (name == "timing.json") continue;
      const fs::path other = root / scenario / "b" / name;
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) pass = false;
      ++compared;
    }
  }
  fs::remove_all(root);
  report(9, "reproducibility", pass && compared > 0, std::to_string(compared) + " files compared byte for byte");
}

}  // namespace

int main() {
  gauge_invariance();
  string_tension();
  truncation_convergence();
  zn_limit();
  su2_machinery();
  effective_scaling();
  dynamics_conservation();
  atomic_dictionary();
  reproducibility();
  return failures == 0 ? 0 : 1;
}
