#include "lgtlab/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lgtlab/format.hpp"
#include "lgtlab/gauge.hpp"
#include "lgtlab/hamiltonian.hpp"
#include "lgtlab/kernels.hpp"
#include "lgtlab/observables.hpp"
#include "lgtlab/solver.hpp"
#include "lgtlab/su2rep.hpp"

namespace lgt {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

const std::vector<std::pair<Scenario, std::string>>& scenario_names() {
  static const std::vector<std::pair<Scenario, std::string>> names = {
      {Scenario::spectrum, "spectrum"},
      {Scenario::potential, "potential"},
      {Scenario::plaquette_convergence, "plaquette_convergence"},
      {Scenario::effective_check, "effective_check"},
      {Scenario::dynamics, "dynamics"},
      {Scenario::verify, "verify"},
      {Scenario::channels, "channels"},
  };
  return names;
}

// ---------------------------------------------------------------------------
// JSON output with 17 significant digits for every float.

void write_json(std::ostream& os, const json& j, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(k).dump() << ": ";
        write_json(os, v, indent + 2);
      }
      os << '\n' << pad << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write_json(os, j[i], indent + 2);
      }
      os << '\n' << pad << ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x))
        os << fmt_double(x);
      else
        os << "null";
      return;
    }
    default:
      os << j.dump();
  }
}

std::string to_text(const json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << '\n';
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

// ---------------------------------------------------------------------------
// Strict config parsing.

using in_json = nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const in_json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw ConfigError(join(path, k), "unknown key");
  }
}

double get_double(const in_json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

int get_int(const in_json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  return v.get<int>();
}

bool get_bool(const in_json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const in_json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

std::vector<int> get_ints(const in_json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key, "expected an array of integers");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(get_int(x, key));
  return out;
}

std::vector<double> get_doubles(const in_json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(get_double(x, key));
  return out;
}

void parse_into(RunConfig& c, const in_json& j) {
  check_keys(j, "",
             {"scenario", "model", "truncation", "g2", "epsilon", "mass", "lambda", "lambda_zn", "eta", "matter",
              "terms", "lattice", "charges", "static_color", "eigenvalues", "potential", "convergence", "effective",
              "dynamics", "channels", "tolerance", "eigs_tolerance"});
  HamiltonianSpec& s = c.spec;
  for (const auto& [k, v] : j.items()) {
    if (k == "scenario") {
      if (get_string(v, k) != to_string(c.scenario))
        throw ConfigError(k, "config is for '" + v.get<std::string>() + "', not '" + to_string(c.scenario) + "'");
    } else if (k == "model") {
      try {
        s.model = gauge_model_from_string(get_string(v, k));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(k, e.what());
      }
    } else if (k == "truncation") {
      s.truncation = get_int(v, k);
    } else if (k == "g2") {
      s.g2 = get_double(v, k);
    } else if (k == "epsilon") {
      s.epsilon = get_double(v, k);
    } else if (k == "mass") {
      s.mass = get_double(v, k);
    } else if (k == "lambda") {
      s.lambda = get_double(v, k);
    } else if (k == "lambda_zn") {
      s.lambda_zn = get_double(v, k);
    } else if (k == "eta") {
      s.eta = get_double(v, k);
    } else if (k == "matter") {
      try {
        s.matter = fermion_scheme_from_string(get_string(v, k));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(k, e.what());
      }
    } else if (k == "terms") {
      check_keys(v, k, {"electric", "magnetic", "gauge_matter", "mass", "penalty"});
      for (const auto& [tk, tv] : v.items()) {
        const std::string key = join(k, tk);
        const bool on = get_bool(tv, key);
        if (tk == "electric") s.terms.electric = on;
        if (tk == "magnetic") s.terms.magnetic = on;
        if (tk == "gauge_matter") s.terms.gauge_matter = on;
        if (tk == "mass") s.terms.mass = on;
        if (tk == "penalty") s.terms.penalty = on;
      }
    } else if (k == "lattice") {
      check_keys(v, k, {"spatial_dim", "sizes", "boundary"});
      for (const auto& [lk, lv] : v.items()) {
        const std::string key = join(k, lk);
        if (lk == "spatial_dim") c.spatial_dim = get_int(lv, key);
        if (lk == "sizes") c.sizes = get_ints(lv, key);
        if (lk == "boundary") {
          const std::string b = get_string(lv, key);
          if (b == "open")
            c.boundary = Boundary::open;
          else if (b == "periodic")
            c.boundary = Boundary::periodic;
          else
            throw ConfigError(key, "expected 'open' or 'periodic'");
        }
      }
    } else if (k == "charges") {
      c.charges = get_ints(v, k);
    } else if (k == "static_color") {
      c.static_color = get_ints(v, k);
    } else if (k == "eigenvalues") {
      c.eigenvalues = get_int(v, k);
    } else if (k == "potential") {
      check_keys(v, k, {"r_list", "origin", "conjugate"});
      for (const auto& [pk, pv] : v.items()) {
        const std::string key = join(k, pk);
        if (pk == "r_list") c.r_list = get_ints(pv, key);
        if (pk == "origin") c.origin = get_int(pv, key);
        if (pk == "conjugate") c.conjugate = get_bool(pv, key);
      }
    } else if (k == "convergence") {
      check_keys(v, k, {"g2_list", "ell_list", "lambda_ref", "zn_n_list", "zn_g2"});
      for (const auto& [ck, cv] : v.items()) {
        const std::string key = join(k, ck);
        if (ck == "g2_list") c.g2_list = get_doubles(cv, key);
        if (ck == "ell_list") c.ell_list = get_ints(cv, key);
        if (ck == "lambda_ref") c.lambda_ref = get_int(cv, key);
        if (ck == "zn_n_list") c.zn_list = get_ints(cv, key);
        if (ck == "zn_g2") c.zn_g2 = get_double(cv, key);
      }
    } else if (k == "effective") {
      check_keys(v, k, {"lambdas"});
      if (v.contains("lambdas")) c.lambdas = get_doubles(v["lambdas"], "effective.lambdas");
    } else if (k == "dynamics") {
      check_keys(v, k, {"t", "steps", "string_length", "origin"});
      for (const auto& [dk, dv] : v.items()) {
        const std::string key = join(k, dk);
        if (dk == "t") c.t = get_double(dv, key);
        if (dk == "steps") c.steps = get_int(dv, key);
        if (dk == "string_length") c.string_length = get_int(dv, key);
        if (dk == "origin") c.string_origin = get_int(dv, key);
      }
    } else if (k == "channels") {
      check_keys(v, k, {"omega1", "omega2", "coefficients"});
      for (const auto& [hk, hv] : v.items()) {
        const std::string key = join(k, hk);
        if (hk == "omega1") c.omega1 = get_double(hv, key);
        if (hk == "omega2") c.omega2 = get_double(hv, key);
        if (hk == "coefficients") {
          if (!hv.is_object()) throw ConfigError(key, "expected an object keyed by 2F");
          c.coefficients.clear();
          for (const auto& [fk, fv] : hv.items()) {
            int tf = -1;
            try {
              std::size_t used = 0;
              tf = std::stoi(fk, &used);
              if (used != fk.size()) tf = -1;
            } catch (const std::exception&) {
              tf = -1;
            }
            if (tf < 1 || tf > 7 || tf % 2 == 0) throw ConfigError(join(key, fk), "2F must be 1, 3, 5 or 7");
            c.coefficients[tf] = get_double(fv, join(key, fk));
          }
        }
      }
    } else if (k == "tolerance") {
      c.tolerance = get_double(v, k);
    } else if (k == "eigs_tolerance") {
      c.eigs_tolerance = get_double(v, k);
    }
  }
}

void validate(const RunConfig& c) {
  if (c.spatial_dim != 1 && c.spatial_dim != 2)
    throw ConfigError("lattice.spatial_dim", "only 1 and 2 spatial dimensions are supported, got " +
                                                 std::to_string(c.spatial_dim));
  if (static_cast<int>(c.sizes.size()) != c.spatial_dim)
    throw ConfigError("lattice.sizes", "needs one extent per spatial dimension");
  for (int n : c.sizes)
    if (n < 2) throw ConfigError("lattice.sizes", "extents must be at least 2");
  if (c.spec.g2 <= 0.0) throw ConfigError("g2", "must be positive");
  if (c.spec.truncation < 1) throw ConfigError("truncation", "must be at least 1");
  if (c.eigenvalues < 1) throw ConfigError("eigenvalues", "must be at least 1");
  if (c.steps < 1) throw ConfigError("dynamics.steps", "must be at least 1");
  if (c.t < 0.0) throw ConfigError("dynamics.t", "must be non-negative");
  if (c.tolerance <= 0.0) throw ConfigError("tolerance", "must be positive");
  if (c.eigs_tolerance <= 0.0) throw ConfigError("eigs_tolerance", "must be positive");
  if (c.r_list.empty()) throw ConfigError("potential.r_list", "must not be empty");
  for (double l : c.lambdas)
    if (l <= 0.0) throw ConfigError("effective.lambdas", "penalties must be positive");
  const int nv = [&] {
    int n = 1;
    for (int s : c.sizes) n *= s;
    return n;
  }();
  if (!c.charges.empty() && static_cast<int>(c.charges.size()) != nv)
    throw ConfigError("charges", "needs one label per vertex");
}

// ---------------------------------------------------------------------------
// Checks.

Check below(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value < threshold, false};
}

Check at_least(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value >= threshold, false};
}

Check soft(Check c) {
  c.soft = true;
  return c;
}

json checks_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json o;
    o["name"] = c.name;
    o["value"] = c.value;
    o["threshold"] = c.threshold;
    o["pass"] = c.pass;
    if (c.soft) o["soft"] = true;
    arr.push_back(o);
  }
  return arr;
}

EigsOptions eigs_options(const RunConfig& c) {
  EigsOptions o;
  o.tolerance = c.eigs_tolerance;
  return o;
}

std::vector<int> zero_or(const std::vector<int>& charges, int n) {
  return charges.empty() ? std::vector<int>(n, 0) : charges;
}

// max |[H, G]| over all generators on the full product space.
double gauge_defect(const Model& model, const SparseOperator& h) {
  double worst = 0.0;
  for (const auto& g : gauss_operators(model)) worst = std::max(worst, commutator_norm(h, g));
  return worst;
}

constexpr std::uint64_t kFullSpaceLimit = 1u << 18;

// ---------------------------------------------------------------------------
// Scenarios. Each fills `results` and `checks` and returns the CSVs to write.

using Files = std::vector<std::pair<std::string, std::string>>;

Files run_spectrum(const RunConfig& c, json& results, std::vector<Check>& checks) {
  const Lattice lat = c.lattice();
  const Model model(c.spec, lat, c.static_color);
  const GaussSector sector = sector_basis(model, zero_or(c.charges, lat.vertex_count()));
  AssemblyStats stats;
  const SparseOperator on_basis = assemble_hamiltonian(model, sector.basis, &stats);
  const SparseOperator h = restrict_operator(on_basis, sector);
  const int k = static_cast<int>(std::min<std::int64_t>(c.eigenvalues, sector.dim()));
  const EigenResult e = eigs(h, k, eigs_options(c));

  results["space_dim"] = model.space().size();
  results["sector_dim"] = sector.dim();
  results["eigenvalues"] = std::vector<double>(e.values.data(), e.values.data() + e.values.size());
  results["dense"] = e.dense;
  results["restarts"] = e.iterations;

  checks.push_back(below("hermiticity", h.hermiticity_defect(), 1e-12));
  checks.push_back(below("sector_leakage", std::sqrt(stats.leaked_weight), c.tolerance));
  checks.push_back(below("eigen_residual", e.max_residual, c.eigs_tolerance));
  if (model.space().size() <= kFullSpaceLimit) {
    const SparseOperator full = assemble_hamiltonian(model, StateBasis::full(model.space().size()));
    checks.push_back(below("max_commutator_H_G", gauge_defect(model, full), c.tolerance));
  }

  std::ostringstream csv;
  csv << "index,E\n";
  for (int i = 0; i < k; ++i) csv << i << ',' << fmt_double(e.values[i]) << '\n';
  return {{"spectrum.csv", csv.str()}};
}

double casimir_for(const HamiltonianSpec& s) { return s.model == GaugeModel::su2 ? 0.75 : 1.0; }

// Only the electric term acts (the magnetic term is absent in one dimension).
bool electric_only(const HamiltonianSpec& s, int spatial_dim) {
  return s.terms.electric && (!s.terms.magnetic || spatial_dim == 1) && (!s.terms.penalty || s.lambda == 0.0) &&
         (s.matter == FermionScheme::none || (!s.terms.gauge_matter && !s.terms.mass));
}

Files run_potential(const RunConfig& c, json& results, std::vector<Check>& checks) {
  PotentialOptions opt;
  opt.origin = c.origin;
  opt.conjugate = c.conjugate;
  opt.eigs = eigs_options(c);
  const StaticPotentialCurve curve = static_potential(c.spec, c.lattice(), c.r_list, opt);

  json pts = json::array();
  for (const auto& p : curve.points) pts.push_back({{"R", p.r}, {"E", p.energy}, {"dim", p.dim}});
  results["points"] = pts;
  results["fit_window"] = curve.fit_window;
  results["sigma"] = curve.sigma;
  results["offset"] = curve.offset;
  results["fit_residual"] = curve.residual;

  if (electric_only(c.spec, c.spatial_dim) && c.spec.model != GaugeModel::zn) {
    const double expected = 0.5 * c.spec.g2 * casimir_for(c.spec);
    results["sigma_expected"] = expected;
    checks.push_back(below("sigma_minus_g2_C2_over_2", std::abs(curve.sigma - expected), c.tolerance));
    checks.push_back(below("fit_residual", curve.residual, c.tolerance));
  }
  return {{"potential.csv", potential_csv(curve)}};
}

void convergence_checks(const ConvergenceTable& table, const ZnTrend& zn, std::vector<Check>& checks) {
  checks.push_back({"spin_gauge_gap_strictly_decreasing", table.strictly_decreasing() ? 1.0 : 0.0, 1.0,
                    table.strictly_decreasing(), false});
  if (std::find(table.g2.begin(), table.g2.end(), 1.0) != table.g2.end())
    checks.push_back(soft(below("gap_ratio_lmax_over_lmin_at_g2_1", table.ratio(1.0), 0.5)));
  checks.push_back({"zn_gap_strictly_decreasing", zn.monotone() ? 1.0 : 0.0, 1.0, zn.monotone(), false});
}

Files run_convergence(const RunConfig& c, json& results, std::vector<Check>& checks) {
  const ConvergenceTable table = plaquette_convergence_study(c.g2_list, c.ell_list, c.lambda_ref, eigs_options(c));
  const ZnTrend zn = zn_u1_trend(c.zn_g2, c.zn_list, c.lambda_ref, eigs_options(c));

  json ref = json::array();
  for (std::size_t i = 0; i < table.g2.size(); ++i) ref.push_back({{"g2", table.g2[i]}, {"E_ref", table.reference[i]}});
  results["lambda_ref"] = c.lambda_ref;
  results["reference"] = ref;
  results["zn_reference"] = zn.reference;
  convergence_checks(table, zn, checks);

  std::ostringstream z;
  z << "N,lambda_zn,E,E_mapped,gap_to_ref\n";
  const double pi = std::acos(-1.0);
  for (std::size_t i = 0; i < zn.n.size(); ++i) {
    const double delta = 2.0 * pi / zn.n[i];
    z << zn.n[i] << ',' << fmt_double(zn.g2 * zn.g2 / (delta * delta)) << ',' << fmt_double(zn.raw[i]) << ','
      << fmt_double(zn.mapped[i]) << ',' << fmt_double(zn.gap[i]) << '\n';
  }
  return {{"convergence.csv", convergence_csv(table)}, {"zn_trend.csv", z.str()}};
}

void effective_checks(const EffectiveStudy& study, double tol, std::vector<Check>& checks) {
  double herm = 0.0, leak = 0.0;
  for (const auto& r : study.rows) {
    herm = std::max(herm, r.hermiticity);
    leak = std::max(leak, r.leakage);
  }
  checks.push_back(below("h_eff_hermiticity", herm, 1e-12));
  checks.push_back(below("pvp_leakage", leak, tol));
  for (std::size_t i = 0; i < study.rows.size(); ++i)
    for (std::size_t j = 0; j < study.rows.size(); ++j) {
      const auto& a = study.rows[i];
      const auto& b = study.rows[j];
      std::ostringstream tag;
      tag << fmt_double(a.lambda) << "_to_" << fmt_double(b.lambda);
      if (std::abs(b.lambda - 2.0 * a.lambda) < 1e-12 * b.lambda)
        checks.push_back(
            below("coefficient_halving_" + tag.str(), std::abs(a.coefficient / b.coefficient / 2.0 - 1.0), 1e-3));
      if (std::abs(b.lambda - 4.0 * a.lambda) < 1e-12 * b.lambda)
        checks.push_back(at_least("mismatch_shrink_" + tag.str(), a.mismatch / b.mismatch, 8.0));
    }
}

Files run_effective(const RunConfig& c, json& results, std::vector<Check>& checks) {
  if (c.spec.model != GaugeModel::spin_gauge)
    throw ConfigError("model", "effective_check runs on the spin-gauge model");
  const EffectiveStudy study = effective_plaquette_study(c.spec.truncation, c.spec.g2, c.spec.eta, c.lambdas,
                                                         eigs_options(c));
  results["ell"] = study.ell;
  results["eta"] = study.eta;
  effective_checks(study, c.tolerance, checks);

  std::ostringstream csv;
  csv << "lambda,coefficient,eta2_over_lambda,mismatch,unmatched\n";
  for (const auto& r : study.rows)
    csv << fmt_double(r.lambda) << ',' << fmt_double(r.coefficient) << ',' << fmt_double(study.eta * study.eta / r.lambda)
        << ',' << fmt_double(r.mismatch) << ',' << fmt_double(r.unmatched) << '\n';
  return {{"effective.csv", csv.str()}};
}

FluxTubeReport dynamics_report(const RunConfig& c) {
  FluxTubeOptions opt;
  opt.t = c.t;
  opt.steps = c.steps;
  opt.origin = c.string_origin;
  opt.full_space_limit = kFullSpaceLimit;
  FluxTubeReport rep = flux_tube_breaking_scenario(c.spec, c.lattice(), c.string_length, opt);
  if (!rep.converged)
    throw NumericalError("time evolution not converged under step halving (difference " +
                         fmt_double(rep.halving_difference) + ")");
  return rep;
}

void dynamics_checks(const FluxTubeReport& rep, double epsilon, std::vector<Check>& checks, const std::string& prefix) {
  const double tol = 1e-8;
  checks.push_back(below(prefix + "norm_drift", rep.norm_drift, tol));
  checks.push_back(below(prefix + "energy_drift", rep.energy_drift, tol));
  checks.push_back(below(prefix + "total_charge_drift", rep.charge_drift, tol));
  checks.push_back(below(prefix + "gauss_drift", rep.gauss_drift, tol));
  if (epsilon == 0.0) checks.push_back(below(prefix + "static_profile_drift", rep.profile_drift, tol));
}

Files run_dynamics(const RunConfig& c, json& results, std::vector<Check>& checks) {
  const FluxTubeReport rep = dynamics_report(c);
  results["origin"] = rep.origin;
  results["string_length"] = rep.r;
  results["full_space"] = rep.full_space;
  results["halving_difference"] = rep.halving_difference;
  results["final_survival"] = rep.survival.back();
  results["interior_flux_min"] = rep.interior_flux_min;
  dynamics_checks(rep, c.spec.epsilon, checks, "");

  std::ostringstream tr;
  tr << "t,energy,survival,total_charge\n";
  for (std::size_t k = 0; k < rep.times.size(); ++k) {
    double q = 0.0;
    for (double x : rep.charge[k]) q += x;
    tr << fmt_double(rep.times[k]) << ',' << fmt_double(rep.energy[k]) << ',' << fmt_double(rep.survival[k]) << ','
       << fmt_double(q) << '\n';
  }
  return {{"dynamics.csv", dynamics_csv(rep)}, {"trajectory.csv", tr.str()}};
}

Files run_channels(const RunConfig& c, json& results, std::vector<Check>& checks) {
  HyperfineLevelScheme scheme;
  scheme.omega1 = c.omega1;
  scheme.omega2 = c.omega2;
  const CoefficientFit fit = fit_scattering_coefficients(scheme);
  const ScatteringCoefficients coeffs = c.coefficients.empty() ? fit.coefficients : c.coefficients;
  const ChannelTable table = enumerate_channels(scheme, coeffs);

  json fitted;
  for (const auto& [tf, v] : fit.coefficients) fitted[std::to_string(tf)] = v;
  results["fit_coefficients"] = fitted;
  results["fit_residual"] = fit.residual;
  results["fit_channels"] = fit.channels;
  int allowed = 0;
  for (const auto& ch : table.channels) allowed += ch.allowed_by_omega;
  results["channels"] = table.channels.size();
  results["allowed_by_omega"] = allowed;
  results["degenerate"] = table.degenerate;

  double off = 0.0;
  for (int a = 4; a >= -4; a -= 2)
    for (int b = 3; b >= -3; b -= 2)
      for (int a2 = 4; a2 >= -4; a2 -= 2)
        for (int b2 = 3; b2 >= -3; b2 -= 2)
          if (a + b != a2 + b2) off = std::max(off, std::abs(scattering_matrix_element(4, a2, 3, b2, a, b, coeffs)));
  checks.push_back(below("amplitude_off_mF_conserving", off, 1e-300));
  checks.push_back(soft({"omega_nondegenerate", table.degenerate ? 0.0 : 1.0, 1.0, !table.degenerate, false}));
  return {{"channels.csv", channels_csv(table)}};
}

// Gauge invariance over every model family, single plaquette and 1x4 chain,
// with and without matter.
void gauge_invariance_suite(double tol, json& results, std::vector<Check>& checks) {
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
  json rows = json::array();
  double worst = 0.0;
  for (const auto& f : families)
    for (int dim : {2, 1})
      for (bool matter : {false, true}) {
        HamiltonianSpec s;
        s.model = f.model;
        s.truncation = f.truncation;
        s.g2 = 1.3;
        s.epsilon = 0.7;
        s.mass = 0.4;
        s.lambda_zn = 0.9;
        s.matter = matter ? f.matter : FermionScheme::none;
        const Lattice lat = dim == 2 ? Lattice(2, {2, 2}) : Lattice(1, {4});
        const Model model(s, lat);
        const SparseOperator h = assemble(hamiltonian(model), model.space());
        const double d = gauge_defect(model, h);
        worst = std::max(worst, d);
        rows.push_back({{"model", to_string(f.model)},
                        {"truncation", f.truncation},
                        {"lattice", dim == 2 ? "2x2" : "1x4"},
                        {"matter", to_string(s.matter)},
                        {"max_commutator", d}});
      }
  {
    // Naive two-component fermions on the plaquette.
    HamiltonianSpec s;
    s.truncation = 1;
    s.g2 = 1.3;
    s.epsilon = 0.7;
    s.mass = 0.4;
    s.matter = FermionScheme::naive2d;
    const Model model(s, Lattice(2, {2, 2}));
    const double d = gauge_defect(model, assemble(hamiltonian(model), model.space()));
    worst = std::max(worst, d);
    rows.push_back({{"model", "ks_u1"}, {"truncation", 1}, {"lattice", "2x2"}, {"matter", "naive"}, {"max_commutator", d}});
  }
  results["gauge_invariance"] = rows;
  checks.push_back(below("max_commutator_H_G_all_families", worst, tol));
}

void string_tension_suite(double tol, json& results, std::vector<Check>& checks) {
  struct Case {
    GaugeModel model;
    int truncation;
    Lattice lattice;
    std::vector<int> r;
  };
  const std::vector<Case> cases = {
      {GaugeModel::ks_u1, 2, Lattice(1, {6}), {0, 1, 2, 3, 4, 5}},
      {GaugeModel::spin_gauge, 1, Lattice(1, {6}), {0, 1, 2, 3, 4, 5}},
      {GaugeModel::su2, 1, Lattice(1, {4}), {0, 1, 2, 3}},
  };
  json rows = json::array();
  for (const auto& cs : cases) {
    HamiltonianSpec s;
    s.model = cs.model;
    s.truncation = cs.truncation;
    s.g2 = 2.0;
    s.terms.magnetic = false;
    const auto t0 = std::chrono::steady_clock::now();
    const StaticPotentialCurve curve = static_potential(s, cs.lattice, cs.r);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double expected = 0.5 * s.g2 * casimir_for(s);
    rows.push_back({{"model", to_string(cs.model)}, {"sigma", curve.sigma}, {"expected", expected},
                    {"residual", curve.residual}});
    checks.push_back(below("sigma_error_" + to_string(cs.model), std::abs(curve.sigma - expected), tol));
    checks.push_back(below("fit_residual_" + to_string(cs.model), curve.residual, tol));
    checks.push_back(soft(below("potential_seconds_" + to_string(cs.model), secs, 5.0)));
  }
  results["string_tension"] = rows;
}

void su2_machinery_suite(double tol, json& results, std::vector<Check>& checks) {
  const SU2LinkSpace space(1);
  const TraceDefect td = measure_trace_defect(space, truncated_rotation_matrix(space, 1));
  results["trace_defect_f"] = td.f;
  checks.push_back(below("trace_identity_residual", td.residual, 1e-12));
  checks.push_back(below("M_equals_U_even", build_M_and_verify(LinkMapping::even).max_deviation, 1e-12));
  checks.push_back(below("Mdag_equals_U_odd", build_M_and_verify(LinkMapping::odd).max_deviation, 1e-12));
  checks.push_back(below("M_interaction_gauge_defect", m_interaction_gauge_defect(), tol));
}

void atomic_suite(json& results, std::vector<Check>& checks) {
  const ScatteringCoefficients c = {{1, 0.3}, {3, -1.1}, {5, 0.7}, {7, 1.9}};
  double off = 0.0;
  for (int a = 4; a >= -4; a -= 2)
    for (int b = 3; b >= -3; b -= 2)
      for (int a2 = 4; a2 >= -4; a2 -= 2)
        for (int b2 = 3; b2 >= -3; b2 -= 2)
          if (a + b != a2 + b2) off = std::max(off, std::abs(scattering_matrix_element(4, a2, 3, b2, a, b, c)));
  checks.push_back(below("amplitude_off_mF_conserving", off, 1e-300));

  const F1Projectors p = f1_projectors(1.0, 2.0, 1.0);
  results["f1_traces"] = {p.p0.trace().real(), p.p2.trace().real()};
  checks.push_back(below("f1_trace_P0_minus_1", std::abs(p.p0.trace() - 1.0), 1e-12));
  checks.push_back(below("f1_trace_P2_minus_5", std::abs(p.p2.trace() - 5.0), 1e-12));
  checks.push_back(below("f1_P0_idempotent", (p.p0 * p.p0 - p.p0).cwiseAbs().maxCoeff(), 1e-12));
  checks.push_back(below("f1_P2_idempotent", (p.p2 * p.p2 - p.p2).cwiseAbs().maxCoeff(), 1e-12));

  const SchwingerInteractionCheck s = schwinger_interaction_check(3);
  checks.push_back(below("schwinger_identity_deviation", s.identity_deviation, 1e-12));
  checks.push_back(below("schwinger_number_commutator", s.number_commutator, 1e-12));
  checks.push_back(below("schwinger_ell_commutator", s.ell_commutator, 1e-12));
  checks.push_back({"gip_allowed_conserves", s.allowed_example_conserves ? 1.0 : 0.0, 1.0, s.allowed_example_conserves,
                    false});
  checks.push_back({"gip_forbidden_violates", s.forbidden_example_violates ? 1.0 : 0.0, 1.0,
                    s.forbidden_example_violates, false});
}

Files run_verify(const RunConfig& c, json& results, std::vector<Check>& checks) {
  if (!c.all) {
    const Lattice lat = c.lattice();
    const Model model(c.spec, lat, c.static_color);
    if (model.space().size() > kFullSpaceLimit)
      throw ConfigError("lattice", "full product space too large for the commutator check");
    const SparseOperator h = assemble(hamiltonian(model), model.space());
    results["space_dim"] = model.space().size();
    checks.push_back(below("hermiticity", h.hermiticity_defect(), 1e-12));
    checks.push_back(below("max_commutator_H_G", gauge_defect(model, h), c.tolerance));
    return {};
  }

  gauge_invariance_suite(c.tolerance, results, checks);
  string_tension_suite(c.tolerance, results, checks);

  const ConvergenceTable table = plaquette_convergence_study({0.5, 1.0, 2.0}, {1, 2, 3}, 8);
  const ZnTrend zn = zn_u1_trend(1.0, {3, 5, 7, 9}, 8);
  results["gap_ratio_at_g2_1"] = table.ratio(1.0);
  convergence_checks(table, zn, checks);

  su2_machinery_suite(c.tolerance, results, checks);

  const EffectiveStudy study = effective_plaquette_study(1, 1.0, 1.0, {20.0, 40.0, 80.0});
  effective_checks(study, c.tolerance, checks);

  RunConfig d = default_config(Scenario::dynamics);
  const FluxTubeReport moving = dynamics_report(d);
  dynamics_checks(moving, d.spec.epsilon, checks, "dynamics_");
  d.spec.epsilon = 0.0;
  const FluxTubeReport frozen = dynamics_report(d);
  dynamics_checks(frozen, 0.0, checks, "dynamics_eps0_");

  atomic_suite(results, checks);
  return {};
}

json versions() {
  json v;
  v["lgtlab"] = kVersion;
  v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  v["compiler"] = __VERSION__;
  v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                       "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  return v;
}

json config_to_json(const RunConfig& c) {
  json j;
  const HamiltonianSpec& s = c.spec;
  j["scenario"] = to_string(c.scenario);
  j["model"] = to_string(s.model);
  j["truncation"] = s.truncation;
  j["g2"] = s.g2;
  j["epsilon"] = s.epsilon;
  j["mass"] = s.mass;
  j["lambda"] = s.lambda;
  j["lambda_zn"] = s.lambda_zn;
  j["eta"] = s.eta;
  j["matter"] = to_string(s.matter);
  j["terms"] = {{"electric", s.terms.electric},
                {"magnetic", s.terms.magnetic},
                {"gauge_matter", s.terms.gauge_matter},
                {"mass", s.terms.mass},
                {"penalty", s.terms.penalty}};
  j["lattice"] = {{"spatial_dim", c.spatial_dim},
                  {"sizes", c.sizes},
                  {"boundary", c.boundary == Boundary::open ? "open" : "periodic"}};
  j["charges"] = c.charges;
  j["static_color"] = c.static_color;
  j["eigenvalues"] = c.eigenvalues;
  j["potential"] = {{"r_list", c.r_list}, {"origin", c.origin}, {"conjugate", c.conjugate}};
  j["convergence"] = {{"g2_list", c.g2_list},
                      {"ell_list", c.ell_list},
                      {"lambda_ref", c.lambda_ref},
                      {"zn_n_list", c.zn_list},
                      {"zn_g2", c.zn_g2}};
  j["effective"] = {{"lambdas", c.lambdas}};
  j["dynamics"] = {{"t", c.t}, {"steps", c.steps}, {"string_length", c.string_length}, {"origin", c.string_origin}};
  json coeffs = json::object();
  for (const auto& [tf, v] : c.coefficients) coeffs[std::to_string(tf)] = v;
  j["channels"] = {{"omega1", c.omega1}, {"omega2", c.omega2}, {"coefficients", coeffs}};
  j["tolerance"] = c.tolerance;
  j["eigs_tolerance"] = c.eigs_tolerance;
  if (c.scenario == Scenario::verify) j["all"] = c.all;
  return j;
}

}  // namespace

std::string to_string(Scenario s) {
  for (const auto& [k, v] : scenario_names())
    if (k == s) return v;
  return "unknown";
}

Scenario scenario_from_string(const std::string& s) {
  for (const auto& [k, v] : scenario_names())
    if (v == s) return k;
  throw ConfigError("scenario", "unknown scenario '" + s + "'");
}

RunConfig default_config(Scenario scenario) {
  RunConfig c;
  c.scenario = scenario;
  switch (scenario) {
    case Scenario::potential:
      c.spatial_dim = 1;
      c.sizes = {6};
      c.spec.terms.magnetic = false;
      break;
    case Scenario::dynamics:
      c.spatial_dim = 1;
      c.sizes = {6};
      c.spec.matter = FermionScheme::staggered;
      c.spec.epsilon = 1.0;
      c.spec.mass = 1.0;
      break;
    case Scenario::effective_check:
      c.spec.model = GaugeModel::spin_gauge;
      c.spec.eta = 1.0;
      break;
    default:
      break;
  }
  return c;
}

RunConfig parse_config(Scenario scenario, const std::string& json_text) {
  RunConfig c = default_config(scenario);
  in_json j;
  try {
    j = in_json::parse(json_text);
  } catch (const in_json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  parse_into(c, j);
  validate(c);
  return c;
}

std::string config_json(const RunConfig& config) { return to_text(config_to_json(config)); }

RunOutcome run(const RunConfig& config, const std::filesystem::path& out, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  json results = json::object();
  Files files;

  try {
    validate(config);
    switch (config.scenario) {
      case Scenario::spectrum:
        files = run_spectrum(config, results, outcome.checks);
        break;
      case Scenario::potential:
        files = run_potential(config, results, outcome.checks);
        break;
      case Scenario::plaquette_convergence:
        files = run_convergence(config, results, outcome.checks);
        break;
      case Scenario::effective_check:
        files = run_effective(config, results, outcome.checks);
        break;
      case Scenario::dynamics:
        files = run_dynamics(config, results, outcome.checks);
        break;
      case Scenario::verify:
        files = run_verify(config, results, outcome.checks);
        break;
      case Scenario::channels:
        files = run_channels(config, results, outcome.checks);
        break;
    }
    outcome.exit_code = exit_ok;
    for (const auto& c : outcome.checks) {
      if (c.pass) continue;
      if (c.soft) {
        log << "warning: " << c.name << " = " << fmt_double(c.value) << " (threshold " << fmt_double(c.threshold)
            << ")\n";
      } else {
        log << "FAILED: " << c.name << " = " << fmt_double(c.value) << " (threshold " << fmt_double(c.threshold)
            << ")\n";
        outcome.exit_code = exit_invariant;
      }
    }
  } catch (const ConfigError& e) {
    outcome.exit_code = exit_config;
    outcome.message = e.what();
  } catch (const EmptySectorError& e) {
    outcome.exit_code = exit_numerical;
    outcome.message = e.what();
  } catch (const NumericalError& e) {
    outcome.exit_code = exit_numerical;
    outcome.message = e.what();
  } catch (const LatticeError& e) {
    outcome.exit_code = exit_config;
    outcome.message = e.what();
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = exit_config;
    outcome.message = e.what();
  }
  if (!outcome.message.empty()) log << "error: " << outcome.message << '\n';

  std::filesystem::create_directories(out);
  for (const auto& [name, text] : files) {
    write_file(out / name, text);
    outcome.files.push_back(name);
  }

  json manifest;
  manifest["config"] = config_to_json(config);
  manifest["versions"] = versions();
  manifest["results"] = results;
  manifest["checks"] = checks_json(outcome.checks);
  manifest["files"] = outcome.files;
  manifest["exit_code"] = outcome.exit_code;
  if (!outcome.message.empty()) manifest["error"] = outcome.message;
  manifest["timing"] = "timing.json";
  write_file(out / "manifest.json", to_text(manifest));
  outcome.files.push_back("manifest.json");

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json timing;
  timing["wall_seconds"] = secs;
  timing["threads"] = kernels::max_threads();
  write_file(out / "timing.json", to_text(timing));
  return outcome;
}

}  // namespace lgt
