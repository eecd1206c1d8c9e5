#include "lgtlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lgtlab/format.hpp"
#include "lgtlab/hamiltonian.hpp"

namespace lgt {

namespace {

// Diagonal entries of a local matrix as reals.
std::vector<double> real_diagonal(const LocalMatrix& m) {
  std::vector<double> d(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) d[i] = m(i, i).real();
  return d;
}

std::vector<double> link_values(const Model& model) {
  if (model.abelian()) return real_diagonal(model.links().electric);
  return real_diagonal(model.su2_space().casimir());
}

// sum_b |psi_b|^2 values[digit_site(b)]
double diagonal_expectation(const ProductSpace& space, const StateBasis& basis, const Vector& state, int site,
                            const std::vector<double>& values) {
  if (state.size() != basis.size()) throw std::invalid_argument("state does not match the basis");
  double sum = 0.0;
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    const double w = std::norm(state[i]);
    if (w != 0.0) sum += w * values[space.digit(basis.state(i), site)];
  }
  return sum;
}

Lattice single_plaquette() { return Lattice(2, {2, 2}); }

}  // namespace

Vector to_product_basis(const GaussSector& sector, const Vector& state) {
  if (sector.product_basis()) return state;
  return sector.isometry * state;
}

std::vector<double> flux_profile(const Model& model, const StateBasis& basis, const Vector& state) {
  const std::vector<double> values = link_values(model);
  std::vector<double> out(model.lattice().link_count());
  for (int l = 0; l < model.lattice().link_count(); ++l)
    out[l] = diagonal_expectation(model.space(), basis, state, model.link_site(l), values);
  return out;
}

std::vector<double> flux_profile(const Model& model, const GaussSector& sector, const Vector& state) {
  return flux_profile(model, sector.basis, to_product_basis(sector, state));
}

std::vector<double> charge_density(const Model& model, const StateBasis& basis, const Vector& state) {
  const Lattice& lat = model.lattice();
  std::vector<double> out(lat.vertex_count(), 0.0);
  if (!model.has_matter() || !model.abelian()) return out;
  for (int v = 0; v < lat.vertex_count(); ++v) {
    const std::vector<int> q = abelian_charge_values(model.fermions(), lat, v);
    out[v] = diagonal_expectation(model.space(), basis, state, model.vertex_site(v),
                                  std::vector<double>(q.begin(), q.end()));
  }
  return out;
}

std::vector<double> gauss_expectations(const Model& model, const StateBasis& basis, const Vector& state) {
  if (!model.abelian()) throw std::invalid_argument("gauss_expectations: Abelian models only");
  std::vector<double> out;
  for (const GaussGenerator& g : gauss_generators(model)) {
    double sum = 0.0;
    for (const LocalTerm& t : g.terms)
      sum += diagonal_expectation(model.space(), basis, state, t.site, real_diagonal(t.matrix));
    out.push_back(sum);
  }
  return out;
}

double expectation(const SparseOperator& op, const Vector& state) { return state.dot(op.apply(state)).real(); }

int string_endpoint(const Lattice& lattice, int n, int r) {
  if (r < 0) throw LatticeError("string length must be non-negative");
  int v = n;
  for (int i = 0; i < r; ++i) {
    v = lattice.neighbor(v, 0, 1);
    if (v < 0) throw LatticeError("string of length " + std::to_string(r) + " exceeds the lattice extent");
  }
  return v;
}

std::vector<int> string_charges(const Lattice& lattice, int n, int r) {
  std::vector<int> q(lattice.vertex_count(), 0);
  const int end = string_endpoint(lattice, n, r);
  if (r > 0) {
    q[n] = 1;
    q[end] = -1;
  }
  return q;
}

namespace {

std::vector<int> string_links(const Lattice& lattice, int n, int r) {
  std::vector<int> links;
  int v = n;
  for (int i = 0; i < r; ++i) {
    links.push_back(lattice.link_index(v, 0));
    v = lattice.neighbor(v, 0, 1);
  }
  return links;
}

// Product digits of the Abelian string on top of the electric vacuum and the Dirac sea.
std::vector<int> string_digits(const Model& model, int n, int r, int flux) {
  const ProductSpace& space = model.space();
  std::vector<int> digits(space.sites(), 0);
  const int zero = (model.link_dim() - 1) / 2;
  for (int l = 0; l < model.lattice().link_count(); ++l) digits[model.link_site(l)] = zero;
  for (int l : string_links(model.lattice(), n, r)) digits[model.link_site(l)] = zero + flux;
  if (model.has_matter()) {
    const std::vector<int> sea = dirac_sea_digits(model.fermions(), model.lattice());
    for (int v = 0; v < model.lattice().vertex_count(); ++v) digits[model.vertex_site(v)] = sea[v];
  }
  return digits;
}

}  // namespace

StringState strong_coupling_ground(const Model& model, int n, int r) {
  const Lattice& lat = model.lattice();
  if (n < 0 || n >= lat.vertex_count()) throw LatticeError("string origin outside the lattice");
  const int end = string_endpoint(lat, n, r);
  StringState s;

  if (model.abelian()) {
    if (model.spec().model == GaugeModel::spin_gauge && model.spec().truncation < 1)
      throw std::invalid_argument("spin-gauge strings need l >= 1");
    s.sector = sector_basis(model, string_charges(lat, n, r));
    const std::vector<int> digits = string_digits(model, n, r, 1);
    s.product = model.space().encode(digits);
    const auto idx = s.sector.basis.find(s.product);
    if (!idx) throw std::logic_error("string state is not in its Gauss sector");
    s.state = Vector::Zero(s.sector.dim());
    s.state[*idx] = 1.0;
  } else {
    if (model.has_matter()) throw std::invalid_argument("SU(2) strings are built without dynamical matter");
    if (r > 0 && (model.static_site(n) < 0 || model.static_site(end) < 0))
      throw std::invalid_argument("SU(2) strings need static color sites on both endpoints");
    s.sector = sector_basis(model, {});
    const SparseOperator he = restrict_opsum(h_electric(model), model.space(), s.sector);
    const EigenResult e = eigs(he, 1);
    s.state = e.vectors.col(0);
  }

  const SparseOperator he = restrict_opsum(h_electric(model), model.space(), s.sector);
  const Vector hv = he.apply(s.state);
  s.electric_energy = s.state.dot(hv).real();
  s.electric_residual = (hv - s.electric_energy * s.state).norm();
  return s;
}

StaticPotentialCurve static_potential(const HamiltonianSpec& spec, const Lattice& lattice, std::vector<int> r_list,
                                      const PotentialOptions& options) {
  std::sort(r_list.begin(), r_list.end());
  if (std::adjacent_find(r_list.begin(), r_list.end()) != r_list.end())
    throw std::invalid_argument("static_potential: repeated separation");

  StaticPotentialCurve curve;
  const int n = options.origin;
  for (int r : r_list) {
    const int end = string_endpoint(lattice, n, r);
    std::vector<int> color;
    std::vector<int> charges;
    if (spec.model == GaugeModel::su2) {
      if (r > 0) color = {n, end};
    } else {
      charges = string_charges(lattice, n, r);
      if (options.conjugate)
        for (int& q : charges) q = -q;
    }
    const Model model(spec, lattice, color);
    const GaussSector sector = sector_basis(model, charges);
    const SparseOperator h = restrict_opsum(hamiltonian(model), model.space(), sector);
    const EigenResult e = eigs(h, 1, options.eigs);
    curve.points.push_back({r, e.values[0], sector.dim()});
  }

  std::vector<int> window;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const int r = curve.points[i].r;
    if (r != 0 && i + 1 != curve.points.size()) window.push_back(static_cast<int>(i));
  }
  if (window.size() < 2) {
    window.clear();
    for (std::size_t i = 0; i < curve.points.size(); ++i)
      if (curve.points[i].r != 0) window.push_back(static_cast<int>(i));
  }
  if (window.size() < 2) {
    window.resize(curve.points.size());
    std::iota(window.begin(), window.end(), 0);
  }
  for (int i : window) curve.fit_window.push_back(curve.points[i].r);

  if (window.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(window.size());
    for (int i : window) {
      const double x = curve.points[i].r, y = curve.points[i].energy;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    curve.sigma = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    curve.offset = (sy - curve.sigma * sx) / m;
    double res = 0.0;
    for (int i : window) {
      const double d = curve.points[i].energy - (curve.sigma * curve.points[i].r + curve.offset);
      res += d * d;
    }
    curve.residual = std::sqrt(res);
  } else if (window.size() == 1) {
    curve.offset = curve.points[window[0]].energy;
  }
  return curve;
}

std::string potential_csv(const StaticPotentialCurve& curve) {
  std::ostringstream os;
  os << "R,E,dim\n";
  for (const auto& p : curve.points) os << p.r << ',' << fmt_double(p.energy) << ',' << p.dim << '\n';
  return os.str();
}

FluxTubeReport flux_tube_breaking_scenario(const HamiltonianSpec& spec, const Lattice& lattice, int r,
                                           const FluxTubeOptions& options) {
  if (lattice.spatial_dim() != 1) throw std::invalid_argument("flux-tube dynamics runs on a 1D chain");
  if (spec.matter != FermionScheme::staggered || spec.model == GaugeModel::su2 || spec.model == GaugeModel::zn)
    throw std::invalid_argument("flux-tube dynamics needs a U(1) or spin-gauge model with staggered matter");
  if (r <= 0 || r % 2 == 0) throw std::invalid_argument("flux-tube length must be odd and positive");

  const Model model(spec, lattice);
  const int nv = lattice.vertex_count();
  int n = options.origin;
  if (n < 0) {
    n = std::max(0, (nv - 1 - r) / 2);
    n -= n % 2;
  }
  if (n % 2 != 0) throw std::invalid_argument("flux-tube origin must be an even vertex");
  const int end = string_endpoint(lattice, n, r);

  // Particle on the even origin, antiparticle (hole) on the odd endpoint.
  std::vector<int> digits = string_digits(model, n, r, 1);
  digits[model.vertex_site(n)] = 1;
  digits[model.vertex_site(end)] = 0;
  const std::uint64_t product = model.space().encode(digits);

  FluxTubeReport rep;
  rep.origin = n;
  rep.r = r;
  rep.full_space = model.space().size() <= options.full_space_limit;

  StateBasis basis = StateBasis::full(model.space().size());
  if (!rep.full_space) basis = sector_basis(model, std::vector<int>(nv, 0)).basis;
  const auto idx = basis.find(product);
  if (!idx) throw std::logic_error("string state is not in the zero-charge sector");
  Vector psi0 = Vector::Zero(basis.size());
  psi0[*idx] = 1.0;

  const SparseOperator h = assemble_hamiltonian(model, basis);
  const Trajectory traj = evolve(h, psi0, options.t, options.steps, options.evolve);
  rep.times = traj.times;
  rep.halving_difference = traj.halving_difference;
  rep.converged = traj.converged;

  const std::vector<int> links = string_links(lattice, n, r);
  std::vector<double> g0;
  double e0 = 0.0, q0 = 0.0;
  rep.interior_flux_min = 1.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const Vector& psi = traj.states[k];
    rep.norm_drift = std::max(rep.norm_drift, std::abs(psi.norm() - 1.0));
    rep.flux.push_back(flux_profile(model, basis, psi));
    rep.charge.push_back(charge_density(model, basis, psi));
    rep.energy.push_back(expectation(h, psi));
    rep.survival.push_back(std::norm(psi0.dot(psi)));
    const std::vector<double> g = gauss_expectations(model, basis, psi);
    const double q = std::accumulate(rep.charge.back().begin(), rep.charge.back().end(), 0.0);
    if (k == 0) {
      g0 = g;
      e0 = rep.energy[0];
      q0 = q;
    }
    rep.energy_drift = std::max(rep.energy_drift, std::abs(rep.energy.back() - e0));
    rep.charge_drift = std::max(rep.charge_drift, std::abs(q - q0));
    for (std::size_t i = 0; i < g.size(); ++i) rep.gauss_drift = std::max(rep.gauss_drift, std::abs(g[i] - g0[i]));
    for (std::size_t l = 0; l < rep.flux.back().size(); ++l)
      rep.profile_drift = std::max(rep.profile_drift, std::abs(rep.flux.back()[l] - rep.flux[0][l]));
    double mean = 0.0;
    for (int l : links) mean += rep.flux.back()[l];
    rep.interior_flux_min = std::min(rep.interior_flux_min, mean / static_cast<double>(links.size()));
  }
  return rep;
}

std::string dynamics_csv(const FluxTubeReport& report) {
  std::ostringstream os;
  os << "t,link,flux,charge_density\n";
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    const auto& flux = report.flux[k];
    const auto& charge = report.charge[k];
    const std::size_t rows = std::max(flux.size(), charge.size());
    // Link l runs from vertex l to l + 1 on a chain; the charge column holds vertex l.
    for (std::size_t i = 0; i < rows; ++i) {
      os << fmt_double(report.times[k]) << ',' << i << ',';
      if (i < flux.size()) os << fmt_double(flux[i]);
      os << ',';
      if (i < charge.size()) os << fmt_double(charge[i]);
      os << '\n';
    }
  }
  return os.str();
}

double single_plaquette_ground(const HamiltonianSpec& spec, const EigsOptions& eigs_options) {
  const Model model(spec, single_plaquette());
  const GaussSector sector = sector_basis(model, std::vector<int>(4, 0));
  const SparseOperator h = restrict_opsum(hamiltonian(model), model.space(), sector);
  return eigs(h, 1, eigs_options).values[0];
}

bool ConvergenceTable::strictly_decreasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].g2 == rows[i - 1].g2 && !(rows[i].gap < rows[i - 1].gap)) return false;
  return true;
}

double ConvergenceTable::ratio(double g2_value) const {
  const ConvergenceRow* first = nullptr;
  const ConvergenceRow* last = nullptr;
  for (const auto& row : rows)
    if (row.g2 == g2_value) {
      if (!first) first = &row;
      last = &row;
    }
  if (!first) throw std::invalid_argument("ratio: coupling not in the table");
  return last->gap / first->gap;
}

ConvergenceTable plaquette_convergence_study(const std::vector<double>& g2_list, const std::vector<int>& ell_list,
                                             int lambda_ref, const EigsOptions& eigs_options) {
  std::vector<int> ells = ell_list;
  std::sort(ells.begin(), ells.end());
  ConvergenceTable table;
  table.lambda_ref = lambda_ref;
  for (double g2 : g2_list) {
    HamiltonianSpec ks;
    ks.model = GaugeModel::ks_u1;
    ks.truncation = lambda_ref;
    ks.g2 = g2;
    const double ref = single_plaquette_ground(ks, eigs_options);
    table.g2.push_back(g2);
    table.reference.push_back(ref);
    for (int ell : ells) {
      HamiltonianSpec sg = ks;
      sg.model = GaugeModel::spin_gauge;
      sg.truncation = ell;
      const double e = single_plaquette_ground(sg, eigs_options);
      table.rows.push_back({g2, ell, e, std::abs(e - ref)});
    }
  }
  return table;
}

std::string convergence_csv(const ConvergenceTable& table) {
  std::ostringstream os;
  os << "g2,ell,E,gap_to_ref\n";
  for (const auto& r : table.rows)
    os << fmt_double(r.g2) << ',' << r.ell << ',' << fmt_double(r.energy) << ',' << fmt_double(r.gap) << '\n';
  return os.str();
}

bool ZnTrend::monotone() const {
  for (std::size_t i = 1; i < gap.size(); ++i)
    if (!(gap[i] < gap[i - 1])) return false;
  return true;
}

ZnTrend zn_u1_trend(double g2, const std::vector<int>& n_list, int lambda_ref, const EigsOptions& eigs_options) {
  ZnTrend t;
  t.g2 = g2;
  t.lambda_ref = lambda_ref;
  t.n = n_list;
  std::sort(t.n.begin(), t.n.end());

  HamiltonianSpec ks;
  ks.model = GaugeModel::ks_u1;
  ks.truncation = lambda_ref;
  ks.g2 = g2;
  t.reference = single_plaquette_ground(ks, eigs_options);

  const double pi = std::acos(-1.0);
  const int links = single_plaquette().link_count();
  for (int n : t.n) {
    HamiltonianSpec zn;
    zn.model = GaugeModel::zn;
    zn.truncation = n;
    zn.g2 = g2;
    const double delta = 2.0 * pi / n;
    zn.lambda_zn = g2 * g2 / (delta * delta);
    const double e = single_plaquette_ground(zn, eigs_options);
    t.raw.push_back(e);
    t.mapped.push_back((e + zn.lambda_zn * links) / g2);
    t.gap.push_back(std::abs(t.mapped.back() - t.reference));
  }
  return t;
}

EffectiveStudy effective_plaquette_study(int ell, double g2, double eta, const std::vector<double>& lambdas,
                                         const EigsOptions& eigs_options) {
  EffectiveStudy study;
  study.ell = ell;
  study.g2 = g2;
  study.eta = eta;
  for (double lambda : lambdas) {
    HamiltonianSpec spec;
    spec.model = GaugeModel::spin_gauge;
    spec.truncation = ell;
    spec.g2 = g2;
    spec.eta = eta;
    spec.lambda = lambda;
    spec.terms.magnetic = false;
    spec.terms.penalty = true;
    const Model model(spec, single_plaquette());

    const SparseOperator h0 = assemble(h_penalty(model), model.space());
    const SparseOperator v = assemble(h_microscopic_hopping(model), model.space());
    const SparseOperator h1 = assemble(h_electric(model), model.space());
    const GaussSector sector = sector_basis(model, std::vector<int>(4, 0));

    EffectiveHamiltonianReport rep = effective_second_order(h0, v, h1, sector, lambda);
    const DenseMatrix pattern = assemble(plaquette_pattern(model, 0), model.space(), sector.basis).dense();
    const auto [c, unmatched] = pattern_coefficient(rep.h_eff, pattern);

    EffectiveRow row;
    row.lambda = lambda;
    row.coefficient = c;
    row.unmatched = unmatched;
    row.leakage = rep.leakage;
    row.hermiticity = (rep.h_eff - rep.h_eff.adjoint()).cwiseAbs().maxCoeff();

    const int k = static_cast<int>(sector.dim());
    const EigenResult exact = eigs(h0 + v + h1, k, eigs_options);
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> eff(0.5 * (rep.h_eff + rep.h_eff.adjoint()));
    for (int i = 0; i < k; ++i)
      row.mismatch = std::max(row.mismatch, std::abs(exact.values[i] - eff.eigenvalues()[i]));
    study.rows.push_back(row);
  }
  return study;
}

}  // namespace lgt
