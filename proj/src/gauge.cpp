#include "lgtlab/gauge.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lgt {

OpSum GaussGenerator::hermitian_part() const {
  OpSum s;
  for (const auto& t : terms) s += OpString::local(t.site, t.matrix);
  return s;
}

OpSum GaussGenerator::op() const {
  if (cyclic == 0) return hermitian_part();
  const double delta = 2.0 * std::numbers::pi / cyclic;
  OpString u;
  for (const auto& t : terms) u = u * OpString::local(t.site, exp_i_hermitian(-delta * t.matrix));
  return u;
}

namespace {

LocalMatrix diagonal_matrix(const std::vector<int>& values) {
  const int d = static_cast<int>(values.size());
  LocalMatrix m = LocalMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = values[i];
  return m;
}

}  // namespace

std::vector<GaussGenerator> gauss_generators(const Model& model) {
  const Lattice& lat = model.lattice();
  std::vector<GaussGenerator> gens;
  if (model.abelian()) {
    const LinkOperatorSet& ops = model.links();
    for (int v = 0; v < lat.vertex_count(); ++v) {
      GaussGenerator g;
      g.vertex = v;
      g.cyclic = model.spec().model == GaugeModel::zn ? ops.truncation : 0;
      for (int l : lat.outgoing_links(v)) g.terms.push_back({model.link_site(l), ops.electric});
      for (int l : lat.incoming_links(v)) g.terms.push_back({model.link_site(l), -ops.electric});
      if (model.has_matter()) {
        std::vector<int> q = abelian_charge_values(model.fermions(), lat, v);
        for (int& x : q) x = -x;
        g.terms.push_back({model.vertex_site(v), diagonal_matrix(q)});
      }
      gens.push_back(std::move(g));
    }
    return gens;
  }

  const SU2LinkSpace& space = model.su2_space();
  const auto half = spin_matrices(1);
  for (int v = 0; v < lat.vertex_count(); ++v)
    for (int a = 0; a < 3; ++a) {
      GaussGenerator g;
      g.vertex = v;
      g.component = a;
      for (int l : lat.outgoing_links(v)) g.terms.push_back({model.link_site(l), space.left()[a]});
      for (int l : lat.incoming_links(v)) g.terms.push_back({model.link_site(l), -space.right()[a]});
      if (model.has_matter()) g.terms.push_back({model.vertex_site(v), -su2_charge_local(a)});
      if (model.static_site(v) >= 0) g.terms.push_back({model.static_site(v), -half[a]});
      gens.push_back(std::move(g));
    }
  return gens;
}

std::vector<SparseOperator> gauss_operators(const Model& model, const StateBasis& basis) {
  std::vector<SparseOperator> out;
  for (const auto& g : gauss_generators(model)) {
    SparseOperator op = assemble(g.op(), model.space(), basis);
    op.set_hermitian(g.cyclic == 0);
    out.push_back(std::move(op));
  }
  return out;
}

std::vector<SparseOperator> gauss_operators(const Model& model) {
  return gauss_operators(model, StateBasis::full(model.space().size()));
}

namespace {

struct Enumerator {
  const ProductSpace& space;
  const std::vector<DiagonalConstraint>& constraints;
  std::vector<std::vector<std::pair<int, const std::vector<int>*>>> site_terms;
  std::vector<int> last_site;
  std::vector<std::vector<long>> rem_min, rem_max;  // [constraint][site], sites >= site

  Enumerator(const ProductSpace& s, const std::vector<DiagonalConstraint>& c) : space(s), constraints(c) {
    const int n = space.sites();
    site_terms.assign(n, {});
    last_site.assign(c.size(), -1);
    rem_min.assign(c.size(), std::vector<long>(n + 1, 0));
    rem_max.assign(c.size(), std::vector<long>(n + 1, 0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      std::vector<long> lo(n, 0), hi(n, 0);
      for (const auto& [site, values] : c[k].terms) {
        if (static_cast<int>(values.size()) != space.dim(site))
          throw std::invalid_argument("constraint values do not match the site dimension");
        site_terms[site].push_back({static_cast<int>(k), &values});
        last_site[k] = std::max(last_site[k], site);
        lo[site] += *std::min_element(values.begin(), values.end());
        hi[site] += *std::max_element(values.begin(), values.end());
      }
      for (int i = n - 1; i >= 0; --i) {
        rem_min[k][i] = rem_min[k][i + 1] + lo[i];
        rem_max[k][i] = rem_max[k][i + 1] + hi[i];
      }
    }
  }

  // Adds the contributions of `digit` on `site` and tests feasibility.
  bool place(int site, int digit, std::vector<long>& partial) const {
    bool ok = true;
    for (const auto& [k, values] : site_terms[site]) {
      partial[k] += (*values)[digit];
      const DiagonalConstraint& c = constraints[k];
      const long need = c.target - partial[k];
      if (c.modulus > 0) {
        if (last_site[k] == site && ((need % c.modulus) + c.modulus) % c.modulus != 0) ok = false;
      } else if (need < rem_min[k][site + 1] || need > rem_max[k][site + 1]) {
        ok = false;
      }
    }
    return ok;
  }

  void unplace(int site, int digit, std::vector<long>& partial) const {
    for (const auto& [k, values] : site_terms[site]) partial[k] -= (*values)[digit];
  }

  void dfs(int site, std::uint64_t index, std::vector<long>& partial, std::vector<std::uint64_t>& out) const {
    if (site == space.sites()) {
      out.push_back(index);
      return;
    }
    for (int d = 0; d < space.dim(site); ++d) {
      if (place(site, d, partial)) dfs(site + 1, index + d * space.stride(site), partial, out);
      unplace(site, d, partial);
    }
  }
};

}  // namespace

std::vector<std::uint64_t> enumerate_constrained(const ProductSpace& space,
                                                 const std::vector<DiagonalConstraint>& constraints) {
  const Enumerator e(space, constraints);
  const int n = space.sites();

  // Fix a prefix of leading sites and distribute prefixes over threads;
  // concatenating per-prefix results in prefix order keeps the output sorted.
  int prefix_sites = 0;
  std::uint64_t prefixes = 1;
  while (prefix_sites < n && prefixes < 256) prefixes *= space.dim(prefix_sites++);

  std::vector<std::vector<std::uint64_t>> found(prefixes);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(prefixes); ++p) {
    std::vector<long> partial(constraints.size(), 0);
    std::uint64_t rest = static_cast<std::uint64_t>(p);
    std::vector<int> digits(prefix_sites);
    for (int s = prefix_sites - 1; s >= 0; --s) {
      digits[s] = static_cast<int>(rest % space.dim(s));
      rest /= space.dim(s);
    }
    bool ok = true;
    std::uint64_t index = 0;
    for (int s = 0; s < prefix_sites && ok; ++s) {
      ok = e.place(s, digits[s], partial);
      index += digits[s] * space.stride(s);
    }
    if (ok) e.dfs(prefix_sites, index, partial, found[p]);
  }

  std::vector<std::uint64_t> out;
  for (const auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

namespace {

// Integer diagonal of a site term, scaled by `scale`.
std::vector<int> integer_diagonal(const LocalMatrix& m, double scale) {
  if (!m.isDiagonal(1e-14)) throw std::logic_error("constraint term is not diagonal");
  std::vector<int> v(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double x = m(i, i).real() * scale;
    v[i] = static_cast<int>(std::lround(x));
    if (std::abs(x - v[i]) > 1e-9) throw std::logic_error("constraint term is not integer valued");
  }
  return v;
}

GaussSector abelian_sector(const Model& model, const std::vector<int>& charges) {
  const int nv = model.lattice().vertex_count();
  if (static_cast<int>(charges.size()) != nv)
    throw std::invalid_argument("sector_basis: need one static charge per vertex");
  std::vector<DiagonalConstraint> cons;
  for (const auto& g : gauss_generators(model)) {
    DiagonalConstraint c;
    for (const auto& t : g.terms) c.terms.push_back({t.site, integer_diagonal(t.matrix, 1.0)});
    c.target = charges[g.vertex];
    c.modulus = g.cyclic;
    cons.push_back(std::move(c));
  }
  auto states = enumerate_constrained(model.space(), cons);
  if (states.empty()) throw EmptySectorError("Gauss sector is empty for the requested static charges");
  GaussSector s;
  s.charges = charges;
  s.basis = StateBasis::subset(std::move(states));
  return s;
}

GaussSector su2_singlet_sector(const Model& model) {
  const auto gens = gauss_generators(model);
  std::vector<DiagonalConstraint> cons;
  OpSum casimir;
  for (const auto& g : gens) {
    if (g.component == 2) {
      DiagonalConstraint c;
      for (const auto& t : g.terms) c.terms.push_back({t.site, integer_diagonal(t.matrix, 2.0)});
      cons.push_back(std::move(c));
    } else {
      const OpSum h = g.hermitian_part();
      casimir += h * h;
    }
  }
  auto states = enumerate_constrained(model.space(), cons);
  if (states.empty()) throw EmptySectorError("SU(2) sector is empty: no G^z = 0 states");
  constexpr std::size_t kDenseLimit = 6000;
  if (states.size() > kDenseLimit)
    throw NumericalError("SU(2) sector: G^z = 0 subspace of dimension " + std::to_string(states.size()) +
                         " exceeds the dense kernel limit");

  GaussSector s;
  s.charges.assign(model.lattice().vertex_count(), 0);
  s.basis = StateBasis::subset(std::move(states));
  const DenseMatrix c = assemble(casimir, model.space(), s.basis).dense();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(c);
  if (es.info() != Eigen::Success) throw NumericalError("SU(2) sector: eigensolver failed");
  constexpr double kTol = 1e-10;
  int k = 0;
  while (k < es.eigenvalues().size() && std::abs(es.eigenvalues()(k)) < kTol) ++k;
  if (k == 0) throw EmptySectorError("SU(2) singlet sector is empty");
  s.isometry = es.eigenvectors().leftCols(k);
  return s;
}

}  // namespace

GaussSector sector_basis(const Model& model, const std::vector<int>& charges) {
  if (model.abelian()) return abelian_sector(model, charges);
  for (int q : charges)
    if (q != 0) throw std::invalid_argument("sector_basis: SU(2) sectors support zero charge only");
  return su2_singlet_sector(model);
}

OpString gauge_transformation(const Model& model, const std::vector<double>& angles) {
  const auto gens = gauss_generators(model);
  if (angles.size() != gens.size()) throw std::invalid_argument("gauge_transformation: one angle per generator");
  const ProductSpace& space = model.space();
  std::vector<LocalMatrix> h(space.sites());
  for (int s = 0; s < space.sites(); ++s) h[s] = LocalMatrix::Zero(space.dim(s), space.dim(s));
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (const auto& t : gens[g].terms) h[t.site] += angles[g] * t.matrix;
  OpString u;
  for (int s = 0; s < space.sites(); ++s)
    if (!h[s].isZero(0.0)) u = u * OpString::local(s, exp_i_hermitian(h[s]));
  return u;
}

SparseOperator gauge_transformation_unitary(const Model& model, const std::vector<double>& angles,
                                            const StateBasis& basis) {
  return assemble(gauge_transformation(model, angles), model.space(), basis);
}

std::vector<double> canonical_sign_transform(const Lattice& lattice, const std::vector<double>& link_values) {
  if (static_cast<int>(link_values.size()) != lattice.link_count())
    throw std::invalid_argument("canonical_sign_transform: one value per link");
  std::vector<double> out(link_values.size());
  for (int l = 0; l < lattice.link_count(); ++l)
    out[l] = lattice.staggered_sign(lattice.link(l).origin) * link_values[l];
  return out;
}

}  // namespace lgt
