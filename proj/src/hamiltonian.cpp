#include "lgtlab/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace lgt {

OpSum h_electric(const Model& model) {
  const HamiltonianSpec& spec = model.spec();
  LocalMatrix local;
  switch (spec.model) {
    case GaugeModel::ks_u1:
    case GaugeModel::spin_gauge:
      local = 0.5 * spec.g2 * model.links().electric * model.links().electric;
      break;
    case GaugeModel::su2:
      local = 0.5 * spec.g2 * model.su2_space().casimir();
      break;
    case GaugeModel::zn:
      local = -0.5 * spec.lambda_zn * (model.links().clock + model.links().clock.adjoint());
      break;
  }
  OpSum h;
  for (int l = 0; l < model.lattice().link_count(); ++l) h += OpString::local(model.link_site(l), local);
  return h;
}

OpSum plaquette_pattern(const Model& model, int plaquette) {
  const Plaquette& p = model.lattice().plaquette(plaquette);
  int site[4];
  for (int i = 0; i < 4; ++i) site[i] = model.link_site(p.links[i]);

  if (model.spec().model == GaugeModel::su2) {
    // tr(U1 U2 U3^dag U4^dag) over the fundamental indices.
    const TruncatedRotationMatrix& u = model.su2_u();
    OpSum loop;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d)
            loop += OpString::local(site[0], u(a, b)) * OpString::local(site[1], u(b, c)) *
                    OpString::local(site[2], u(d, c).adjoint()) * OpString::local(site[3], u(a, d).adjoint());
    return loop + loop.adjoint();
  }

  const LocalMatrix fwd = model.spec().model == GaugeModel::zn ? model.links().lower : model.link_operator();
  const LocalMatrix bwd = fwd.adjoint();
  const OpString loop = OpString::local(site[0], fwd) * OpString::local(site[1], fwd) *
                        OpString::local(site[2], bwd) * OpString::local(site[3], bwd);
  return OpSum(loop) + OpSum(loop.adjoint());
}

OpSum h_magnetic(const Model& model) {
  if (model.lattice().spatial_dim() != 2) throw std::invalid_argument("magnetic term requires a 2D lattice");
  const double coeff = model.spec().model == GaugeModel::zn ? -0.5 : -0.5 / model.spec().g2;
  OpSum h;
  for (int p = 0; p < model.lattice().plaquette_count(); ++p) h += plaquette_pattern(model, p);
  return coeff * h;
}

namespace {

LocalMatrix pauli(int k) {
  LocalMatrix s = LocalMatrix::Zero(2, 2);
  if (k == 0) {
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
  } else if (k == 1) {
    s(0, 1) = cplx{0.0, -1.0};
    s(1, 0) = cplx{0.0, 1.0};
  } else {
    s(0, 0) = 1.0;
    s(1, 1) = -1.0;
  }
  return s;
}

}  // namespace

OpSum h_gauge_matter(const Model& model) {
  OpSum h;
  if (!model.has_matter()) return h;
  const HamiltonianSpec& spec = model.spec();
  const Lattice& lat = model.lattice();
  const FermionLayout& f = model.fermions();

  for (int l = 0; l < lat.link_count(); ++l) {
    const Link& link = lat.link(l);
    const int n = link.origin, t = link.target;
    switch (f.scheme) {
      case FermionScheme::staggered: {
        OpSum term = hopping(f, n, 0, t, 0) * OpSum(OpString::local(model.link_site(l), model.link_operator()));
        h += term + term.adjoint();
        break;
      }
      case FermionScheme::naive2d: {
        const LocalMatrix sigma = pauli(link.direction);
        OpSum term;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            if (sigma(i, j) != cplx{0.0, 0.0}) term += hopping(f, n, i, t, j).scaled(sigma(i, j));
        term = term * OpSum(OpString::local(model.link_site(l), model.link_operator()));
        h += cplx{0.0, 1.0} * (term - term.adjoint());
        break;
      }
      case FermionScheme::su2fundamental: {
        const TruncatedRotationMatrix& u = model.su2_u();
        OpSum term;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            term += hopping(f, n, i, t, j) * OpString::local(model.link_site(l), u(i, j));
        h += term + term.adjoint();
        break;
      }
      case FermionScheme::none:
        break;
    }
  }
  return spec.epsilon * h;
}

OpSum h_mass(const Model& model) {
  OpSum h;
  if (!model.has_matter()) return h;
  const Lattice& lat = model.lattice();
  const FermionLayout& f = model.fermions();
  for (int v = 0; v < lat.vertex_count(); ++v) {
    if (f.scheme == FermionScheme::naive2d) {
      h += number(f, v, 0);
      h += number(f, v, 1).scaled(-1.0);
    } else {
      for (int s = 0; s < f.species; ++s) h += number(f, v, s).scaled(lat.staggered_sign(v));
    }
  }
  return model.spec().mass * h;
}

OpSum h_penalty(const Model& model) {
  OpSum h;
  for (const auto& g : gauss_generators(model)) {
    if (g.cyclic > 0) {
      const OpSum u = g.op();
      const int d0 = model.space().dim(0);
      h += OpString::local(0, 2.0 * LocalMatrix::Identity(d0, d0));
      h -= u + u.adjoint();
    } else {
      const OpSum gh = g.hermitian_part();
      h += gh * gh;
    }
  }
  return model.spec().lambda * h;
}

OpSum h_microscopic_hopping(const Model& model) {
  const Lattice& lat = model.lattice();
  if (lat.spatial_dim() != 2) throw std::invalid_argument("microscopic hopping requires a 2D lattice");
  if (model.spec().model != GaugeModel::ks_u1 && model.spec().model != GaugeModel::spin_gauge)
    throw std::invalid_argument("microscopic hopping requires U(1) or spin-gauge links");
  const LocalMatrix up = model.link_operator();
  const LocalMatrix down = up.adjoint();

  OpSum h;
  for (int v = 0; v < lat.vertex_count(); ++v) {
    // (link, orientation) pairs touching v: +1 when the link starts at v.
    std::vector<std::pair<int, int>> touching[2];
    for (int l : lat.outgoing_links(v)) touching[lat.link(l).direction].push_back({l, +1});
    for (int l : lat.incoming_links(v)) touching[lat.link(l).direction].push_back({l, -1});
    for (const auto& [a, oa] : touching[0])
      for (const auto& [b, ob] : touching[1]) {
        const int sigma = -oa * ob;
        const OpString term =
            OpString::local(model.link_site(a), up) * OpString::local(model.link_site(b), sigma > 0 ? up : down);
        h += term;
        h += term.adjoint();
      }
  }
  return model.spec().eta * h;
}

OpSum hamiltonian(const Model& model) {
  const TermToggles& t = model.spec().terms;
  OpSum h;
  if (t.electric) h += h_electric(model);
  if (t.magnetic && model.lattice().spatial_dim() == 2) h += h_magnetic(model);
  if (model.has_matter()) {
    if (t.gauge_matter && model.spec().epsilon != 0.0) h += h_gauge_matter(model);
    if (t.mass && model.spec().mass != 0.0) h += h_mass(model);
  }
  if (t.penalty && model.spec().lambda != 0.0) h += h_penalty(model);
  return h;
}

SparseOperator assemble_hamiltonian(const Model& model, const StateBasis& basis, AssemblyStats* stats) {
  SparseOperator h = assemble(hamiltonian(model), model.space(), basis, stats);
  h.set_hermitian(true);
  return h;
}

}  // namespace lgt
