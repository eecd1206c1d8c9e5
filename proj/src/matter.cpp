#include "lgtlab/matter.hpp"

#include <stdexcept>

namespace lgt {

int species_per_vertex(FermionScheme scheme) {
  switch (scheme) {
    case FermionScheme::none:
      return 0;
    case FermionScheme::staggered:
      return 1;
    case FermionScheme::naive2d:
    case FermionScheme::su2fundamental:
      return 2;
  }
  return 0;
}

FermionLayout make_fermion_layout(const Lattice& lattice, FermionScheme scheme, int first_site) {
  FermionLayout l;
  l.scheme = scheme;
  l.vertex_count = scheme == FermionScheme::none ? 0 : lattice.vertex_count();
  l.species = species_per_vertex(scheme);
  l.first_site = first_site;
  if (l.modes() > 40) throw std::invalid_argument("fermion layout: too many modes for the basis width");
  return l;
}

int local_occupation(int species, int local_state, int s) { return (local_state >> (species - 1 - s)) & 1; }

LocalMatrix local_parity(int species) {
  const int d = 1 << species;
  LocalMatrix p = LocalMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    int n = 0;
    for (int s = 0; s < species; ++s) n += local_occupation(species, i, s);
    p(i, i) = (n % 2 == 0) ? 1.0 : -1.0;
  }
  return p;
}

LocalMatrix local_annihilator(int species, int s) {
  const int d = 1 << species;
  const int bit = 1 << (species - 1 - s);
  LocalMatrix c = LocalMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (!(i & bit)) continue;
    int before = 0;
    for (int t = 0; t < s; ++t) before += local_occupation(species, i, t);
    c(i ^ bit, i) = (before % 2 == 0) ? 1.0 : -1.0;
  }
  return c;
}

OpString annihilation(const FermionLayout& layout, int vertex, int s) {
  OpString op;
  const LocalMatrix parity = local_parity(layout.species);
  for (int u = 0; u < vertex; ++u) op = op * OpString::local(layout.site(u), parity);
  return op * OpString::local(layout.site(vertex), local_annihilator(layout.species, s));
}

OpString creation(const FermionLayout& layout, int vertex, int s) { return annihilation(layout, vertex, s).adjoint(); }

OpString number(const FermionLayout& layout, int vertex, int s) {
  const LocalMatrix c = local_annihilator(layout.species, s);
  return OpString::local(layout.site(vertex), c.adjoint() * c);
}

OpString hopping(const FermionLayout& layout, int v, int s, int w, int t) {
  return creation(layout, v, s) * annihilation(layout, w, t);
}

OpSum total_number(const FermionLayout& layout) {
  OpSum n;
  for (int v = 0; v < layout.vertex_count; ++v)
    for (int s = 0; s < layout.species; ++s) n += number(layout, v, s);
  return n;
}

FermionOps fermion_ops(const Lattice& lattice, FermionScheme scheme) {
  if (scheme == FermionScheme::none) throw std::invalid_argument("fermion_ops: no matter scheme");
  const FermionLayout layout = make_fermion_layout(lattice, scheme, 0);
  FermionOps ops;
  ops.space = ProductSpace(std::vector<int>(layout.vertex_count, layout.local_dim()));
  for (int v = 0; v < layout.vertex_count; ++v)
    for (int s = 0; s < layout.species; ++s) {
      ops.annihilators.push_back(assemble(annihilation(layout, v, s), ops.space));
      ops.creators.push_back(assemble(creation(layout, v, s), ops.space));
    }
  return ops;
}

OpSum staggered_charge(const FermionLayout& layout, const Lattice& lattice, int vertex) {
  OpSum q = number(layout, vertex, 0);
  if (lattice.staggered_sign(vertex) < 0) {
    q += OpString::local(layout.site(vertex), -LocalMatrix::Identity(2, 2));
  }
  return q;
}

OpSum naive_charge(const FermionLayout& layout, int vertex) {
  OpSum q;
  for (int s = 0; s < layout.species; ++s) q += number(layout, vertex, s);
  q += OpString::local(layout.site(vertex), -LocalMatrix::Identity(layout.local_dim(), layout.local_dim()));
  return q;
}

LocalMatrix su2_charge_local(int alpha) {
  LocalMatrix sigma = LocalMatrix::Zero(2, 2);
  if (alpha == 0) {
    sigma(0, 1) = 1.0;
    sigma(1, 0) = 1.0;
  } else if (alpha == 1) {
    sigma(0, 1) = cplx{0.0, -1.0};
    sigma(1, 0) = cplx{0.0, 1.0};
  } else {
    sigma(0, 0) = 1.0;
    sigma(1, 1) = -1.0;
  }
  LocalMatrix q = LocalMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (sigma(i, j) == cplx{0.0, 0.0}) continue;
      q += 0.5 * sigma(i, j) * local_annihilator(2, i).adjoint() * local_annihilator(2, j);
    }
  return q;
}

OpSum su2_charge(const FermionLayout& layout, int vertex, int alpha) {
  if (layout.scheme != FermionScheme::su2fundamental)
    throw std::invalid_argument("su2_charge: requires the su2fundamental scheme");
  return OpString::local(layout.site(vertex), su2_charge_local(alpha));
}

OpSum abelian_charge(const FermionLayout& layout, const Lattice& lattice, int vertex) {
  switch (layout.scheme) {
    case FermionScheme::staggered:
      return staggered_charge(layout, lattice, vertex);
    case FermionScheme::naive2d:
      return naive_charge(layout, vertex);
    default:
      throw std::invalid_argument("abelian_charge: scheme has no Abelian charge");
  }
}

std::vector<int> abelian_charge_values(const FermionLayout& layout, const Lattice& lattice, int vertex) {
  std::vector<int> q(layout.local_dim());
  for (int i = 0; i < layout.local_dim(); ++i) {
    int n = 0;
    for (int s = 0; s < layout.species; ++s) n += local_occupation(layout.species, i, s);
    if (layout.scheme == FermionScheme::staggered)
      q[i] = n - (lattice.staggered_sign(vertex) < 0 ? 1 : 0);
    else
      q[i] = n - 1;
  }
  return q;
}

std::vector<int> dirac_sea_digits(const FermionLayout& layout, const Lattice& lattice) {
  if (layout.scheme != FermionScheme::staggered && layout.scheme != FermionScheme::su2fundamental)
    throw std::invalid_argument("dirac_sea: requires staggered or su2fundamental matter");
  std::vector<int> digits(layout.vertex_count, 0);
  for (int v = 0; v < layout.vertex_count; ++v)
    if (lattice.staggered_sign(v) < 0) digits[v] = layout.local_dim() - 1;
  return digits;
}

std::uint64_t dirac_sea_state(const Lattice& lattice, FermionScheme scheme) {
  const FermionLayout layout = make_fermion_layout(lattice, scheme, 0);
  const ProductSpace space(std::vector<int>(layout.vertex_count, layout.local_dim()));
  const std::vector<int> digits = dirac_sea_digits(layout, lattice);
  return space.encode(digits);
}

}  // namespace lgt
