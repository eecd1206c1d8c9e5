#pragma once

// Fermionic matter on lattice vertices. Each vertex carries one product-space
// site of dimension 2^species. Modes are ordered vertex-lexicographically with
// species fastest, and the Jordan-Wigner string runs over all earlier modes.
// Inside a vertex site, species 0 is the most significant occupation bit.

#include <cstdint>
#include <vector>

#include "lgtlab/lattice.hpp"
#include "lgtlab/operator.hpp"

namespace lgt {

enum class FermionScheme { none, staggered, naive2d, su2fundamental };

int species_per_vertex(FermionScheme scheme);

struct FermionLayout {
  FermionScheme scheme = FermionScheme::none;
  int vertex_count = 0;
  int species = 0;
  int first_site = 0;  // product-space site of vertex 0

  int local_dim() const { return 1 << species; }
  int site(int vertex) const { return first_site + vertex; }
  int modes() const { return vertex_count * species; }
  int mode(int vertex, int s) const { return vertex * species + s; }
};

FermionLayout make_fermion_layout(const Lattice& lattice, FermionScheme scheme, int first_site);

/// Single-vertex matrices on the 2^species local space.
LocalMatrix local_annihilator(int species, int s);
LocalMatrix local_parity(int species);
int local_occupation(int species, int local_state, int s);

/// c_{v,s}, c^dagger_{v,s}, n_{v,s} and the bilinear c^dagger_{v,s} c_{w,t}
/// as operator strings including the Jordan-Wigner string.
OpString annihilation(const FermionLayout& layout, int vertex, int s);
OpString creation(const FermionLayout& layout, int vertex, int s);
OpString number(const FermionLayout& layout, int vertex, int s);
OpString hopping(const FermionLayout& layout, int v, int s, int w, int t);
OpSum total_number(const FermionLayout& layout);

/// Standalone matter-only operators on the 2^modes space, one per mode in
/// global mode order.
struct FermionOps {
  ProductSpace space;
  std::vector<SparseOperator> annihilators;
  std::vector<SparseOperator> creators;
};

FermionOps fermion_ops(const Lattice& lattice, FermionScheme scheme);

/// Staggered charge psi^dag psi - (1 - (-1)^{sum n_k}) / 2.
OpSum staggered_charge(const FermionLayout& layout, const Lattice& lattice, int vertex);
/// Naive-fermion charge psi^dag psi - 1.
OpSum naive_charge(const FermionLayout& layout, int vertex);
/// Q^alpha = (1/2) psi^dag sigma^alpha psi, alpha in {0,1,2} for x, y, z.
OpSum su2_charge(const FermionLayout& layout, int vertex, int alpha);
LocalMatrix su2_charge_local(int alpha);
/// The matter charge appropriate for the layout's scheme (staggered or naive).
OpSum abelian_charge(const FermionLayout& layout, const Lattice& lattice, int vertex);
/// Diagonal of the Abelian charge on one vertex site.
std::vector<int> abelian_charge_values(const FermionLayout& layout, const Lattice& lattice, int vertex);

/// Local vertex-site digits of the Dirac sea: even vertices empty, odd vertices
/// filled with every species.
std::vector<int> dirac_sea_digits(const FermionLayout& layout, const Lattice& lattice);

/// Dirac-sea basis index on the matter-only space of fermion_ops.
std::uint64_t dirac_sea_state(const Lattice& lattice, FermionScheme scheme);

}  // namespace lgt
