#pragma once

// A concrete lattice system: lattice + link algebra + optional matter, laid
// out on one product space. Sites are the links (in lattice link order),
// then one matter site per vertex, then the static color sites used for
// non-Abelian external charges.

#include <optional>
#include <string>
#include <vector>

#include "lgtlab/lattice.hpp"
#include "lgtlab/linkalg.hpp"
#include "lgtlab/matter.hpp"
#include "lgtlab/su2rep.hpp"

namespace lgt {

enum class GaugeModel { ks_u1, spin_gauge, zn, su2 };

struct TermToggles {
  bool electric = true;
  bool magnetic = true;
  bool gauge_matter = true;
  bool mass = true;
  bool penalty = false;
};

struct HamiltonianSpec {
  GaugeModel model = GaugeModel::ks_u1;
  /// Lambda (ks_u1), l (spin_gauge), N (zn) or 2 J_max (su2).
  int truncation = 1;
  double g2 = 1.0;
  double epsilon = 0.0;
  double mass = 0.0;
  double lambda = 0.0;     // penalty strength
  double lambda_zn = 1.0;  // Z_N electric coupling
  double eta = 0.0;        // microscopic hopping strength
  FermionScheme matter = FermionScheme::none;
  TermToggles terms;
};

std::string to_string(GaugeModel m);
std::string to_string(FermionScheme s);
GaugeModel gauge_model_from_string(const std::string& s);
FermionScheme fermion_scheme_from_string(const std::string& s);

class Model {
 public:
  /// `static_color_vertices` attaches a spin-1/2 color site to each listed
  /// vertex (su2 only); it carries the external charge Q^a = T^a.
  Model(HamiltonianSpec spec, Lattice lattice, std::vector<int> static_color_vertices = {});

  const HamiltonianSpec& spec() const { return spec_; }
  const Lattice& lattice() const { return lattice_; }
  const ProductSpace& space() const { return space_; }
  const FermionLayout& fermions() const { return fermions_; }
  bool has_matter() const { return fermions_.scheme != FermionScheme::none; }
  bool abelian() const { return spec_.model != GaugeModel::su2; }

  /// Abelian link algebra (ks_u1, spin_gauge, zn).
  const LinkOperatorSet& links() const { return *links_; }
  /// SU(2) link space and the fundamental truncated rotation matrix.
  const SU2LinkSpace& su2_space() const { return *su2_; }
  const TruncatedRotationMatrix& su2_u() const { return *su2_u_; }

  int link_dim() const;
  int link_site(int link) const { return link; }
  int vertex_site(int vertex) const { return fermions_.site(vertex); }
  const std::vector<int>& static_color_vertices() const { return static_vertices_; }
  /// Site of the static color charge on `vertex`, or -1.
  int static_site(int vertex) const;

  /// Link operator that plays U in the Hamiltonian.
  LocalMatrix link_operator() const;

 private:
  HamiltonianSpec spec_;
  Lattice lattice_;
  std::optional<LinkOperatorSet> links_;
  std::optional<SU2LinkSpace> su2_;
  std::optional<TruncatedRotationMatrix> su2_u_;
  FermionLayout fermions_;
  std::vector<int> static_vertices_;
  std::vector<int> static_site_of_vertex_;
  ProductSpace space_;
};

}  // namespace lgt
