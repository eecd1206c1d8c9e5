#include "lgtlab/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace lgt {

std::string to_string(GaugeModel m) {
  switch (m) {
    case GaugeModel::ks_u1:
      return "ks_u1";
    case GaugeModel::spin_gauge:
      return "spin_gauge";
    case GaugeModel::zn:
      return "zn";
    case GaugeModel::su2:
      return "su2";
  }
  return "?";
}

std::string to_string(FermionScheme s) {
  switch (s) {
    case FermionScheme::none:
      return "none";
    case FermionScheme::staggered:
      return "staggered";
    case FermionScheme::naive2d:
      return "naive";
    case FermionScheme::su2fundamental:
      return "su2";
  }
  return "?";
}

GaugeModel gauge_model_from_string(const std::string& s) {
  if (s == "ks_u1") return GaugeModel::ks_u1;
  if (s == "spin_gauge") return GaugeModel::spin_gauge;
  if (s == "zn") return GaugeModel::zn;
  if (s == "su2") return GaugeModel::su2;
  throw std::invalid_argument("unknown gauge model '" + s + "'");
}

FermionScheme fermion_scheme_from_string(const std::string& s) {
  if (s == "none") return FermionScheme::none;
  if (s == "staggered") return FermionScheme::staggered;
  if (s == "naive") return FermionScheme::naive2d;
  if (s == "su2") return FermionScheme::su2fundamental;
  throw std::invalid_argument("unknown matter scheme '" + s + "'");
}

Model::Model(HamiltonianSpec spec, Lattice lattice, std::vector<int> static_color_vertices)
    : spec_(spec), lattice_(std::move(lattice)), static_vertices_(std::move(static_color_vertices)) {
  switch (spec_.model) {
    case GaugeModel::ks_u1:
      links_ = u1_ops(spec_.truncation);
      break;
    case GaugeModel::spin_gauge:
      links_ = spin_gauge_ops(spec_.truncation);
      break;
    case GaugeModel::zn:
      links_ = zn_ops(spec_.truncation);
      break;
    case GaugeModel::su2:
      if (spec_.truncation < 1) throw std::invalid_argument("su2 model needs J_max >= 1/2");
      su2_ = SU2LinkSpace(spec_.truncation);
      su2_u_ = truncated_rotation_matrix(*su2_, 1);
      break;
  }

  if (spec_.model == GaugeModel::su2) {
    if (spec_.matter != FermionScheme::none && spec_.matter != FermionScheme::su2fundamental)
      throw std::invalid_argument("su2 model requires su2 (two-color) matter");
  } else {
    if (spec_.matter == FermionScheme::su2fundamental)
      throw std::invalid_argument("su2 matter requires the su2 gauge model");
    if (!static_vertices_.empty()) throw std::invalid_argument("static color sites exist only for su2");
  }
  if (spec_.matter == FermionScheme::naive2d) {
    if (lattice_.spatial_dim() != 2) throw std::invalid_argument("naive fermions are two-dimensional");
    if (spec_.model == GaugeModel::zn) throw std::invalid_argument("naive fermions need U(1) or spin-gauge links");
  }

  std::vector<int> dims(lattice_.link_count(), link_dim());
  fermions_ = make_fermion_layout(lattice_, spec_.matter, lattice_.link_count());
  for (int v = 0; v < fermions_.vertex_count; ++v) dims.push_back(fermions_.local_dim());

  std::sort(static_vertices_.begin(), static_vertices_.end());
  if (std::adjacent_find(static_vertices_.begin(), static_vertices_.end()) != static_vertices_.end())
    throw std::invalid_argument("static color vertices must be distinct");
  static_site_of_vertex_.assign(lattice_.vertex_count(), -1);
  for (int v : static_vertices_) {
    if (v < 0 || v >= lattice_.vertex_count()) throw std::invalid_argument("static color vertex outside lattice");
    static_site_of_vertex_[v] = static_cast<int>(dims.size());
    dims.push_back(2);
  }
  space_ = ProductSpace(dims);
}

int Model::link_dim() const { return links_ ? links_->local_dim : su2_->local_dim(); }

int Model::static_site(int vertex) const { return static_site_of_vertex_[vertex]; }

LocalMatrix Model::link_operator() const {
  if (!links_) throw std::logic_error("link_operator: su2 links are matrix valued");
  return links_->link_operator();
}

}  // namespace lgt
