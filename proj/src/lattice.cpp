#include "lgtlab/lattice.hpp"

#include <string>

namespace lgt {

Lattice::Lattice(int spatial_dim, std::vector<int> sizes, Boundary boundary)
    : dim_(spatial_dim), sizes_(std::move(sizes)), boundary_(boundary) {
  if (dim_ < 1 || dim_ > 2)
    throw LatticeError("spatial_dim must be 1 or 2, got " + std::to_string(dim_));
  if (static_cast<int>(sizes_.size()) != dim_)
    throw LatticeError("sizes must have spatial_dim entries");
  for (int s : sizes_)
    if (s < 2) throw LatticeError("every size must be at least 2, got " + std::to_string(s));

  int nv = 1;
  for (int s : sizes_) nv *= s;
  coords_.reserve(nv);
  std::vector<int> c(dim_, 0);
  for (int v = 0; v < nv; ++v) {
    coords_.push_back(c);
    for (int k = dim_ - 1; k >= 0; --k) {
      if (++c[k] < sizes_[k]) break;
      c[k] = 0;
    }
  }

  link_lookup_.assign(static_cast<std::size_t>(nv) * dim_, -1);
  outgoing_.assign(nv, {});
  incoming_.assign(nv, {});
  for (int v = 0; v < nv; ++v) {
    for (int k = 0; k < dim_; ++k) {
      const int t = neighbor(v, k, +1);
      if (t < 0) continue;
      const int idx = static_cast<int>(links_.size());
      links_.push_back({v, t, k});
      link_lookup_[static_cast<std::size_t>(v) * dim_ + k] = idx;
      outgoing_[v].push_back(idx);
      incoming_[t].push_back(idx);
    }
  }

  if (dim_ == 2) {
    for (int v = 0; v < nv; ++v) {
      const int vx = neighbor(v, 0, +1);
      const int vy = neighbor(v, 1, +1);
      if (vx < 0 || vy < 0) continue;
      Plaquette p;
      p.base_vertex = v;
      p.links = {link_index(v, 0), link_index(vx, 1), link_index(vy, 0), link_index(v, 1)};
      bool complete = true;
      for (int l : p.links) complete = complete && l >= 0;
      if (complete) plaquettes_.push_back(p);
    }
  }
}

int Lattice::vertex_index(const std::vector<int>& coords) const {
  if (static_cast<int>(coords.size()) != dim_) throw LatticeError("coordinate rank mismatch");
  int idx = 0;
  for (int k = 0; k < dim_; ++k) {
    if (coords[k] < 0 || coords[k] >= sizes_[k]) throw LatticeError("coordinates outside lattice");
    idx = idx * sizes_[k] + coords[k];
  }
  return idx;
}

int Lattice::link_index(int vertex, int direction) const {
  return link_lookup_[static_cast<std::size_t>(vertex) * dim_ + direction];
}

int Lattice::neighbor(int vertex, int direction, int step) const {
  std::vector<int> c = coords_[vertex];
  c[direction] += step;
  if (c[direction] < 0 || c[direction] >= sizes_[direction]) {
    if (boundary_ == Boundary::open) return -1;
    c[direction] = (c[direction] % sizes_[direction] + sizes_[direction]) % sizes_[direction];
  }
  return vertex_index(c);
}

int Lattice::staggered_sign(int vertex) const { return lgt::staggered_sign(coords_[vertex]); }

int staggered_sign(const std::vector<int>& coords) {
  int s = 0;
  for (int c : coords) s += c;
  return (s % 2 == 0) ? 1 : -1;
}

}  // namespace lgt
