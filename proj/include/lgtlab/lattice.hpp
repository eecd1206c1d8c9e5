#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lgt {

enum class Boundary { open, periodic };

/// One unit square. Links 0 and 1 are traversed forward, links 2 and 3
/// backward: with base vertex n the loop is
///   (n, x) -> (n + x, y) -> (n + y, x)^dagger -> (n, y)^dagger.
struct Plaquette {
  std::array<int, 4> links{};
  std::array<bool, 4> forward{true, true, false, false};
  int base_vertex = 0;
};

struct Link {
  int origin = 0;     // vertex the link emanates from
  int target = 0;     // vertex it points to
  int direction = 0;  // 0-based spatial direction k
};

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hypercubic lattice in one or two spatial dimensions. Vertices are ordered
/// lexicographically with the last coordinate fastest; links are ordered by
/// (origin vertex, direction).
class Lattice {
 public:
  Lattice(int spatial_dim, std::vector<int> sizes, Boundary boundary = Boundary::open);

  int spatial_dim() const { return dim_; }
  const std::vector<int>& sizes() const { return sizes_; }
  Boundary boundary() const { return boundary_; }

  int vertex_count() const { return static_cast<int>(coords_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  int plaquette_count() const { return static_cast<int>(plaquettes_.size()); }

  const std::vector<int>& coordinates(int vertex) const { return coords_[vertex]; }
  int vertex_index(const std::vector<int>& coords) const;

  const Link& link(int index) const { return links_[index]; }
  const std::vector<Link>& links() const { return links_; }
  /// -1 when the link does not exist (open far edge).
  int link_index(int vertex, int direction) const;

  const Plaquette& plaquette(int index) const { return plaquettes_[index]; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  const std::vector<int>& outgoing_links(int vertex) const { return outgoing_[vertex]; }
  const std::vector<int>& incoming_links(int vertex) const { return incoming_[vertex]; }

  /// Neighbour in direction k (+1 or -1 step); -1 when it falls off an open edge.
  int neighbor(int vertex, int direction, int step) const;

  /// (-1)^(sum of coordinates).
  int staggered_sign(int vertex) const;

 private:
  int dim_;
  std::vector<int> sizes_;
  Boundary boundary_;
  std::vector<std::vector<int>> coords_;
  std::vector<Link> links_;
  std::vector<int> link_lookup_;  // vertex * dim + direction -> link or -1
  std::vector<Plaquette> plaquettes_;
  std::vector<std::vector<int>> outgoing_;
  std::vector<std::vector<int>> incoming_;
};

int staggered_sign(const std::vector<int>& coords);

}  // namespace lgt
