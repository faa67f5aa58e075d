#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "csmanet/types.hpp"

namespace csmanet {

/// Undirected conflict graph over links. Vertices and adjacency lists are
/// kept sorted by id; the graph is immutable after construction, so values
/// can be shared freely between threads.
class ContentionGraph {
 public:
  ContentionGraph() = default;

  /// Validates the input: no duplicate ids, no self-edges, every edge
  /// endpoint present. Duplicate edges are collapsed.
  ContentionGraph(std::vector<LinkId> vertices,
                  std::vector<std::pair<LinkId, LinkId>> edges);

  int size() const { return static_cast<int>(ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  std::span<const LinkId> ids() const { return ids_; }

  bool has_link(LinkId id) const;
  /// Internal index of a link (position in the sorted id list).
  int index_of(LinkId id) const;  // throws GraphError for unknown ids
  LinkId id_of(int index) const { return ids_[static_cast<std::size_t>(index)]; }

  /// Neighbor indexes of the vertex at `index`, sorted ascending.
  std::span<const int> neighbors(int index) const {
    return adj_[static_cast<std::size_t>(index)];
  }
  std::vector<LinkId> neighbor_ids(LinkId id) const;
  int degree(int index) const {
    return static_cast<int>(adj_[static_cast<std::size_t>(index)].size());
  }
  bool adjacent(LinkId a, LinkId b) const;

  /// Canonical edge list: (a, b) with a < b, sorted.
  std::span<const std::pair<LinkId, LinkId>> edges() const { return edges_; }

  double mean_degree() const;

 private:
  std::vector<LinkId> ids_;             // sorted
  std::vector<std::vector<int>> adj_;   // sorted neighbor indexes
  std::vector<std::pair<LinkId, LinkId>> edges_;
};

/// Cycle C_n on ids 1..n. Requires n >= 3.
ContentionGraph ring_graph(int n);

/// Cayley tree: root link (id 1) with z neighbors; every link in shells
/// 1..layers-1 gets z-1 children, so each interior link has exactly z
/// neighbors. "layers" counts the shells of links around the root, the
/// root itself being shell 0; layers = 1 gives the single root link.
/// Requires z >= 2 and layers >= 1.
ContentionGraph cayley_tree_graph(int z, int layers);

/// n links placed uniformly at random in the unit square (ids 1..n); two
/// links contend iff within a radius calibrated by bisection so that the
/// realized mean degree lands within +/-0.5 of the target. Ties resolve
/// toward the smaller radius. Deterministic given the seed.
ContentionGraph random_geometric_graph(int n, double target_mean_degree,
                                       std::uint64_t seed);

/// Local contention graph of link j: the union of the closed one-hop
/// graphs of j and of each of j's neighbors. Contains every vertex within
/// two hops of j, and exactly the edges with both endpoints inside some
/// neighbor's closed neighborhood.
ContentionGraph two_hop_local_graph(const ContentionGraph& g, LinkId j);

bool is_forest(const ContentionGraph& g);
bool is_connected(const ContentionGraph& g);
inline bool is_tree(const ContentionGraph& g) {
  return g.size() > 0 && is_forest(g) && is_connected(g);
}

/// Longest shortest path, in hops. 0 for empty or single-vertex graphs;
/// computed per connected component (disconnected parts do not count as
/// infinite).
int graph_diameter(const ContentionGraph& g);

} // namespace csmanet
