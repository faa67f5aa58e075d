#pragma once

#include <string>
#include <utility>
#include <vector>

#include "csmanet/cliques.hpp"
#include "csmanet/graph.hpp"

namespace csmanet {

/// A region: a clique of the contention graph, placed at the level where it
/// first appeared during construction. Region identity is its member set.
struct Region {
  std::vector<LinkId> members;  // sorted
  int level = 0;
};

/// Leveled DAG of clique regions with directed parent -> child edges.
/// Level 0 holds the maximal cliques; deeper levels hold intersections.
/// Structure (descendant closures, external-message edge sets) is
/// precomputed at assembly; the graph is immutable afterwards.
class RegionGraph {
 public:
  /// Wires up a region graph from explicit parts and precomputes the
  /// closures. Performs no structural validation; run
  /// validate_region_graph to check an assembled graph.
  static RegionGraph assemble(std::vector<Region> regions,
                              std::vector<std::pair<int, int>> edges);

  const std::vector<Region>& regions() const { return regions_; }
  int region_count() const { return static_cast<int>(regions_.size()); }

  /// Directed edges as (parent index, child index), deterministic order.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Index of a region by member set; -1 when absent.
  int find(const std::vector<LinkId>& members) const;

  /// Regions containing the given link, sorted by (size, members).
  std::vector<int> regions_containing(LinkId id) const;
  /// The smallest such region (used for throughput extraction); -1 if none.
  int smallest_region_containing(LinkId id) const;

  /// R plus all regions reachable along directed edges, sorted.
  const std::vector<int>& descendants(int r) const {
    return descendants_[static_cast<std::size_t>(r)];
  }
  /// Edge indexes (P' -> R') with R' inside the descendant closure of r and
  /// P' outside: the "external messages" feeding the belief of r.
  const std::vector<int>& external_into(int r) const {
    return external_into_[static_cast<std::size_t>(r)];
  }

  /// Per-edge message-update structure for the parent-to-child rule:
  /// numerator = external messages into D_P that are not external into D_R;
  /// denominator = messages from D_P \ D_R into D_R, minus the edge itself.
  struct EdgeSets {
    std::vector<int> numerator;
    std::vector<int> denominator;
  };
  const EdgeSets& edge_sets(int edge) const {
    return edge_sets_[static_cast<std::size_t>(edge)];
  }

  int max_level() const;

 private:
  std::vector<Region> regions_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> descendants_;
  std::vector<std::vector<int>> external_into_;
  std::vector<EdgeSets> edge_sets_;
};

/// Cluster-variation construction: level 0 = maximal cliques; each deeper
/// level = pairwise intersections of upper-level regions (including
/// cross-level pairs), discarding candidates that are strict subsets of
/// other candidates or duplicates of regions above; edges connect each
/// region to its minimal super-regions.
RegionGraph build_region_graph(const ContentionGraph& g);

/// The same construction run on the two-hop local graph of `owner`, seeded
/// with the maximal cliques touching the closed neighborhood of `owner` and
/// discarding regions disjoint from it.
struct LocalRegionGraph {
  LinkId owner = -1;
  ContentionGraph local_graph;
  RegionGraph graph;
};
LocalRegionGraph build_local_region_graph(const ContentionGraph& g, LinkId j);

std::vector<int> descendant_closure(const RegionGraph& rg, int region);
std::vector<std::pair<int, int>> external_messages_into(const RegionGraph& rg,
                                                        int region);

/// Structural checks: every region a clique, level-0 cover, intersection
/// closure, edge minimality, no duplicates. Local graphs additionally get
/// the local/global consistency checks (no extraneous structure; everything
/// touching the owner's closed neighborhood present).
struct RegionCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};
struct RegionGraphReport {
  std::vector<RegionCheck> checks;
  bool all_pass() const;
};

RegionGraphReport validate_region_graph(const RegionGraph& rg,
                                        const ContentionGraph& g);
RegionGraphReport validate_local_region_graph(const LocalRegionGraph& local,
                                              const RegionGraph& global,
                                              const ContentionGraph& g);

/// True when the region graph, viewed as an undirected graph over regions,
/// has no cycle. Parent-to-child GBP is exact in that case.
bool region_graph_is_loop_free(const RegionGraph& rg);

} // namespace csmanet
