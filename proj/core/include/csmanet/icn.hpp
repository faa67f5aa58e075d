#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "csmanet/graph.hpp"
#include "csmanet/independent_sets.hpp"
#include "csmanet/types.hpp"

namespace csmanet {

/// Exact stationary distribution over the feasible (independent-set)
/// states of the network. States are stored as bitmasks over vertex
/// indexes of the originating graph, in enumeration order.
struct StationaryDistribution {
  std::vector<LinkId> ids;            // bit i of a state = ids[i] active
  std::vector<std::uint64_t> states;  // every independent set, incl. 0
  std::vector<double> prob;           // aligned with states, sums to 1
  double Z = 0.0;                     // partition function
  std::map<LinkId, double> Zi;        // restriction to states with i active

  /// Probability of the state with exactly `active` transmitting.
  double probability(const std::vector<LinkId>& active) const;
};

/// Exact distribution by enumeration. Throws CapExceeded beyond the cap.
StationaryDistribution partition_function(const ContentionGraph& g,
                                          const AccessIntensities& rho,
                                          int cap = kEnumerationCap);

/// Exact per-link throughputs th_i = Z_i / Z. Streams over the independent
/// sets without materializing the distribution. Forests are solved by
/// dynamic programming instead, with no size cap.
ThroughputVector exact_throughputs(const ContentionGraph& g,
                                   const AccessIntensities& rho,
                                   int cap = kEnumerationCap);

/// Partition function of a forest by leaf-to-root dynamic programming.
/// Throws GraphError when g has a cycle.
double forest_partition_value(const ContentionGraph& g,
                              const AccessIntensities& rho);

/// Partition functions (Z(L(j)), Z(L*(j))) of the subtree L(j) hanging off
/// edge (i, j) of a tree, and of L*(j) = L(j) with j removed. Requires g to
/// be a tree and (i, j) an edge.
std::pair<double, double> subtree_partitions(const ContentionGraph& g,
                                             const AccessIntensities& rho,
                                             LinkId i, LinkId j);

} // namespace csmanet
