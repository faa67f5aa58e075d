#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "csmanet/graph.hpp"
#include "csmanet/rng.hpp"

namespace csmanet {

/// Default vertex-count cap for exhaustive independent-set enumeration.
/// Exact engines refuse larger graphs rather than silently degrade; callers
/// with a good reason (e.g. a sparse 30-link reference computation) may pass
/// a larger cap explicitly.
inline constexpr int kEnumerationCap = 25;

/// Visits every independent set of g exactly once, including the empty set,
/// as a bitmask over vertex indexes (bit i = vertex index i active).
/// Deterministic order. Throws CapExceeded when g.size() > cap; cap itself
/// is limited to 63 by the mask width.
void for_each_independent_set(const ContentionGraph& g, int cap,
                              const std::function<void(std::uint64_t)>& visit);

/// Convenience: all independent sets as sorted id lists.
std::vector<std::vector<LinkId>> all_independent_sets(
    const ContentionGraph& g, int cap = kEnumerationCap);

std::uint64_t count_independent_sets(const ContentionGraph& g,
                                     int cap = kEnumerationCap);

/// One maximal independent set, grown greedily over a random vertex
/// permutation. Used to build guaranteed-feasible target throughputs.
std::vector<LinkId> sample_maximal_independent_set(const ContentionGraph& g,
                                                   Rng& rng);

} // namespace csmanet
