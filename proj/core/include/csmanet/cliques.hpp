#pragma once

#include <vector>

#include "csmanet/graph.hpp"

namespace csmanet {

/// A clique, stored as its sorted member ids.
using Clique = std::vector<LinkId>;

/// All inclusion-maximal cliques, each sorted, the list itself in
/// lexicographic order. Pivoted Bron-Kerbosch; fine for contention graphs
/// whose vertex degree is geographically bounded. Isolated vertices come
/// out as singleton cliques, so the result always covers every vertex and
/// edge of the graph.
std::vector<Clique> enumerate_maximal_cliques(const ContentionGraph& g);

} // namespace csmanet
