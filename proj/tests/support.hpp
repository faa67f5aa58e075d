#pragma once

// Shared helpers for the test suites: small named topologies from the
// worked examples, random trees/graphs, and intensity samplers.

#include <utility>
#include <vector>

#include "csmanet/graph.hpp"
#include "csmanet/rng.hpp"
#include "csmanet/types.hpp"

namespace testsupport {

using csmanet::AccessIntensities;
using csmanet::ContentionGraph;
using csmanet::LinkId;
using csmanet::Rng;

// 4 links: 1 clashes with 2 only; 2 with everyone; 3 and 4 also clash.
// Feasible states: {}, {1}, {2}, {3}, {4}, {1,3}, {1,4}.
inline ContentionGraph star_square_graph() {
  return ContentionGraph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {2, 4}, {3, 4}});
}

// 9 links whose maximal cliques are {1,2}, {1,3}, {3,4}, {2,4,5}, {4,5,6},
// {5,6,8}, {5,9}, {6,7}.
inline ContentionGraph nine_link_graph() {
  return ContentionGraph({1, 2, 3, 4, 5, 6, 7, 8, 9},
                         {{1, 2},
                          {1, 3},
                          {3, 4},
                          {2, 4},
                          {2, 5},
                          {4, 5},
                          {4, 6},
                          {5, 6},
                          {5, 8},
                          {6, 8},
                          {5, 9},
                          {6, 7}});
}

inline ContentionGraph triangle() {
  return ContentionGraph({1, 2, 3}, {{1, 2}, {1, 3}, {2, 3}});
}

inline ContentionGraph path_graph(int n) {
  std::vector<LinkId> v;
  std::vector<std::pair<LinkId, LinkId>> e;
  for (int i = 1; i <= n; ++i) v.push_back(i);
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return {std::move(v), std::move(e)};
}

// Uniform random attachment tree on ids 1..n.
inline ContentionGraph random_tree(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LinkId> v{1};
  std::vector<std::pair<LinkId, LinkId>> e;
  for (int i = 2; i <= n; ++i) {
    v.push_back(i);
    const LinkId parent = static_cast<LinkId>(rng.index(static_cast<std::size_t>(i - 1))) + 1;
    e.emplace_back(parent, i);
  }
  return {std::move(v), std::move(e)};
}

// Erdos-Renyi-flavored connected graph: random tree plus extra edges.
inline ContentionGraph random_connected_graph(int n, int extra_edges,
                                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LinkId> v{1};
  std::vector<std::pair<LinkId, LinkId>> e;
  for (int i = 2; i <= n; ++i) {
    v.push_back(i);
    const LinkId parent = static_cast<LinkId>(rng.index(static_cast<std::size_t>(i - 1))) + 1;
    e.emplace_back(parent, i);
  }
  int added = 0;
  int guard = 0;
  while (added < extra_edges && ++guard < 100 * extra_edges + 100) {
    const LinkId a = static_cast<LinkId>(rng.index(static_cast<std::size_t>(n))) + 1;
    const LinkId b = static_cast<LinkId>(rng.index(static_cast<std::size_t>(n))) + 1;
    if (a == b) continue;
    const auto edge = std::make_pair(std::min(a, b), std::max(a, b));
    if (std::find(e.begin(), e.end(), edge) != e.end()) continue;
    e.push_back(edge);
    ++added;
  }
  return {std::move(v), std::move(e)};
}

inline AccessIntensities uniform_rho(const ContentionGraph& g, double rho) {
  AccessIntensities out;
  for (LinkId id : g.ids()) out[id] = rho;
  return out;
}

inline AccessIntensities random_rho(const ContentionGraph& g, double lo,
                                    double hi, std::uint64_t seed) {
  Rng rng(seed);
  AccessIntensities out;
  for (LinkId id : g.ids()) out[id] = rng.uniform(lo, hi);
  return out;
}

} // namespace testsupport
