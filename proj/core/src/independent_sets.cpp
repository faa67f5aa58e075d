#include "csmanet/independent_sets.hpp"

#include <algorithm>
#include <string>

#include "csmanet/errors.hpp"

namespace csmanet {

namespace {

std::vector<std::uint64_t> adjacency_masks(const ContentionGraph& g) {
  std::vector<std::uint64_t> mask(static_cast<std::size_t>(g.size()), 0);
  for (int i = 0; i < g.size(); ++i) {
    for (int n : g.neighbors(i)) {
      mask[static_cast<std::size_t>(i)] |= std::uint64_t{1} << n;
    }
  }
  return mask;
}

void recurse(const std::vector<std::uint64_t>& adj, int n, int start,
             std::uint64_t current,
             const std::function<void(std::uint64_t)>& visit) {
  visit(current);
  for (int v = start; v < n; ++v) {
    if ((adj[static_cast<std::size_t>(v)] & current) == 0) {
      recurse(adj, n, v + 1, current | (std::uint64_t{1} << v), visit);
    }
  }
}

} // namespace

void for_each_independent_set(const ContentionGraph& g, int cap,
                              const std::function<void(std::uint64_t)>& visit) {
  if (cap > 63) cap = 63;
  if (g.size() > cap) {
    throw CapExceeded("graph with " + std::to_string(g.size()) +
                      " links exceeds the enumeration cap of " +
                      std::to_string(cap));
  }
  const auto adj = adjacency_masks(g);
  // Non-recursive on the empty-set level to keep stack depth at |IS| size.
  recurse(adj, g.size(), 0, 0, visit);
}

std::vector<std::vector<LinkId>> all_independent_sets(const ContentionGraph& g,
                                                      int cap) {
  std::vector<std::vector<LinkId>> out;
  for_each_independent_set(g, cap, [&](std::uint64_t mask) {
    std::vector<LinkId> s;
    for (int i = 0; i < g.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) s.push_back(g.id_of(i));
    }
    out.push_back(std::move(s));
  });
  return out;
}

std::uint64_t count_independent_sets(const ContentionGraph& g, int cap) {
  std::uint64_t count = 0;
  for_each_independent_set(g, cap, [&](std::uint64_t) { ++count; });
  return count;
}

std::vector<LinkId> sample_maximal_independent_set(const ContentionGraph& g,
                                                   Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  std::vector<char> blocked(static_cast<std::size_t>(g.size()), 0);
  std::vector<LinkId> out;
  for (int v : order) {
    if (blocked[static_cast<std::size_t>(v)]) continue;
    out.push_back(g.id_of(v));
    blocked[static_cast<std::size_t>(v)] = 1;
    for (int n : g.neighbors(v)) blocked[static_cast<std::size_t>(n)] = 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace csmanet
