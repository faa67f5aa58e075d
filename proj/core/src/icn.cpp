#include "csmanet/icn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "csmanet/errors.hpp"

namespace csmanet {

namespace {

std::vector<double> rho_by_index(const ContentionGraph& g,
                                 const AccessIntensities& rho) {
  std::vector<double> r(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    auto it = rho.find(g.id_of(i));
    if (it == rho.end()) {
      throw GraphError("missing access intensity for link " +
                       std::to_string(g.id_of(i)));
    }
    if (!(it->second > 0.0)) {
      throw GraphError("access intensity must be positive at link " +
                       std::to_string(g.id_of(i)));
    }
    r[static_cast<std::size_t>(i)] = it->second;
  }
  return r;
}

// Weight of a state: product of rho over active links.
double state_weight(std::uint64_t mask, const std::vector<double>& rho) {
  double w = 1.0;
  while (mask) {
    const int i = std::countr_zero(mask);
    w *= rho[static_cast<std::size_t>(i)];
    mask &= mask - 1;
  }
  return w;
}

// g0 = partition of the subtree rooted at `root` with the root forced idle;
// g1 = with the root transmitting.
void tree_dp(const ContentionGraph& g, const std::vector<double>& rho,
             int root, int parent, double& g0, double& g1) {
  g0 = 1.0;
  g1 = rho[static_cast<std::size_t>(root)];
  for (int c : g.neighbors(root)) {
    if (c == parent) continue;
    double c0 = 0.0, c1 = 0.0;
    tree_dp(g, rho, c, root, c0, c1);
    g0 *= c0 + c1;
    g1 *= c0;
  }
}

} // namespace

double StationaryDistribution::probability(
    const std::vector<LinkId>& active) const {
  std::uint64_t mask = 0;
  for (LinkId id : active) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) {
      throw GraphError("unknown link id " + std::to_string(id));
    }
    mask |= std::uint64_t{1} << (it - ids.begin());
  }
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k] == mask) return prob[k];
  }
  return 0.0;  // not an independent set
}

StationaryDistribution partition_function(const ContentionGraph& g,
                                          const AccessIntensities& rho,
                                          int cap) {
  const auto r = rho_by_index(g, rho);
  StationaryDistribution d;
  d.ids.assign(g.ids().begin(), g.ids().end());
  for (LinkId id : d.ids) d.Zi[id] = 0.0;

  for_each_independent_set(g, cap, [&](std::uint64_t mask) {
    const double w = state_weight(mask, r);
    d.states.push_back(mask);
    d.prob.push_back(w);  // weights for now, normalized below
    d.Z += w;
    std::uint64_t m = mask;
    while (m) {
      const int i = std::countr_zero(m);
      d.Zi[g.id_of(i)] += w;
      m &= m - 1;
    }
  });
  for (double& p : d.prob) p /= d.Z;
  return d;
}

ThroughputVector exact_throughputs(const ContentionGraph& g,
                                   const AccessIntensities& rho, int cap) {
  const auto r = rho_by_index(g, rho);
  ThroughputVector th;

  if (is_forest(g)) {
    // th_i = rho_i * Z(G without i and its neighbors) / Z(G); removing a
    // closed neighborhood from a forest leaves a forest, so each factor is
    // one more DP. No size cap needed.
    const double z = forest_partition_value(g, rho);
    for (int i = 0; i < g.size(); ++i) {
      std::vector<char> removed(static_cast<std::size_t>(g.size()), 0);
      removed[static_cast<std::size_t>(i)] = 1;
      for (int n : g.neighbors(i)) removed[static_cast<std::size_t>(n)] = 1;
      std::vector<LinkId> keep;
      for (int v = 0; v < g.size(); ++v) {
        if (!removed[static_cast<std::size_t>(v)]) keep.push_back(g.id_of(v));
      }
      std::vector<std::pair<LinkId, LinkId>> edges;
      for (auto [a, b] : g.edges()) {
        if (!removed[static_cast<std::size_t>(g.index_of(a))] &&
            !removed[static_cast<std::size_t>(g.index_of(b))]) {
          edges.emplace_back(a, b);
        }
      }
      const ContentionGraph rest(std::move(keep), std::move(edges));
      const double zi =
          r[static_cast<std::size_t>(i)] * forest_partition_value(rest, rho);
      th[g.id_of(i)] = zi / z;
    }
    return th;
  }

  double z = 0.0;
  std::vector<double> zi(static_cast<std::size_t>(g.size()), 0.0);
  for_each_independent_set(g, cap, [&](std::uint64_t mask) {
    const double w = state_weight(mask, r);
    z += w;
    std::uint64_t m = mask;
    while (m) {
      const int i = std::countr_zero(m);
      zi[static_cast<std::size_t>(i)] += w;
      m &= m - 1;
    }
  });
  for (int i = 0; i < g.size(); ++i) {
    th[g.id_of(i)] = zi[static_cast<std::size_t>(i)] / z;
  }
  return th;
}

double forest_partition_value(const ContentionGraph& g,
                              const AccessIntensities& rho) {
  if (!is_forest(g)) throw GraphError("graph is not a forest");
  const auto r = rho_by_index(g, rho);
  double z = 1.0;
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  for (int root = 0; root < g.size(); ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    // mark the component
    std::deque<int> q{root};
    seen[static_cast<std::size_t>(root)] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int v : g.neighbors(u)) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          q.push_back(v);
        }
      }
    }
    double g0 = 0.0, g1 = 0.0;
    tree_dp(g, r, root, -1, g0, g1);
    z *= g0 + g1;
  }
  return z;
}

std::pair<double, double> subtree_partitions(const ContentionGraph& g,
                                             const AccessIntensities& rho,
                                             LinkId i, LinkId j) {
  if (!is_tree(g)) throw GraphError("graph is not a tree");
  if (!g.adjacent(i, j)) {
    throw GraphError("(" + std::to_string(i) + "," + std::to_string(j) +
                     ") is not an edge");
  }
  const auto r = rho_by_index(g, rho);
  // Rooting L(j) at j with the removed edge's far endpoint as "parent"
  // keeps the traversal inside the component containing j.
  double g0 = 0.0, g1 = 0.0;
  tree_dp(g, r, g.index_of(j), g.index_of(i), g0, g1);
  return {g0 + g1, g0};
}

} // namespace csmanet
