#include "csmanet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>

#include "csmanet/errors.hpp"
#include "csmanet/rng.hpp"

namespace csmanet {

ContentionGraph::ContentionGraph(std::vector<LinkId> vertices,
                                 std::vector<std::pair<LinkId, LinkId>> edges) {
  std::sort(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (vertices[i] == vertices[i + 1]) {
      throw GraphError("duplicate vertex id " + std::to_string(vertices[i]));
    }
  }
  for (LinkId id : vertices) {
    if (id < 0) throw GraphError("negative link id " + std::to_string(id));
  }
  ids_ = std::move(vertices);
  adj_.assign(ids_.size(), {});

  std::set<std::pair<LinkId, LinkId>> canon;
  for (auto [a, b] : edges) {
    if (a == b) throw GraphError("self-edge at link " + std::to_string(a));
    if (!has_link(a) || !has_link(b)) {
      throw GraphError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                       ") references a missing link");
    }
    canon.insert({std::min(a, b), std::max(a, b)});
  }
  edges_.assign(canon.begin(), canon.end());
  for (auto [a, b] : edges_) {
    const int ia = index_of(a);
    const int ib = index_of(b);
    adj_[static_cast<std::size_t>(ia)].push_back(ib);
    adj_[static_cast<std::size_t>(ib)].push_back(ia);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool ContentionGraph::has_link(LinkId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

int ContentionGraph::index_of(LinkId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) {
    throw GraphError("unknown link id " + std::to_string(id));
  }
  return static_cast<int>(it - ids_.begin());
}

std::vector<LinkId> ContentionGraph::neighbor_ids(LinkId id) const {
  std::vector<LinkId> out;
  for (int n : neighbors(index_of(id))) out.push_back(id_of(n));
  return out;
}

bool ContentionGraph::adjacent(LinkId a, LinkId b) const {
  const int ia = index_of(a);
  const int ib = index_of(b);
  const auto& nbrs = adj_[static_cast<std::size_t>(ia)];
  return std::binary_search(nbrs.begin(), nbrs.end(), ib);
}

double ContentionGraph::mean_degree() const {
  if (ids_.empty()) return 0.0;
  return 2.0 * static_cast<double>(edges_.size()) /
         static_cast<double>(ids_.size());
}

ContentionGraph ring_graph(int n) {
  if (n < 3) throw GraphError("ring requires at least 3 links");
  std::vector<LinkId> v(static_cast<std::size_t>(n));
  std::vector<std::pair<LinkId, LinkId>> e;
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(n, 1);
  return {std::move(v), std::move(e)};
}

ContentionGraph cayley_tree_graph(int z, int layers) {
  if (z < 2) throw GraphError("cayley tree requires order z >= 2");
  if (layers < 1) throw GraphError("cayley tree requires at least 1 layer");
  std::vector<LinkId> v{1};
  std::vector<std::pair<LinkId, LinkId>> e;
  std::vector<LinkId> shell{1};
  LinkId next = 2;
  for (int depth = 1; depth <= layers; ++depth) {
    std::vector<LinkId> grown;
    for (LinkId parent : shell) {
      const int children = (depth == 1) ? z : z - 1;
      for (int c = 0; c < children; ++c) {
        v.push_back(next);
        e.emplace_back(parent, next);
        grown.push_back(next);
        ++next;
      }
    }
    shell = std::move(grown);
  }
  return {std::move(v), std::move(e)};
}

namespace {

double mean_degree_at_radius(const std::vector<std::pair<double, double>>& pts,
                             double radius) {
  const double r2 = radius * radius;
  std::size_t count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[i].first - pts[j].first;
      const double dy = pts[i].second - pts[j].second;
      if (dx * dx + dy * dy <= r2) ++count;
    }
  }
  return 2.0 * static_cast<double>(count) / static_cast<double>(pts.size());
}

} // namespace

ContentionGraph random_geometric_graph(int n, double target_mean_degree,
                                       std::uint64_t seed) {
  if (n < 1) throw GraphError("need at least one link");
  if (target_mean_degree < 0) throw GraphError("negative target degree");
  if (target_mean_degree - 0.5 > static_cast<double>(n - 1)) {
    throw GraphError("target mean degree unattainable for this size");
  }

  Rng rng(seed);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform01();
    const double y = rng.uniform01();
    pts.emplace_back(x, y);
  }

  // Bisect for the smallest radius whose realized mean degree reaches the
  // target, then compare against the step just below and keep whichever is
  // closer (ties toward the smaller radius).
  double lo = 0.0;
  double hi = std::sqrt(2.0);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mean_degree_at_radius(pts, mid) >= target_mean_degree) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double above = mean_degree_at_radius(pts, hi);
  const double below = mean_degree_at_radius(pts, lo);
  const double radius =
      (std::abs(below - target_mean_degree) < std::abs(above - target_mean_degree))
          ? lo
          : hi;
  const double achieved = mean_degree_at_radius(pts, radius);
  if (std::abs(achieved - target_mean_degree) > 0.5) {
    throw GraphError("degree calibration failed: achieved " +
                     std::to_string(achieved) + " vs target " +
                     std::to_string(target_mean_degree));
  }

  std::vector<LinkId> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  std::vector<std::pair<LinkId, LinkId>> e;
  const double r2 = radius * radius;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = pts[static_cast<std::size_t>(i)].first -
                        pts[static_cast<std::size_t>(j)].first;
      const double dy = pts[static_cast<std::size_t>(i)].second -
                        pts[static_cast<std::size_t>(j)].second;
      if (dx * dx + dy * dy <= r2) e.emplace_back(i + 1, j + 1);
    }
  }
  return {std::move(v), std::move(e)};
}

ContentionGraph two_hop_local_graph(const ContentionGraph& g, LinkId j) {
  const int ij = g.index_of(j);
  std::vector<int> closed{ij};
  for (int n : g.neighbors(ij)) closed.push_back(n);

  std::set<LinkId> verts;
  std::set<std::pair<LinkId, LinkId>> edges;
  for (int center : closed) {
    std::vector<int> hood{center};
    for (int n : g.neighbors(center)) hood.push_back(n);
    for (int a : hood) verts.insert(g.id_of(a));
    for (std::size_t x = 0; x < hood.size(); ++x) {
      for (std::size_t y = x + 1; y < hood.size(); ++y) {
        const LinkId a = g.id_of(hood[x]);
        const LinkId b = g.id_of(hood[y]);
        if (g.adjacent(a, b)) edges.insert({std::min(a, b), std::max(a, b)});
      }
    }
  }
  return {std::vector<LinkId>(verts.begin(), verts.end()),
          std::vector<std::pair<LinkId, LinkId>>(edges.begin(), edges.end())};
}

bool is_forest(const ContentionGraph& g) {
  // acyclic <=> every component has |E| = |V| - 1
  const int n = g.size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::deque<int> q{s};
    comp[static_cast<std::size_t>(s)] = ncomp;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int v : g.neighbors(u)) {
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = ncomp;
          q.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  return g.edge_count() == n - ncomp;
}

bool is_connected(const ContentionGraph& g) {
  const int n = g.size();
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int v : g.neighbors(u)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        q.push_back(v);
      }
    }
  }
  return reached == n;
}

int graph_diameter(const ContentionGraph& g) {
  const int n = g.size();
  int diameter = 0;
  std::vector<int> dist;
  for (int s = 0; s < n; ++s) {
    dist.assign(static_cast<std::size_t>(n), -1);
    std::deque<int> q{s};
    dist[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int v : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          diameter = std::max(diameter, dist[static_cast<std::size_t>(v)]);
          q.push_back(v);
        }
      }
    }
  }
  return diameter;
}

} // namespace csmanet
