#include "csmanet/region_graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "csmanet/errors.hpp"

namespace csmanet {

namespace {

using Members = std::vector<LinkId>;

Members intersect(const Members& a, const Members& b) {
  Members out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool strict_subset(const Members& a, const Members& b) {
  return a.size() < b.size() &&
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool touches(const Members& a, const Members& filter) {
  if (filter.empty()) return true;
  return !intersect(a, filter).empty();
}

std::string to_string(const Members& m) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ',';
    os << m[i];
  }
  os << '}';
  return os.str();
}

// Levels via the cluster-variation intersection rule. `filter`, when
// non-empty, drops every candidate disjoint from it (the local-graph
// modification).
std::vector<std::vector<Members>> build_levels(std::vector<Members> seeds,
                                               const Members& filter) {
  std::vector<std::vector<Members>> levels;
  std::erase_if(seeds, [&](const Members& m) { return !touches(m, filter); });
  std::sort(seeds.begin(), seeds.end());
  levels.push_back(std::move(seeds));

  std::set<Members> known(levels[0].begin(), levels[0].end());
  while (true) {
    const auto& prev = levels.back();
    std::set<Members> candidates;
    auto consider = [&](const Members& a, const Members& b) {
      Members c = intersect(a, b);
      if (!c.empty() && touches(c, filter)) candidates.insert(std::move(c));
    };
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (std::size_t j = i + 1; j < prev.size(); ++j) {
        consider(prev[i], prev[j]);
      }
    }
    for (std::size_t n = 0; n + 1 < levels.size(); ++n) {
      for (const Members& a : prev) {
        for (const Members& b : levels[n]) consider(a, b);
      }
    }

    // Duplicates of upper-level regions leave the candidate set before the
    // subset test; otherwise a re-derived old region would suppress the
    // genuinely new intersections below it.
    std::erase_if(candidates,
                  [&](const Members& c) { return known.count(c) > 0; });
    std::vector<Members> next;
    for (const Members& c : candidates) {
      bool dominated = false;
      for (const Members& other : candidates) {
        if (strict_subset(c, other)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) next.push_back(c);
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    known.insert(next.begin(), next.end());
    levels.push_back(std::move(next));
  }
  return levels;
}

RegionGraph build_from_seeds(std::vector<Members> seeds,
                             const Members& filter) {
  const auto levels = build_levels(std::move(seeds), filter);

  std::vector<Region> regions;
  for (std::size_t lvl = 0; lvl < levels.size(); ++lvl) {
    for (const Members& m : levels[lvl]) {
      regions.push_back({m, static_cast<int>(lvl)});
    }
  }

  // Directed edge from every minimal strict super-region.
  const int n = static_cast<int>(regions.size());
  std::vector<std::vector<int>> supers(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      if (a != b && strict_subset(regions[static_cast<std::size_t>(b)].members,
                                  regions[static_cast<std::size_t>(a)].members)) {
        supers[static_cast<std::size_t>(b)].push_back(a);
      }
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int b = 0; b < n; ++b) {
    for (int a : supers[static_cast<std::size_t>(b)]) {
      bool has_between = false;
      for (int c : supers[static_cast<std::size_t>(b)]) {
        if (c != a &&
            strict_subset(regions[static_cast<std::size_t>(c)].members,
                          regions[static_cast<std::size_t>(a)].members)) {
          has_between = true;
          break;
        }
      }
      if (!has_between) edges.emplace_back(a, b);
    }
  }
  std::sort(edges.begin(), edges.end());
  return RegionGraph::assemble(std::move(regions), std::move(edges));
}

} // namespace

RegionGraph RegionGraph::assemble(std::vector<Region> regions,
                                  std::vector<std::pair<int, int>> edges) {
  RegionGraph rg;
  rg.regions_ = std::move(regions);
  rg.edges_ = std::move(edges);

  const auto n = rg.regions_.size();
  std::vector<std::vector<int>> children(n);
  for (std::size_t e = 0; e < rg.edges_.size(); ++e) {
    children[static_cast<std::size_t>(rg.edges_[e].first)].push_back(
        rg.edges_[e].second);
  }

  rg.descendants_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{static_cast<int>(r)};
    seen[r] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      rg.descendants_[r].push_back(u);
      for (int c : children[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(c)]) {
          seen[static_cast<std::size_t>(c)] = 1;
          stack.push_back(c);
        }
      }
    }
    std::sort(rg.descendants_[r].begin(), rg.descendants_[r].end());
  }

  rg.external_into_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& desc = rg.descendants_[r];
    auto in_desc = [&](int x) {
      return std::binary_search(desc.begin(), desc.end(), x);
    };
    for (std::size_t e = 0; e < rg.edges_.size(); ++e) {
      if (in_desc(rg.edges_[e].second) && !in_desc(rg.edges_[e].first)) {
        rg.external_into_[r].push_back(static_cast<int>(e));
      }
    }
  }

  rg.edge_sets_.resize(rg.edges_.size());
  for (std::size_t e = 0; e < rg.edges_.size(); ++e) {
    const auto [p, r] = rg.edges_[e];
    const auto& ext_p = rg.external_into_[static_cast<std::size_t>(p)];
    const auto& ext_r = rg.external_into_[static_cast<std::size_t>(r)];
    auto& sets = rg.edge_sets_[e];
    std::set_difference(ext_p.begin(), ext_p.end(), ext_r.begin(), ext_r.end(),
                        std::back_inserter(sets.numerator));
    std::set_difference(ext_r.begin(), ext_r.end(), ext_p.begin(), ext_p.end(),
                        std::back_inserter(sets.denominator));
    std::erase(sets.denominator, static_cast<int>(e));
  }
  return rg;
}

int RegionGraph::find(const std::vector<LinkId>& members) const {
  for (std::size_t r = 0; r < regions_.size(); ++r) {
    if (regions_[r].members == members) return static_cast<int>(r);
  }
  return -1;
}

std::vector<int> RegionGraph::regions_containing(LinkId id) const {
  std::vector<int> out;
  for (std::size_t r = 0; r < regions_.size(); ++r) {
    if (std::binary_search(regions_[r].members.begin(),
                           regions_[r].members.end(), id)) {
      out.push_back(static_cast<int>(r));
    }
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    const auto& ma = regions_[static_cast<std::size_t>(a)].members;
    const auto& mb = regions_[static_cast<std::size_t>(b)].members;
    return std::make_pair(ma.size(), ma) < std::make_pair(mb.size(), mb);
  });
  return out;
}

int RegionGraph::smallest_region_containing(LinkId id) const {
  const auto all = regions_containing(id);
  return all.empty() ? -1 : all.front();
}

int RegionGraph::max_level() const {
  int lvl = 0;
  for (const Region& r : regions_) lvl = std::max(lvl, r.level);
  return lvl;
}

RegionGraph build_region_graph(const ContentionGraph& g) {
  std::vector<Members> seeds = enumerate_maximal_cliques(g);
  return build_from_seeds(std::move(seeds), {});
}

LocalRegionGraph build_local_region_graph(const ContentionGraph& g, LinkId j) {
  LocalRegionGraph out;
  out.owner = j;
  out.local_graph = two_hop_local_graph(g, j);

  Members closed{j};
  for (LinkId n : g.neighbor_ids(j)) closed.push_back(n);
  std::sort(closed.begin(), closed.end());

  // Maximal cliques of the local graph that touch the closed neighborhood
  // coincide with the maximal cliques of the full graph touching it.
  std::vector<Members> seeds;
  for (Members& c : enumerate_maximal_cliques(out.local_graph)) {
    if (touches(c, closed)) seeds.push_back(std::move(c));
  }
  out.graph = build_from_seeds(std::move(seeds), closed);
  return out;
}

std::vector<int> descendant_closure(const RegionGraph& rg, int region) {
  return rg.descendants(region);
}

std::vector<std::pair<int, int>> external_messages_into(const RegionGraph& rg,
                                                        int region) {
  std::vector<std::pair<int, int>> out;
  for (int e : rg.external_into(region)) {
    out.push_back(rg.edges()[static_cast<std::size_t>(e)]);
  }
  return out;
}

bool RegionGraphReport::all_pass() const {
  for (const RegionCheck& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

// Shared structural checks. `relevant`, when non-empty, restricts the
// intersection-closure requirement to intersections touching it (local
// region graphs only owe regions that touch the owner's neighborhood).
void structural_checks(const RegionGraph& rg, const ContentionGraph& g,
                       const Members& relevant, RegionGraphReport& report) {
  const auto& regions = rg.regions();

  RegionCheck cliques{"regions-are-cliques"};
  for (const Region& r : regions) {
    for (std::size_t a = 0; a < r.members.size() && cliques.pass; ++a) {
      for (std::size_t b = a + 1; b < r.members.size(); ++b) {
        if (!g.adjacent(r.members[a], r.members[b])) {
          cliques.pass = false;
          cliques.detail = "region " + to_string(r.members) + " is not a clique";
          break;
        }
      }
    }
  }
  report.checks.push_back(cliques);

  RegionCheck dup{"no-duplicate-regions"};
  for (std::size_t a = 0; a < regions.size() && dup.pass; ++a) {
    for (std::size_t b = a + 1; b < regions.size(); ++b) {
      if (regions[a].members == regions[b].members) {
        dup.pass = false;
        dup.detail = "region " + to_string(regions[a].members) + " duplicated";
        break;
      }
    }
  }
  report.checks.push_back(dup);

  RegionCheck antichain{"level0-antichain"};
  for (std::size_t a = 0; a < regions.size() && antichain.pass; ++a) {
    if (regions[a].level != 0) continue;
    for (std::size_t b = 0; b < regions.size(); ++b) {
      if (a == b || regions[b].level != 0) continue;
      if (strict_subset(regions[a].members, regions[b].members)) {
        antichain.pass = false;
        antichain.detail = to_string(regions[a].members) + " inside " +
                           to_string(regions[b].members) + " at level 0";
        break;
      }
    }
  }
  report.checks.push_back(antichain);

  RegionCheck closure{"intersection-closure"};
  for (std::size_t a = 0; a < regions.size() && closure.pass; ++a) {
    for (std::size_t b = a + 1; b < regions.size(); ++b) {
      Members c = intersect(regions[a].members, regions[b].members);
      if (c.empty() || !touches(c, relevant)) continue;
      if (rg.find(c) < 0) {
        closure.pass = false;
        closure.detail = "missing intersection " + to_string(c) + " of " +
                         to_string(regions[a].members) + " and " +
                         to_string(regions[b].members);
        break;
      }
    }
  }
  report.checks.push_back(closure);

  RegionCheck minimality{"edge-minimality"};
  std::set<std::pair<int, int>> have(rg.edges().begin(), rg.edges().end());
  for (std::size_t b = 0; b < regions.size() && minimality.pass; ++b) {
    for (std::size_t a = 0; a < regions.size(); ++a) {
      if (a == b) continue;
      if (!strict_subset(regions[b].members, regions[a].members)) continue;
      bool between = false;
      for (std::size_t c = 0; c < regions.size(); ++c) {
        if (c == a || c == b) continue;
        if (strict_subset(regions[b].members, regions[c].members) &&
            strict_subset(regions[c].members, regions[a].members)) {
          between = true;
          break;
        }
      }
      const bool edge = have.count({static_cast<int>(a), static_cast<int>(b)});
      if (edge == between) {
        minimality.pass = false;
        minimality.detail = std::string(edge ? "extraneous" : "missing") +
                            " edge " + to_string(regions[a].members) + " -> " +
                            to_string(regions[b].members);
        break;
      }
    }
  }
  report.checks.push_back(minimality);
}

} // namespace

RegionGraphReport validate_region_graph(const RegionGraph& rg,
                                        const ContentionGraph& g) {
  RegionGraphReport report;
  structural_checks(rg, g, {}, report);

  RegionCheck cover{"level0-cover"};
  for (LinkId id : g.ids()) {
    bool found = false;
    for (const Region& r : rg.regions()) {
      if (r.level == 0 &&
          std::binary_search(r.members.begin(), r.members.end(), id)) {
        found = true;
        break;
      }
    }
    if (!found) {
      cover.pass = false;
      cover.detail = "link " + std::to_string(id) + " uncovered";
      break;
    }
  }
  for (auto [a, b] : g.edges()) {
    if (!cover.pass) break;
    bool found = false;
    for (const Region& r : rg.regions()) {
      if (r.level == 0 &&
          std::binary_search(r.members.begin(), r.members.end(), a) &&
          std::binary_search(r.members.begin(), r.members.end(), b)) {
        found = true;
        break;
      }
    }
    if (!found) {
      cover.pass = false;
      cover.detail = "edge (" + std::to_string(a) + "," + std::to_string(b) +
                     ") uncovered";
    }
  }
  report.checks.push_back(cover);
  return report;
}

RegionGraphReport validate_local_region_graph(const LocalRegionGraph& local,
                                              const RegionGraph& global,
                                              const ContentionGraph& g) {
  RegionGraphReport report;
  Members closed{local.owner};
  for (LinkId n : g.neighbor_ids(local.owner)) closed.push_back(n);
  std::sort(closed.begin(), closed.end());

  structural_checks(local.graph, g, closed, report);

  // Feature 1: nothing extraneous relative to the global graph.
  RegionCheck f1r{"consistency-regions-subset"};
  for (const Region& r : local.graph.regions()) {
    if (global.find(r.members) < 0) {
      f1r.pass = false;
      f1r.detail = "local region " + to_string(r.members) + " not global";
      break;
    }
  }
  report.checks.push_back(f1r);

  RegionCheck f1e{"consistency-edges-subset"};
  for (auto [p, c] : local.graph.edges()) {
    const int gp = global.find(local.graph.regions()[static_cast<std::size_t>(p)].members);
    const int gc = global.find(local.graph.regions()[static_cast<std::size_t>(c)].members);
    bool found = false;
    for (auto [a, b] : global.edges()) {
      if (a == gp && b == gc) {
        found = true;
        break;
      }
    }
    if (!found) {
      f1e.pass = false;
      f1e.detail = "local edge not present globally";
      break;
    }
  }
  report.checks.push_back(f1e);

  // Feature 1': everything touching the closed neighborhood is replicated.
  RegionCheck f2r{"consistency-regions-present"};
  for (const Region& r : global.regions()) {
    if (!touches(r.members, closed)) continue;
    if (local.graph.find(r.members) < 0) {
      f2r.pass = false;
      f2r.detail = "global region " + to_string(r.members) + " missing locally";
      break;
    }
  }
  report.checks.push_back(f2r);

  RegionCheck f2e{"consistency-edges-present"};
  for (auto [p, c] : global.edges()) {
    const auto& pm = global.regions()[static_cast<std::size_t>(p)].members;
    const auto& cm = global.regions()[static_cast<std::size_t>(c)].members;
    if (!touches(pm, closed) || !touches(cm, closed)) continue;
    const int lp = local.graph.find(pm);
    const int lc = local.graph.find(cm);
    bool found = false;
    if (lp >= 0 && lc >= 0) {
      for (auto [a, b] : local.graph.edges()) {
        if (a == lp && b == lc) {
          found = true;
          break;
        }
      }
    }
    if (!found) {
      f2e.pass = false;
      f2e.detail = "global edge " + to_string(pm) + " -> " + to_string(cm) +
                   " missing locally";
      break;
    }
  }
  report.checks.push_back(f2e);
  return report;
}

bool region_graph_is_loop_free(const RegionGraph& rg) {
  // Union-find over regions; an edge joining two already-connected regions
  // closes an undirected cycle.
  std::vector<int> parent(static_cast<std::size_t>(rg.region_count()));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (auto [a, b] : rg.edges()) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) return false;
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  return true;
}

} // namespace csmanet
