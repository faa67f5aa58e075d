#include <doctest.h>

#include <algorithm>
#include <set>

#include "csmanet/region_graph.hpp"

#include "support.hpp"

using namespace csmanet;
using namespace testsupport;

namespace {

std::set<std::vector<LinkId>> members_at_level(const RegionGraph& rg, int lvl) {
  std::set<std::vector<LinkId>> out;
  for (const Region& r : rg.regions()) {
    if (r.level == lvl) out.insert(r.members);
  }
  return out;
}

bool has_edge(const RegionGraph& rg, const std::vector<LinkId>& parent,
              const std::vector<LinkId>& child) {
  const int p = rg.find(parent);
  const int c = rg.find(child);
  if (p < 0 || c < 0) return false;
  for (auto [a, b] : rg.edges()) {
    if (a == p && b == c) return true;
  }
  return false;
}

} // namespace

TEST_CASE("levels of the nine-link region graph") {
  const RegionGraph rg = build_region_graph(nine_link_graph());

  CHECK(members_at_level(rg, 0) ==
        std::set<std::vector<LinkId>>{{1, 2},
                                      {1, 3},
                                      {3, 4},
                                      {2, 4, 5},
                                      {4, 5, 6},
                                      {5, 6, 8},
                                      {5, 9},
                                      {6, 7}});
  CHECK(members_at_level(rg, 1) ==
        std::set<std::vector<LinkId>>{{1}, {2}, {3}, {4, 5}, {5, 6}});
  CHECK(members_at_level(rg, 2) ==
        std::set<std::vector<LinkId>>{{4}, {5}, {6}});
  CHECK(rg.max_level() == 2);
}

TEST_CASE("edge minimality in the nine-link region graph") {
  const RegionGraph rg = build_region_graph(nine_link_graph());
  // {4} sits below {4,5}, so the big clique keeps no direct edge to it
  CHECK_FALSE(has_edge(rg, {2, 4, 5}, {4}));
  CHECK(has_edge(rg, {2, 4, 5}, {4, 5}));
  CHECK(has_edge(rg, {2, 4, 5}, {2}));
  CHECK(has_edge(rg, {4, 5}, {4}));
  CHECK(has_edge(rg, {3, 4}, {4}));
  CHECK(has_edge(rg, {5, 9}, {5}));
  CHECK_FALSE(has_edge(rg, {5, 6, 8}, {5}));
}

TEST_CASE("triangle collapses to a single region") {
  const RegionGraph rg = build_region_graph(triangle());
  CHECK(rg.region_count() == 1);
  CHECK(rg.edge_count() == 0);
  CHECK(rg.regions()[0].members == std::vector<LinkId>{1, 2, 3});
  CHECK(region_graph_is_loop_free(rg));
}

TEST_CASE("descendant closure") {
  const RegionGraph rg = build_region_graph(nine_link_graph());
  const int r56 = rg.find({5, 6});
  REQUIRE(r56 >= 0);
  std::set<std::vector<LinkId>> closure;
  for (int d : descendant_closure(rg, r56)) {
    closure.insert(rg.regions()[static_cast<std::size_t>(d)].members);
  }
  CHECK(closure == std::set<std::vector<LinkId>>{{5, 6}, {5}, {6}});

  const int leaf = rg.find({1});
  CHECK(descendant_closure(rg, leaf) == std::vector<int>{leaf});

  const int r245 = rg.find({2, 4, 5});
  std::set<std::vector<LinkId>> closure245;
  for (int d : descendant_closure(rg, r245)) {
    closure245.insert(rg.regions()[static_cast<std::size_t>(d)].members);
  }
  CHECK(closure245 ==
        std::set<std::vector<LinkId>>{{2, 4, 5}, {2}, {4, 5}, {4}, {5}});
}

TEST_CASE("external messages into a descendant closure") {
  const RegionGraph rg = build_region_graph(nine_link_graph());
  const int r56 = rg.find({5, 6});
  std::set<std::pair<std::vector<LinkId>, std::vector<LinkId>>> got;
  for (auto [p, c] : external_messages_into(rg, r56)) {
    got.insert({rg.regions()[static_cast<std::size_t>(p)].members,
                rg.regions()[static_cast<std::size_t>(c)].members});
  }
  const std::set<std::pair<std::vector<LinkId>, std::vector<LinkId>>> want = {
      {{4, 5, 6}, {5, 6}},
      {{5, 6, 8}, {5, 6}},
      {{4, 5}, {5}},
      {{5, 9}, {5}},
      {{6, 7}, {6}}};
  CHECK(got == want);

  // a parentless level-0 region has no external messages
  const RegionGraph tri = build_region_graph(triangle());
  CHECK(external_messages_into(tri, 0).empty());
}

TEST_CASE("message-update edge sets match the worked update rule") {
  const RegionGraph rg = build_region_graph(nine_link_graph());
  int edge = -1;
  for (int e = 0; e < rg.edge_count(); ++e) {
    const auto [p, c] = rg.edges()[static_cast<std::size_t>(e)];
    if (rg.regions()[static_cast<std::size_t>(p)].members ==
            std::vector<LinkId>{4, 5, 6} &&
        rg.regions()[static_cast<std::size_t>(c)].members ==
            std::vector<LinkId>{5, 6}) {
      edge = e;
      break;
    }
  }
  REQUIRE(edge >= 0);
  const auto& sets = rg.edge_sets(edge);

  auto key = [&](int e) {
    const auto [p, c] = rg.edges()[static_cast<std::size_t>(e)];
    return std::make_pair(rg.regions()[static_cast<std::size_t>(p)].members,
                          rg.regions()[static_cast<std::size_t>(c)].members);
  };
  std::set<std::pair<std::vector<LinkId>, std::vector<LinkId>>> numerator;
  for (int e : sets.numerator) numerator.insert(key(e));
  CHECK(numerator ==
        std::set<std::pair<std::vector<LinkId>, std::vector<LinkId>>>{
            {{2, 4, 5}, {4, 5}}, {{3, 4}, {4}}});

  std::set<std::pair<std::vector<LinkId>, std::vector<LinkId>>> denominator;
  for (int e : sets.denominator) denominator.insert(key(e));
  CHECK(denominator ==
        std::set<std::pair<std::vector<LinkId>, std::vector<LinkId>>>{
            {{4, 5}, {5}}});
}

TEST_CASE("local region graph of vertex 1") {
  const LocalRegionGraph local = build_local_region_graph(nine_link_graph(), 1);
  CHECK(members_at_level(local.graph, 0) ==
        std::set<std::vector<LinkId>>{{1, 2}, {1, 3}, {3, 4}, {2, 4, 5}});
  // {4} is two hops away from vertex 1 and gets discarded
  CHECK(members_at_level(local.graph, 1) ==
        std::set<std::vector<LinkId>>{{1}, {2}, {3}});
  CHECK(local.graph.find({4}) < 0);
}

TEST_CASE("local region graph edge cases") {
  const ContentionGraph lonely({3}, {});
  const LocalRegionGraph l = build_local_region_graph(lonely, 3);
  CHECK(l.graph.region_count() == 1);
  CHECK(l.graph.regions()[0].members == std::vector<LinkId>{3});

  const LocalRegionGraph tri = build_local_region_graph(triangle(), 2);
  CHECK(tri.graph.region_count() ==
        build_region_graph(triangle()).region_count());
}

TEST_CASE("validator passes the nine-link graphs") {
  const auto g = nine_link_graph();
  const RegionGraph rg = build_region_graph(g);
  const RegionGraphReport report = validate_region_graph(rg, g);
  for (const RegionCheck& c : report.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
  const LocalRegionGraph local = build_local_region_graph(g, 1);
  const RegionGraphReport lreport = validate_local_region_graph(local, rg, g);
  for (const RegionCheck& c : lreport.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("validator flags a planted minimality violation") {
  const auto g = nine_link_graph();
  const RegionGraph rg = build_region_graph(g);
  std::vector<Region> regions = rg.regions();
  std::vector<std::pair<int, int>> edges = rg.edges();
  edges.emplace_back(rg.find({2, 4, 5}), rg.find({4}));
  std::sort(edges.begin(), edges.end());
  const RegionGraph corrupted =
      RegionGraph::assemble(std::move(regions), std::move(edges));

  const RegionGraphReport report = validate_region_graph(corrupted, g);
  bool minimality_failed = false;
  for (const RegionCheck& c : report.checks) {
    if (c.name == "edge-minimality") minimality_failed = !c.pass;
  }
  CHECK(minimality_failed);
}

TEST_CASE("local/global consistency holds across random graphs") {
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    const ContentionGraph g = random_geometric_graph(40, 4.0, seed);
    const RegionGraph global = build_region_graph(g);
    const RegionGraphReport greport = validate_region_graph(global, g);
    for (const RegionCheck& c : greport.checks) {
      INFO("global ", c.name, ": ", c.detail);
      REQUIRE(c.pass);
    }
    for (LinkId j : g.ids()) {
      const LocalRegionGraph local = build_local_region_graph(g, j);
      const RegionGraphReport report =
          validate_local_region_graph(local, global, g);
      for (const RegionCheck& c : report.checks) {
        INFO("vertex ", j, " ", c.name, ": ", c.detail);
        REQUIRE(c.pass);
      }
    }
  }
}
