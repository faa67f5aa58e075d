#include <doctest.h>

#include <algorithm>
#include <set>

#include "csmanet/cliques.hpp"
#include "csmanet/errors.hpp"
#include "csmanet/graph.hpp"
#include "csmanet/independent_sets.hpp"

#include "support.hpp"

using namespace csmanet;
using namespace testsupport;

TEST_CASE("graph construction and validation") {
  const ContentionGraph g = star_square_graph();
  CHECK(g.size() == 4);
  CHECK(g.edge_count() == 4);
  CHECK(g.adjacent(1, 2));
  CHECK(g.adjacent(3, 4));
  CHECK_FALSE(g.adjacent(1, 3));

  CHECK_THROWS_AS(ContentionGraph({1, 1, 2}, {}), GraphError);
  CHECK_THROWS_AS(ContentionGraph({1}, {{1, 1}}), GraphError);
  CHECK_THROWS_AS(ContentionGraph({1, 2}, {{1, 3}}), GraphError);

  const ContentionGraph isolated({1}, {});
  CHECK(isolated.size() == 1);
  CHECK(isolated.degree(0) == 0);
}

TEST_CASE("ring generator") {
  const ContentionGraph tri = ring_graph(3);
  const auto cliques = enumerate_maximal_cliques(tri);
  REQUIRE(cliques.size() == 1);
  CHECK(cliques[0] == Clique{1, 2, 3});

  const ContentionGraph c8 = ring_graph(8);
  CHECK(c8.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(c8.degree(i) == 2);

  CHECK_THROWS_AS(ring_graph(2), GraphError);
}

TEST_CASE("cayley tree generator") {
  // layers count the shells of links around the root link
  const ContentionGraph star = cayley_tree_graph(3, 1);
  CHECK(star.size() == 4);
  CHECK(star.degree(star.index_of(1)) == 3);

  CHECK(cayley_tree_graph(3, 2).size() == 10);

  const ContentionGraph big = cayley_tree_graph(3, 4);
  CHECK(big.size() == 46);  // 1 + 3 * (2^4 - 1)
  CHECK(is_tree(big));
  // interior links have exactly z neighbors
  int interior = 0;
  for (int i = 0; i < big.size(); ++i) {
    if (big.degree(i) == 3) ++interior;
  }
  CHECK(interior == 46 - 24);  // all but the outermost shell

  CHECK_THROWS_AS(cayley_tree_graph(3, 0), GraphError);
  CHECK_THROWS_AS(cayley_tree_graph(1, 2), GraphError);
}

TEST_CASE("random geometric generator hits the degree target") {
  const ContentionGraph g = random_geometric_graph(100, 4.0, 7);
  CHECK(g.size() == 100);
  CHECK(g.mean_degree() >= 3.5);
  CHECK(g.mean_degree() <= 4.5);

  // determinism
  const ContentionGraph h = random_geometric_graph(100, 4.0, 7);
  CHECK(std::equal(g.edges().begin(), g.edges().end(), h.edges().begin(),
                   h.edges().end()));

  const ContentionGraph single = random_geometric_graph(1, 0.0, 1);
  CHECK(single.size() == 1);
  CHECK(single.edge_count() == 0);

  CHECK_THROWS_AS(random_geometric_graph(10, 20.0, 1), GraphError);
}

TEST_CASE("maximal cliques of the nine-link example") {
  const auto cliques = enumerate_maximal_cliques(nine_link_graph());
  const std::vector<Clique> expected = {{1, 2}, {1, 3},    {2, 4, 5},
                                        {3, 4}, {4, 5, 6}, {5, 6, 8},
                                        {5, 9}, {6, 7}};
  CHECK(cliques == expected);
}

TEST_CASE("maximal cliques cover and antichain on random graphs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ContentionGraph g = random_geometric_graph(40, 4.0, seed);
    const auto cliques = enumerate_maximal_cliques(g);
    // every vertex and edge covered
    std::set<LinkId> covered;
    for (const auto& c : cliques) covered.insert(c.begin(), c.end());
    CHECK(covered.size() == static_cast<std::size_t>(g.size()));
    for (auto [a, b] : g.edges()) {
      bool found = false;
      for (const auto& c : cliques) {
        if (std::binary_search(c.begin(), c.end(), a) &&
            std::binary_search(c.begin(), c.end(), b)) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
    // no clique inside another
    for (const auto& a : cliques) {
      for (const auto& b : cliques) {
        if (&a == &b) continue;
        CHECK_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      }
    }
  }
}

TEST_CASE("isolated vertices come out as singleton cliques") {
  const ContentionGraph g({1, 2, 3}, {});
  const auto cliques = enumerate_maximal_cliques(g);
  CHECK(cliques == std::vector<Clique>{{1}, {2}, {3}});
}

TEST_CASE("independent sets of the worked example") {
  const auto sets = all_independent_sets(star_square_graph());
  CHECK(sets.size() == 7);
  const std::set<std::vector<LinkId>> expected = {
      {}, {1}, {2}, {3}, {4}, {1, 3}, {1, 4}};
  CHECK(std::set<std::vector<LinkId>>(sets.begin(), sets.end()) == expected);

  CHECK(count_independent_sets(triangle()) == 4);
  CHECK(count_independent_sets(ContentionGraph({1, 2, 3}, {})) == 8);
}

TEST_CASE("ring independent-set counts follow the Lucas numbers") {
  // L_3.. : 4, 7, 11, 18, 29, 47, 76, 123, 199, 322, 521, 843
  std::uint64_t lucas_prev = 3, lucas = 4;  // L_2, L_3
  for (int n = 3; n <= 15; ++n) {
    CHECK(count_independent_sets(ring_graph(n)) == lucas);
    const std::uint64_t next = lucas + lucas_prev;
    lucas_prev = lucas;
    lucas = next;
  }
}

TEST_CASE("enumeration refuses graphs beyond the cap") {
  const ContentionGraph g = random_geometric_graph(30, 3.0, 3);
  CHECK_THROWS_AS(count_independent_sets(g, 25), CapExceeded);
  CHECK_NOTHROW(count_independent_sets(g, 31));
}

TEST_CASE("two-hop local graph of the nine-link example") {
  const ContentionGraph local = two_hop_local_graph(nine_link_graph(), 1);
  const std::vector<LinkId> want_ids{1, 2, 3, 4, 5};
  CHECK(std::equal(local.ids().begin(), local.ids().end(), want_ids.begin(),
                   want_ids.end()));
  const std::vector<std::pair<LinkId, LinkId>> want_edges{
      {1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 4}, {4, 5}};
  CHECK(std::equal(local.edges().begin(), local.edges().end(),
                   want_edges.begin(), want_edges.end()));
}

TEST_CASE("two-hop local graph edge cases") {
  const ContentionGraph lonely({7}, {});
  const ContentionGraph local = two_hop_local_graph(lonely, 7);
  CHECK(local.size() == 1);

  const ContentionGraph tri_local = two_hop_local_graph(triangle(), 2);
  CHECK(tri_local.size() == 3);
  CHECK(tri_local.edge_count() == 3);

  CHECK_THROWS_AS(two_hop_local_graph(triangle(), 99), GraphError);
}

TEST_CASE("two-hop local graph contains every maximal clique touching the "
          "closed neighborhood") {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    const ContentionGraph g = random_geometric_graph(35, 4.0, seed);
    const auto cliques = enumerate_maximal_cliques(g);
    for (LinkId j : g.ids()) {
      const ContentionGraph local = two_hop_local_graph(g, j);
      std::set<LinkId> closed{j};
      for (LinkId n : g.neighbor_ids(j)) closed.insert(n);
      for (const auto& c : cliques) {
        const bool touches = std::any_of(c.begin(), c.end(), [&](LinkId v) {
          return closed.count(v) > 0;
        });
        if (!touches) continue;
        for (std::size_t x = 0; x < c.size(); ++x) {
          REQUIRE(local.has_link(c[x]));
          for (std::size_t y = x + 1; y < c.size(); ++y) {
            REQUIRE(local.adjacent(c[x], c[y]));
          }
        }
      }
    }
  }
}

TEST_CASE("diameter and forest predicates") {
  CHECK(graph_diameter(path_graph(5)) == 4);
  CHECK(graph_diameter(ring_graph(8)) == 4);
  CHECK(is_tree(path_graph(5)));
  CHECK_FALSE(is_forest(triangle()));
  CHECK(is_forest(ContentionGraph({1, 2, 3}, {{1, 2}})));
  CHECK_FALSE(is_connected(ContentionGraph({1, 2, 3}, {{1, 2}})));
}
