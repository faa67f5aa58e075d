#include <doctest.h>

#include <cmath>

#include "csmanet/errors.hpp"
#include "csmanet/icn.hpp"

#include "support.hpp"

using namespace csmanet;
using namespace testsupport;

TEST_CASE("partition function of a single link") {
  const ContentionGraph g({1}, {});
  const StationaryDistribution d = partition_function(g, {{1, 1.0}});
  CHECK(d.Z == doctest::Approx(2.0));
  CHECK(d.probability({}) == doctest::Approx(0.5));
  CHECK(d.probability({1}) == doctest::Approx(0.5));
}

TEST_CASE("partition function of the worked four-link example") {
  // Z = 1 + 4 rho + 2 rho^2 for the uniform intensity
  for (double rho : {0.5, 1.0, kDefaultRho}) {
    const auto g = star_square_graph();
    const StationaryDistribution d = partition_function(g, uniform_rho(g, rho));
    CHECK(d.Z == doctest::Approx(1.0 + 4.0 * rho + 2.0 * rho * rho));
    CHECK(d.probability({}) == doctest::Approx(1.0 / d.Z));
    CHECK(d.probability({1, 3}) == doctest::Approx(rho * rho / d.Z));
  }
  // two-link edge graph at rho = 1: states {}, {1}, {2}
  const ContentionGraph edge({1, 2}, {{1, 2}});
  CHECK(partition_function(edge, uniform_rho(edge, 1.0)).Z ==
        doctest::Approx(3.0));
}

TEST_CASE("stationary distribution invariants") {
  const auto g = nine_link_graph();
  const auto rho = random_rho(g, 0.3, 3.0, 99);
  const StationaryDistribution d = partition_function(g, rho);
  double total = 0.0;
  for (double p : d.prob) total += p;
  CHECK(std::abs(total - 1.0) < 1e-12);

  // detailed balance: adding one active link multiplies the probability by
  // its intensity, exactly
  for (std::size_t k = 0; k < d.states.size(); ++k) {
    const std::uint64_t s = d.states[k];
    for (int i = 0; i < g.size(); ++i) {
      if (s & (std::uint64_t{1} << i)) continue;
      bool blocked = false;
      for (int n : g.neighbors(i)) {
        if (s & (std::uint64_t{1} << n)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      const std::uint64_t grown = s | (std::uint64_t{1} << i);
      for (std::size_t m = 0; m < d.states.size(); ++m) {
        if (d.states[m] == grown) {
          CHECK(d.prob[m] / d.prob[k] ==
                doctest::Approx(rho.at(g.id_of(i))).epsilon(1e-12));
          break;
        }
      }
    }
  }
}

TEST_CASE("exact throughputs of the worked example") {
  const auto g = star_square_graph();
  const ThroughputVector th = exact_throughputs(g, uniform_rho(g, 1.0));
  CHECK(th.at(1) == doctest::Approx(3.0 / 7.0));
  CHECK(th.at(2) == doctest::Approx(1.0 / 7.0));
  CHECK(th.at(3) == doctest::Approx(2.0 / 7.0));
  CHECK(th.at(4) == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("exact throughput edge cases") {
  const ContentionGraph lonely({1}, {});
  for (double rho : {0.2, 1.0, 5.0}) {
    CHECK(exact_throughputs(lonely, {{1, rho}}).at(1) ==
          doctest::Approx(rho / (1.0 + rho)));
  }
  const auto tri = triangle();
  const ThroughputVector th = exact_throughputs(tri, uniform_rho(tri, 2.0));
  for (LinkId id : tri.ids()) CHECK(th.at(id) == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("clique airtime bound holds for exact throughputs") {
  const auto g = nine_link_graph();
  const ThroughputVector th = exact_throughputs(g, uniform_rho(g, kDefaultRho));
  double clique_sum = th.at(4) + th.at(5) + th.at(6);
  CHECK(clique_sum < 1.0);
}

TEST_CASE("forest DP agrees with enumeration") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ContentionGraph t = random_tree(12, seed);
    const auto rho = random_rho(t, 0.2, 4.0, seed + 100);
    const double z_dp = forest_partition_value(t, rho);

    double z_enum = 0.0;
    for_each_independent_set(t, 25, [&](std::uint64_t mask) {
      double w = 1.0;
      for (int i = 0; i < t.size(); ++i) {
        if (mask & (std::uint64_t{1} << i)) w *= rho.at(t.id_of(i));
      }
      z_enum += w;
    });
    CHECK(z_dp == doctest::Approx(z_enum).epsilon(1e-12));

    // throughputs through the DP path match the enumeration path
    const ThroughputVector th_dp = exact_throughputs(t, rho);
    double z = z_enum;
    for (int i = 0; i < t.size(); ++i) {
      double zi = 0.0;
      for_each_independent_set(t, 25, [&](std::uint64_t mask) {
        if (!(mask & (std::uint64_t{1} << i))) return;
        double w = 1.0;
        for (int v = 0; v < t.size(); ++v) {
          if (mask & (std::uint64_t{1} << v)) w *= rho.at(t.id_of(v));
        }
        zi += w;
      });
      CHECK(th_dp.at(t.id_of(i)) == doctest::Approx(zi / z).epsilon(1e-10));
    }
  }
}

TEST_CASE("forest DP rejects cyclic graphs") {
  CHECK_THROWS_AS(
      forest_partition_value(triangle(), uniform_rho(triangle(), 1.0)),
      GraphError);
}

TEST_CASE("subtree partition functions of a three-link path") {
  const ContentionGraph path = path_graph(3);
  const auto rho = uniform_rho(path, 1.0);
  // removing edge (1,2): L(2) = {2,3}, Z = 1 + 2 rho; L*(2) = {3}, Z = 1 + rho
  const auto [zl, zls] = subtree_partitions(path, rho, 1, 2);
  CHECK(zl == doctest::Approx(3.0));
  CHECK(zls == doctest::Approx(2.0));
}

TEST_CASE("subtree partitions: leaf and star cases") {
  const ContentionGraph edge({1, 2}, {{1, 2}});
  const auto [zl, zls] = subtree_partitions(edge, uniform_rho(edge, 0.7), 1, 2);
  CHECK(zl == doctest::Approx(1.7));  // 1 + rho
  CHECK(zls == doctest::Approx(1.0));

  // star rooted at 2 with leaves 3..6, probe edge (1,2)
  ContentionGraph star({1, 2, 3, 4, 5, 6},
                       {{1, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}});
  const double rho = 1.3;
  const auto [zl2, zls2] = subtree_partitions(star, uniform_rho(star, rho), 1, 2);
  const double expect_zls = std::pow(1.0 + rho, 4);
  CHECK(zls2 == doctest::Approx(expect_zls));
  CHECK(zl2 == doctest::Approx(expect_zls + rho));
}

TEST_CASE("subtree recursion closes over random trees") {
  // Z(L(j)) = prod_r Z(L(r)) + rho_j * prod_r Z(L*(r)) over j's children
  for (std::uint64_t seed = 5; seed <= 12; ++seed) {
    const ContentionGraph t = random_tree(20, seed);
    const auto rho = random_rho(t, 0.3, 3.0, seed + 7);
    for (auto [i, j] : t.edges()) {
      for (int flip = 0; flip < 2; ++flip) {
        const LinkId from = flip ? j : i;
        const LinkId to = flip ? i : j;
        const auto [zl, zls] = subtree_partitions(t, rho, from, to);
        double prod_l = 1.0, prod_ls = 1.0;
        for (LinkId r : t.neighbor_ids(to)) {
          if (r == from) continue;
          const auto [czl, czls] = subtree_partitions(t, rho, to, r);
          prod_l *= czl;
          prod_ls *= czls;
        }
        CHECK(zl == doctest::Approx(prod_l + rho.at(to) * prod_ls).epsilon(1e-12));
        CHECK(zls == doctest::Approx(prod_l).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("subtree partitions reject non-trees") {
  CHECK_THROWS_AS(
      subtree_partitions(triangle(), uniform_rho(triangle(), 1.0), 1, 2),
      GraphError);
}
