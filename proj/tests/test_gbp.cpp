#include <doctest.h>

#include <cmath>

#include "csmanet/bp.hpp"
#include "csmanet/errors.hpp"
#include "csmanet/gbp.hpp"
#include "csmanet/icn.hpp"

#include "support.hpp"

using namespace csmanet;
using namespace testsupport;

namespace {

GbpConfig tight() {
  GbpConfig cfg;
  cfg.tol = 1e-11;
  cfg.max_iter = 5000;
  return cfg;
}

double max_th_error(const ThroughputVector& a, const ThroughputVector& b) {
  double worst = 0.0;
  for (const auto& [id, v] : a) worst = std::max(worst, std::abs(v - b.at(id)));
  return worst;
}

} // namespace

TEST_CASE("single-region belief is the exact clique distribution") {
  const auto tri = triangle();
  const RegionGraph rg = build_region_graph(tri);
  const auto rho1 = uniform_rho(tri, 1.0);
  const RegionMessageTable msgs = initial_gbp_messages(rg, rho1);
  const std::vector<double> b = region_belief(rg, rho1, msgs, 0);
  REQUIRE(b.size() == 4);
  for (double v : b) CHECK(v == doctest::Approx(0.25));  // Z = 1 + 3 rho = 4
}

TEST_CASE("gbp solves the triangle exactly") {
  const auto tri = triangle();
  const auto rho = uniform_rho(tri, 2.0);
  const GbpResult r = run_gbp(tri, rho, tight());
  for (LinkId id : tri.ids()) {
    CHECK(r.th.at(id) == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
  }
  CHECK(r.converged);
}

TEST_CASE("gbp on an isolated vertex") {
  const ContentionGraph g({4}, {});
  const GbpResult r = run_gbp(g, {{4, 3.0}}, tight());
  CHECK(r.th.at(4) == doctest::Approx(0.75));
}

TEST_CASE("gbp is exact on trees") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const ContentionGraph t = random_tree(4 + static_cast<int>(seed * 3), seed);
    const auto rho = random_rho(t, 0.1, 4.0 * kDefaultRho, seed + 31);
    const GbpResult r = run_gbp(t, rho, tight());
    CHECK(max_th_error(r.th, exact_throughputs(t, rho)) < 1e-9);
    CHECK(r.converged);
  }
}

TEST_CASE("gbp is exact whenever the region graph is loop-free") {
  // complete graphs: one region
  for (int n : {2, 3, 5}) {
    std::vector<LinkId> ids;
    std::vector<std::pair<LinkId, LinkId>> edges;
    for (int i = 1; i <= n; ++i) {
      ids.push_back(i);
      for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
    }
    const ContentionGraph kn(std::move(ids), std::move(edges));
    const auto rho = random_rho(kn, 0.5, 3.0, 17);
    const GbpResult r = run_gbp(kn, rho, tight());
    REQUIRE(region_graph_is_loop_free(r.region_graph));
    CHECK(max_th_error(r.th, exact_throughputs(kn, rho)) < 1e-9);
  }

  // a chain of triangles sharing single vertices (clique tree)
  const ContentionGraph chain({1, 2, 3, 4, 5, 6, 7},
                              {{1, 2}, {1, 3}, {2, 3},
                               {3, 4}, {3, 5}, {4, 5},
                               {5, 6}, {5, 7}, {6, 7}});
  const auto rho = random_rho(chain, 0.5, 2.0, 23);
  const GbpResult r = run_gbp(chain, rho, tight());
  REQUIRE(region_graph_is_loop_free(r.region_graph));
  CHECK(max_th_error(r.th, exact_throughputs(chain, rho)) < 1e-9);
}

TEST_CASE("gbp beats bp on loopy graphs") {
  double bp_total = 0.0, gbp_total = 0.0;
  int graphs = 0;
  for (std::uint64_t seed = 500; seed < 520; ++seed) {
    const ContentionGraph g = random_connected_graph(18, 10, seed);
    const auto rho = uniform_rho(g, kDefaultRho);
    const ThroughputVector exact = exact_throughputs(g, rho);

    BpConfig bcfg;
    bcfg.tol = 1e-10;
    bcfg.max_iter = 4000;
    const ThroughputVector bp = run_bp(g, rho, bcfg).th;
    const ThroughputVector gbp = run_gbp(g, rho, tight()).th;

    double bp_err = 0.0, gbp_err = 0.0;
    for (LinkId id : g.ids()) {
      bp_err += std::abs(bp.at(id) - exact.at(id));
      gbp_err += std::abs(gbp.at(id) - exact.at(id));
    }
    bp_total += bp_err / g.size();
    gbp_total += gbp_err / g.size();
    ++graphs;
  }
  CHECK(gbp_total / graphs <= bp_total / graphs);
}

TEST_CASE("parent-child marginalization consistency at convergence") {
  for (std::uint64_t seed = 700; seed < 706; ++seed) {
    const ContentionGraph g = random_geometric_graph(25, 4.0, seed);
    const auto rho = uniform_rho(g, kDefaultRho);
    const GbpResult r = run_gbp(g, rho, tight());
    REQUIRE(r.converged);
    const RegionGraph& rg = r.region_graph;
    for (int e = 0; e < rg.edge_count(); ++e) {
      const auto [pi, ci] = rg.edges()[static_cast<std::size_t>(e)];
      const auto bp = region_belief(rg, rho, r.final_msgs, pi);
      const auto bc = region_belief(rg, rho, r.final_msgs, ci);
      const Region& parent = rg.regions()[static_cast<std::size_t>(pi)];
      const Region& child = rg.regions()[static_cast<std::size_t>(ci)];
      // marginalize the parent onto the child's states
      std::vector<double> folded(bc.size(), 0.0);
      for (std::size_t sp = 0; sp < bp.size(); ++sp) {
        const LinkId active =
            sp == 0 ? -1 : parent.members[sp - 1];
        folded[static_cast<std::size_t>(induced_state(child, active))] += bp[sp];
      }
      for (std::size_t s = 0; s < bc.size(); ++s) {
        CHECK(std::abs(folded[s] - bc[s]) < 1e-6);
      }
    }
  }
}

TEST_CASE("multi-region throughput estimates agree at convergence") {
  const ContentionGraph g = random_geometric_graph(20, 4.0, 808);
  const auto rho = uniform_rho(g, kDefaultRho);
  const GbpResult r = run_gbp(g, rho, tight());
  const RegionGraph& rg = r.region_graph;
  for (LinkId id : g.ids()) {
    const auto regions = rg.regions_containing(id);
    for (int ri : regions) {
      const auto b = region_belief(rg, rho, r.final_msgs, ri);
      const int s =
          induced_state(rg.regions()[static_cast<std::size_t>(ri)], id);
      CHECK(std::abs(b[static_cast<std::size_t>(s)] - r.th.at(id)) < 1e-6);
    }
  }
}

TEST_CASE("igbp rejects clique-infeasible targets") {
  const auto tri = triangle();
  CHECK_THROWS_AS(
      run_igbp(tri, {{1, 0.4}, {2, 0.4}, {3, 0.4}}, {}),
      InfeasibleTargets);
  CHECK_THROWS_AS(run_igbp(tri, {{1, 0.0}, {2, 0.2}, {3, 0.2}}, {}),
                  InfeasibleTargets);
}

TEST_CASE("igbp inverts an isolated link") {
  const ContentionGraph g({1}, {});
  const IgbpResult r = run_igbp(g, {{1, 0.5}}, tight());
  CHECK(r.rho.at(1) == doctest::Approx(1.0));
  CHECK(r.converged);
}

TEST_CASE("igbp round trip through the exact oracle") {
  for (std::uint64_t seed = 900; seed < 910; ++seed) {
    const ContentionGraph g = random_connected_graph(14, 7, seed);
    const auto rho = random_rho(g, kDefaultRho, 4.0 * kDefaultRho, seed + 5);
    const ThroughputVector target = exact_throughputs(g, rho);

    const IgbpResult inv = run_igbp(g, target, tight());
    REQUIRE(inv.converged);
    const ThroughputVector back = exact_throughputs(g, inv.rho);
    for (LinkId id : g.ids()) {
      CHECK(std::abs(back.at(id) - target.at(id)) / target.at(id) < 0.01);
    }
  }
}
