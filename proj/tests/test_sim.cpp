#include <doctest.h>

#include <cmath>

#include "csmanet/icn.hpp"
#include "csmanet/sim.hpp"

#include "support.hpp"

using namespace csmanet;
using namespace testsupport;

namespace {

// |a - b| within k combined standard errors (with a small absolute floor
// for the near-deterministic cases).
bool within_se(double a, double b, double se_a, double se_b, double k = 3.0) {
  const double se = std::sqrt(se_a * se_a + se_b * se_b);
  return std::abs(a - b) <= k * se + 1e-3;
}

} // namespace

TEST_CASE("isolated link reaches rho/(1+rho)") {
  const ContentionGraph g({1}, {});
  SimConfig cfg;
  cfg.horizon = 40000.0;
  cfg.seed = 11;
  const SimResult r = simulate_icn(g, {{1, 1.0}}, cfg);
  CHECK(within_se(r.th.at(1), 0.5, r.se.at(1), 0.0));
}

TEST_CASE("simulator matches exact marginals on the worked example") {
  const auto g = star_square_graph();
  const auto rho = uniform_rho(g, 1.0);
  SimConfig cfg;
  cfg.horizon = 60000.0;
  cfg.seed = 5;
  const SimResult r = simulate_icn(g, rho, cfg);
  const ThroughputVector exact = exact_throughputs(g, rho);
  for (LinkId id : g.ids()) {
    CHECK(within_se(r.th.at(id), exact.at(id), r.se.at(id), 0.0));
  }
}

TEST_CASE("simulator matches exact marginals on small random graphs") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const ContentionGraph g = random_connected_graph(10, 6, seed);
    const auto rho = random_rho(g, 0.5, 3.0, seed + 50);
    SimConfig cfg;
    cfg.horizon = 60000.0;
    cfg.seed = seed;
    const SimResult r = simulate_icn(g, rho, cfg);
    const ThroughputVector exact = exact_throughputs(g, rho);
    for (LinkId id : g.ids()) {
      CHECK(within_se(r.th.at(id), exact.at(id), r.se.at(id), 0.0));
    }
  }
}

TEST_CASE("throughputs are insensitive to the transmission distribution") {
  const auto g = star_square_graph();
  const auto rho = uniform_rho(g, 1.0);
  SimConfig base;
  base.horizon = 60000.0;
  base.seed = 21;

  SimConfig det = base;
  det.tx.kind = DistKind::deterministic;
  SimConfig uni = base;
  uni.tx.kind = DistKind::uniform;

  const SimResult exp_r = simulate_icn(g, rho, base);
  const SimResult det_r = simulate_icn(g, rho, det);
  const SimResult uni_r = simulate_icn(g, rho, uni);
  for (LinkId id : g.ids()) {
    CHECK(within_se(exp_r.th.at(id), det_r.th.at(id), exp_r.se.at(id),
                    det_r.se.at(id)));
    CHECK(within_se(exp_r.th.at(id), uni_r.th.at(id), exp_r.se.at(id),
                    uni_r.se.at(id)));
    CHECK(within_se(det_r.th.at(id), uni_r.th.at(id), det_r.se.at(id),
                    uni_r.se.at(id)));
  }
}

TEST_CASE("runs are deterministic for a fixed seed") {
  const auto g = nine_link_graph();
  const auto rho = uniform_rho(g, kDefaultRho);
  SimConfig cfg;
  cfg.horizon = 2000.0;
  cfg.seed = 77;
  const SimResult a = simulate_icn(g, rho, cfg);
  const SimResult b = simulate_icn(g, rho, cfg);
  for (LinkId id : g.ids()) CHECK(a.th.at(id) == b.th.at(id));
}

TEST_CASE("neighbors never transmit together") {
  // Drive the stepped simulator window by window; within each window the
  // per-link activity of a clique cannot exceed the window length.
  const auto tri = triangle();
  const auto rho = uniform_rho(tri, 5.0);
  SimConfig cfg;
  cfg.seed = 3;
  IcnSimulator sim(tri, rho, cfg);
  for (int w = 0; w < 50; ++w) {
    const auto active = sim.advance(10.0);
    CHECK(active[0] + active[1] + active[2] <= 10.0 + 1e-9);
  }
}

TEST_CASE("zero horizon is rejected") {
  const ContentionGraph g({1}, {});
  SimConfig cfg;
  cfg.horizon = 0.0;
  CHECK_THROWS(simulate_icn(g, {{1, 1.0}}, cfg));
}

TEST_CASE("intensity changes apply to subsequent windows") {
  const ContentionGraph g({1}, {});
  SimConfig cfg;
  cfg.seed = 9;
  IcnSimulator sim(g, {{1, 0.1}}, cfg);
  double t_low = 0.0;
  for (int w = 0; w < 40; ++w) t_low += sim.advance(50.0)[0];
  sim.set_access_intensities({{1, 10.0}});
  double t_high = 0.0;
  for (int w = 0; w < 40; ++w) t_high += sim.advance(50.0)[0];
  // 0.1/1.1 ~ 0.09 vs 10/11 ~ 0.91
  CHECK(t_low / 2000.0 < 0.2);
  CHECK(t_high / 2000.0 > 0.8);
}
