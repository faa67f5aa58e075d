#include "csmanet/gbp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csmanet/convergence.hpp"
#include "csmanet/errors.hpp"

namespace csmanet {

namespace {

constexpr double kDenomClamp = 1e-300;

double rho_of(const AccessIntensities& rho, LinkId id) {
  auto it = rho.find(id);
  if (it == rho.end()) {
    throw GraphError("missing access intensity for link " + std::to_string(id));
  }
  return it->second;
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  if (s > 0.0) {
    for (double& x : v) x /= s;
  }
}

LinkId active_of(const Region& r, int state) {
  return state == 0 ? -1 : r.members[static_cast<std::size_t>(state - 1)];
}

RegionMessageTable ones_table(const RegionGraph& rg) {
  RegionMessageTable t;
  t.m.resize(rg.edges().size());
  for (std::size_t e = 0; e < rg.edges().size(); ++e) {
    const auto& child = rg.regions()[static_cast<std::size_t>(rg.edges()[e].second)];
    t.m[e].assign(child.members.size() + 1, 1.0);
  }
  return t;
}

std::vector<double> th_by_smallest_region(const ContentionGraph& g,
                                          const RegionGraph& rg,
                                          const AccessIntensities& rho,
                                          const RegionMessageTable& msgs) {
  std::vector<double> th(static_cast<std::size_t>(g.size()), 0.0);
  std::vector<double> cache;
  int cached_region = -1;
  for (int i = 0; i < g.size(); ++i) {
    const LinkId id = g.id_of(i);
    const int r = rg.smallest_region_containing(id);
    if (r != cached_region) {
      cache = region_belief(rg, rho, msgs, r);
      cached_region = r;
    }
    th[static_cast<std::size_t>(i)] =
        cache[static_cast<std::size_t>(induced_state(
            rg.regions()[static_cast<std::size_t>(r)], id))];
  }
  return th;
}

double max_rel_message_delta(const RegionMessageTable& a,
                             const RegionMessageTable& b) {
  double worst = 0.0;
  for (std::size_t e = 0; e < a.m.size(); ++e) {
    for (std::size_t s = 0; s < a.m[e].size(); ++s) {
      const double denom = std::max(std::abs(a.m[e][s]), kRelFloor);
      worst = std::max(worst, std::abs(a.m[e][s] - b.m[e][s]) / denom);
    }
  }
  return worst;
}

} // namespace

int induced_state(const Region& sub, LinkId active) {
  if (active < 0) return 0;
  const auto it =
      std::lower_bound(sub.members.begin(), sub.members.end(), active);
  if (it == sub.members.end() || *it != active) return 0;
  return static_cast<int>(it - sub.members.begin()) + 1;
}

std::vector<double> region_state_weights(const RegionGraph& rg,
                                         const RegionMessageTable& msgs,
                                         int r) {
  const Region& region = rg.regions()[static_cast<std::size_t>(r)];
  const int states = static_cast<int>(region.members.size()) + 1;
  std::vector<double> w(static_cast<std::size_t>(states), 1.0);
  for (int s = 0; s < states; ++s) {
    const LinkId active = active_of(region, s);
    for (int e : rg.external_into(r)) {
      const auto& child =
          rg.regions()[static_cast<std::size_t>(rg.edges()[static_cast<std::size_t>(e)].second)];
      w[static_cast<std::size_t>(s)] *=
          msgs.m[static_cast<std::size_t>(e)]
               [static_cast<std::size_t>(induced_state(child, active))];
    }
  }
  return w;
}

std::vector<double> region_belief(const RegionGraph& rg,
                                  const AccessIntensities& rho,
                                  const RegionMessageTable& msgs, int r) {
  const Region& region = rg.regions()[static_cast<std::size_t>(r)];
  std::vector<double> b = region_state_weights(rg, msgs, r);
  for (std::size_t t = 0; t < region.members.size(); ++t) {
    b[t + 1] *= rho_of(rho, region.members[t]);
  }
  normalize(b);
  return b;
}

std::vector<double> gbp_message_update(const RegionGraph& rg,
                                       const AccessIntensities& rho,
                                       const RegionMessageTable& msgs,
                                       int edge) {
  const auto [pi, ri] = rg.edges()[static_cast<std::size_t>(edge)];
  const Region& parent = rg.regions()[static_cast<std::size_t>(pi)];
  const Region& child = rg.regions()[static_cast<std::size_t>(ri)];
  const auto& sets = rg.edge_sets(edge);

  std::vector<double> out(child.members.size() + 1, 0.0);

  // Sum the parent's feasible states into the child states they induce;
  // the compatibility factors are implicit since at most one member of a
  // clique can transmit.
  const int pstates = static_cast<int>(parent.members.size()) + 1;
  for (int sp = 0; sp < pstates; ++sp) {
    const LinkId active = active_of(parent, sp);
    double w = 1.0;
    if (active >= 0 && induced_state(child, active) == 0) {
      w *= rho_of(rho, active);  // weight over the parent's extra members
    }
    for (int e2 : sets.numerator) {
      const auto& target =
          rg.regions()[static_cast<std::size_t>(rg.edges()[static_cast<std::size_t>(e2)].second)];
      w *= msgs.m[static_cast<std::size_t>(e2)]
                 [static_cast<std::size_t>(induced_state(target, active))];
    }
    out[static_cast<std::size_t>(induced_state(child, active))] += w;
  }

  for (std::size_t sr = 0; sr < out.size(); ++sr) {
    const LinkId active = active_of(child, static_cast<int>(sr));
    double denom = 1.0;
    for (int e2 : sets.denominator) {
      const auto& target =
          rg.regions()[static_cast<std::size_t>(rg.edges()[static_cast<std::size_t>(e2)].second)];
      denom *= msgs.m[static_cast<std::size_t>(e2)]
                     [static_cast<std::size_t>(induced_state(target, active))];
    }
    out[sr] /= std::max(denom, kDenomClamp);
  }
  normalize(out);
  return out;
}

RegionMessageTable gbp_sweep(const RegionGraph& rg,
                             const AccessIntensities& rho,
                             const RegionMessageTable& msgs, double alpha) {
  RegionMessageTable next = msgs;
  for (int e = 0; e < rg.edge_count(); ++e) {
    const std::vector<double> fresh = gbp_message_update(rg, rho, msgs, e);
    auto& slot = next.m[static_cast<std::size_t>(e)];
    for (std::size_t s = 0; s < slot.size(); ++s) {
      slot[s] = (1.0 - alpha) * slot[s] + alpha * fresh[s];
    }
  }
  return next;
}

RegionMessageTable initial_gbp_messages(const RegionGraph& rg,
                                        const AccessIntensities& rho) {
  return gbp_sweep(rg, rho, ones_table(rg), 1.0);
}

RegionMessageTable initial_igbp_messages(const RegionGraph& rg) {
  AccessIntensities ones;
  for (const Region& r : rg.regions()) {
    for (LinkId id : r.members) ones[id] = 1.0;
  }
  return gbp_sweep(rg, ones, ones_table(rg), 1.0);
}

GbpResult run_gbp(const ContentionGraph& g, const AccessIntensities& rho,
                  const GbpConfig& cfg) {
  return run_gbp_on(g, build_region_graph(g), rho, cfg);
}

GbpResult run_gbp_on(const ContentionGraph& g, const RegionGraph& rg,
                     const AccessIntensities& rho, const GbpConfig& cfg) {
  GbpResult res;
  res.region_graph = rg;
  RegionMessageTable msgs = initial_gbp_messages(rg, rho);
  for (int n = 1; n <= cfg.max_iter; ++n) {
    res.history.push_back(th_by_smallest_region(g, rg, rho, msgs));
    res.iterations = n;
    if (n == cfg.max_iter) break;
    RegionMessageTable next = gbp_sweep(rg, rho, msgs, cfg.alpha);
    const double delta = max_rel_message_delta(next, msgs);
    msgs = std::move(next);
    if (delta < cfg.tol) {
      // record the beliefs of the converged table as the final iteration
      res.history.push_back(th_by_smallest_region(g, rg, rho, msgs));
      res.iterations = n + 1;
      res.converged = true;
      break;
    }
  }
  for (int i = 0; i < g.size(); ++i) {
    res.th[g.id_of(i)] = res.history.back()[static_cast<std::size_t>(i)];
  }
  res.final_msgs = std::move(msgs);
  return res;
}

std::vector<double> pinned_region_belief(const RegionGraph& rg,
                                         const ThroughputVector& targets,
                                         int r) {
  const Region& region = rg.regions()[static_cast<std::size_t>(r)];
  std::vector<double> b(region.members.size() + 1, 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < region.members.size(); ++t) {
    auto it = targets.find(region.members[t]);
    if (it == targets.end()) {
      throw GraphError("missing target throughput for link " +
                       std::to_string(region.members[t]));
    }
    b[t + 1] = it->second;
    total += it->second;
  }
  b[0] = 1.0 - total;
  return b;
}

AccessIntensities igbp_extract_rho(const RegionGraph& rg,
                                   const ThroughputVector& targets,
                                   const RegionMessageTable& msgs) {
  AccessIntensities rho;
  for (const auto& [id, th] : targets) {
    const int r = rg.smallest_region_containing(id);
    if (r < 0) {
      throw GraphError("link " + std::to_string(id) + " not in any region");
    }
    const Region& region = rg.regions()[static_cast<std::size_t>(r)];
    const std::vector<double> b = pinned_region_belief(rg, targets, r);
    const std::vector<double> w = region_state_weights(rg, msgs, r);
    const int s_active = induced_state(region, id);
    // rho_j = [b(j active)/b(idle)] * [w(idle)/w(j active)]
    double value = b[static_cast<std::size_t>(s_active)] /
                   std::max(b[0], kDenomClamp);
    value *= w[0] / std::max(w[static_cast<std::size_t>(s_active)], kDenomClamp);
    rho[id] = value;
  }
  return rho;
}

IgbpResult run_igbp(const ContentionGraph& g, const ThroughputVector& targets,
                    const GbpConfig& cfg) {
  IgbpResult res;
  res.region_graph = build_region_graph(g);
  const RegionGraph& rg = res.region_graph;

  for (int i = 0; i < g.size(); ++i) {
    auto it = targets.find(g.id_of(i));
    const double th = (it == targets.end()) ? -1.0 : it->second;
    if (!(th > 0.0) || !(th < 1.0)) {
      throw InfeasibleTargets("target throughput of link " +
                              std::to_string(g.id_of(i)) +
                              " must lie strictly inside (0, 1)");
    }
  }
  for (const Region& r : rg.regions()) {
    if (r.level != 0) continue;
    double sum = 0.0;
    for (LinkId id : r.members) sum += targets.at(id);
    if (sum >= 1.0) {
      throw InfeasibleTargets(
          "clique airtime bound violated: targets sum to " +
          std::to_string(sum) + " over a maximal clique");
    }
  }

  RegionMessageTable msgs = initial_igbp_messages(rg);
  // Weights fed to the sweep lag one iteration behind the solve: an agent
  // only ever hears the intensities its neighbors broadcast last round.
  // The starting value is the extraction from the start-up messages, which
  // every agent can compute locally before the first exchange.
  AccessIntensities rho_for_sweep = igbp_extract_rho(rg, targets, msgs);
  std::vector<double> prev;
  for (int n = 1; n <= cfg.max_iter; ++n) {
    const AccessIntensities rho = igbp_extract_rho(rg, targets, msgs);
    std::vector<double> flat(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
      flat[static_cast<std::size_t>(i)] = rho.at(g.id_of(i));
    }
    res.rho_history.push_back(flat);
    res.iterations = n;
    res.rho = rho;
    if (n >= 2 && max_rel_delta(res.rho_history.back(), prev) < cfg.tol) {
      res.converged = true;
      break;
    }
    prev = res.rho_history.back();
    if (n == cfg.max_iter) break;
    msgs = gbp_sweep(rg, rho_for_sweep, msgs, cfg.alpha);
    rho_for_sweep = rho;
  }
  return res;
}

} // namespace csmanet
