#pragma once

#include <vector>

#include "csmanet/region_graph.hpp"
#include "csmanet/types.hpp"

namespace csmanet {

/// Messages over the region-graph edges. m[e] is the message along edge e
/// (parent -> child), a vector over the child's joint states. A region of
/// k links, being a clique, has exactly k+1 feasible states: index 0 = all
/// idle, index 1+t = the t-th member (in sorted order) transmitting alone.
struct RegionMessageTable {
  std::vector<std::vector<double>> m;
};

/// State index of `sub` induced by the active link of a super-region state
/// (-1 = all idle). An active link outside `sub` projects to all-idle.
int induced_state(const Region& sub, LinkId active);

struct GbpConfig {
  double tol = 1e-2;     // relative change of messages (GBP) / rho (IGBP)
  int max_iter = 2000;
  double alpha = 0.5;    // weight of the freshly computed message
};

/// Product of the external messages into the descendant closure of region
/// r, evaluated per state of r; the region's belief without its own
/// phi weights.
std::vector<double> region_state_weights(const RegionGraph& rg,
                                         const RegionMessageTable& msgs,
                                         int r);

/// Normalized region belief: phi(s_R) times all external messages into the
/// descendant closure.
std::vector<double> region_belief(const RegionGraph& rg,
                                  const AccessIntensities& rho,
                                  const RegionMessageTable& msgs, int r);

/// Parent-to-child update for one edge: marginalize the parent's extra
/// members against the numerator messages, divide by the internal messages,
/// normalize. Undamped.
std::vector<double> gbp_message_update(const RegionGraph& rg,
                                       const AccessIntensities& rho,
                                       const RegionMessageTable& msgs,
                                       int edge);

/// One synchronous sweep over every edge, blended against the previous
/// table with weight alpha on the fresh value.
RegionMessageTable gbp_sweep(const RegionGraph& rg,
                             const AccessIntensities& rho,
                             const RegionMessageTable& msgs, double alpha);

/// Start-up messages: the compatibility-and-weight sum over the parent's
/// extra members (all downstream messages at one).
RegionMessageTable initial_gbp_messages(const RegionGraph& rg,
                                        const AccessIntensities& rho);
/// Inverse-run variant: compatibility only, no weights.
RegionMessageTable initial_igbp_messages(const RegionGraph& rg);

struct GbpResult {
  ThroughputVector th;
  int iterations = 0;
  bool converged = false;
  std::vector<std::vector<double>> history;  // per-vertex th per sweep
  RegionGraph region_graph;
  RegionMessageTable final_msgs;
};

/// Builds the region graph and iterates to convergence; th_j comes from
/// marginalizing the smallest region containing j.
GbpResult run_gbp(const ContentionGraph& g, const AccessIntensities& rho,
                  const GbpConfig& cfg = {});
/// Same, over a caller-provided region graph.
GbpResult run_gbp_on(const ContentionGraph& g, const RegionGraph& rg,
                     const AccessIntensities& rho, const GbpConfig& cfg = {});

/// Clique-pinned region belief: state "i active" carries the target of i,
/// all-idle carries 1 - sum of member targets.
std::vector<double> pinned_region_belief(const RegionGraph& rg,
                                         const ThroughputVector& targets,
                                         int r);

/// Access intensities recovered from pinned beliefs and current messages,
/// each link solved in its smallest containing region.
AccessIntensities igbp_extract_rho(const RegionGraph& rg,
                                   const ThroughputVector& targets,
                                   const RegionMessageTable& msgs);

struct IgbpResult {
  AccessIntensities rho;
  int iterations = 0;
  bool converged = false;  // IGBP has no general convergence guarantee
  std::vector<std::vector<double>> rho_history;
  RegionGraph region_graph;
};

/// Inverse GBP. Throws InfeasibleTargets when any level-0 region's target
/// sum reaches 1 (clique airtime bound) or any target leaves (0, 1).
IgbpResult run_igbp(const ContentionGraph& g, const ThroughputVector& targets,
                    const GbpConfig& cfg = {});

} // namespace csmanet
