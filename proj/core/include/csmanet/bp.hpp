#pragma once

#include <array>
#include <vector>

#include "csmanet/graph.hpp"
#include "csmanet/types.hpp"

namespace csmanet {

/// Messages over the directed edges of a contention graph. m(j -> i) is
/// neighbor j's opinion of link i's state, stored as (value at s_i = 0,
/// value at s_i = 1). Slots are grouped by receiver: the message from the
/// k-th neighbor of i (in adjacency order) into i sits at offset[i] + k.
struct MessageTable {
  std::vector<int> offset;                // per receiver index
  std::vector<std::array<double, 2>> m;   // one slot per directed edge

  static MessageTable zeros(const ContentionGraph& g);

  std::array<double, 2>& at(const ContentionGraph& g, int receiver,
                            int nbr_pos) {
    return m[static_cast<std::size_t>(offset[static_cast<std::size_t>(receiver)] + nbr_pos)];
  }
  const std::array<double, 2>& at(const ContentionGraph& g, int receiver,
                                  int nbr_pos) const {
    return m[static_cast<std::size_t>(offset[static_cast<std::size_t>(receiver)] + nbr_pos)];
  }
  /// Message from link `from` into link `into`, looked up by id.
  const std::array<double, 2>& get(const ContentionGraph& g, LinkId from,
                                   LinkId into) const;
  std::array<double, 2>& get(const ContentionGraph& g, LinkId from,
                             LinkId into);
};

/// Per-link beliefs (b(0), b(1)), indexed like the graph's vertices.
using BeliefTable = std::vector<std::array<double, 2>>;

struct BpConfig {
  double tol = 1e-2;   // relative change of beliefs (BP) / rho (IBP)
  int max_iter = 1000;
  double damping = 0.0;  // weight kept on the previous message; 0 = none
  bool normalize_messages = true;  // switchable to exercise the
                                   // unnormalized-message behavior in tests
};

struct BpResult {
  ThroughputVector th;
  int iterations = 0;
  bool converged = false;
  /// history[n] = per-vertex throughput at sweep n+1 (beliefs are computed
  /// from the incoming messages of the previous sweep, mirroring the
  /// per-round order of the distributed agents).
  std::vector<std::vector<double>> history;
  MessageTable final_msgs;
};

/// Messages a vertex sends before hearing anything: (1 + rho_j, 1), the
/// compatibility-weighted sum over the sender's own states.
MessageTable initial_bp_messages(const ContentionGraph& g,
                                 const AccessIntensities& rho,
                                 bool normalize = true);

/// One synchronous sweep: every outgoing message recomputed from the
/// previous table, then normalized/damped per cfg.
MessageTable bp_message_update(const ContentionGraph& g,
                               const AccessIntensities& rho,
                               const MessageTable& msgs,
                               const BpConfig& cfg = {});

/// b_i proportional to phi_i times the product of incoming messages.
BeliefTable bp_beliefs(const ContentionGraph& g, const AccessIntensities& rho,
                       const MessageTable& msgs);

BpResult run_bp(const ContentionGraph& g, const AccessIntensities& rho,
                const BpConfig& cfg = {});

/// Belief propagation over the ratio variables n_ij = m_ij(1)/m_ij(0) and
/// c_i = b_i(1)/b_i(0); half the state of standard BP, same fixed point.
BpResult run_sbp(const ContentionGraph& g, const AccessIntensities& rho,
                 const BpConfig& cfg = {});

/// Ratio state of simplified BP. n slots share MessageTable's layout
/// (entry = message from the k-th neighbor of i into i).
struct SbpState {
  std::vector<int> offset;
  std::vector<double> n;
  std::vector<double> c;
};
SbpState sbp_from_messages(const ContentionGraph& g, const MessageTable& msgs,
                           const BeliefTable& beliefs);

struct IbpResult {
  AccessIntensities rho;
  int iterations = 0;
  bool converged = false;  // false signals a likely-infeasible target
  std::vector<std::vector<double>> rho_history;  // per-vertex, per sweep
  MessageTable final_msgs;
};

/// Initial inverse-BP messages: the target beliefs summed through the
/// compatibility function, (1, b_j(0)).
MessageTable initial_ibp_messages(const ContentionGraph& g,
                                  const ThroughputVector& targets,
                                  bool normalize = true);

/// One synchronous inverse sweep with beliefs pinned to the targets.
/// Message values in denominators are clamped below at 1e-300.
MessageTable ibp_message_update(const ContentionGraph& g,
                                const ThroughputVector& targets,
                                const MessageTable& msgs,
                                const BpConfig& cfg = {});

/// Access intensities consistent with the pinned beliefs and current
/// messages: rho_j = (b_j(1)/b_j(0)) * prod_i m_ij(0)/m_ij(1).
AccessIntensities ibp_extract_rho(const ContentionGraph& g,
                                  const ThroughputVector& targets,
                                  const MessageTable& msgs);

/// Iterates the inverse rule until the extracted intensities stabilize.
/// Requires every target in (0, 1).
IbpResult run_ibp(const ContentionGraph& g, const ThroughputVector& targets,
                  const BpConfig& cfg = {});

/// Closed-form BP fixed point on any ring, independent of its length:
/// b(0) = (1 + sqrt(1+4 rho)) / (2 sqrt(1+4 rho)). Returns (b(0), b(1)).
std::array<double, 2> ring_fixed_point(double rho);

} // namespace csmanet
