#pragma once

#include <map>
#include <string>
#include <vector>

#include "csmanet/acsma.hpp"
#include "csmanet/bp.hpp"
#include "csmanet/gbp.hpp"
#include "csmanet/graph.hpp"
#include "csmanet/region_graph.hpp"
#include "csmanet/types.hpp"

namespace csmanet {

enum class AgentKind { bp, ibp, bp_acsma, gbp, igbp, gbp_acsma };

AgentKind parse_agent_kind(const std::string& name);
std::string agent_kind_name(AgentKind kind);

/// A region-graph edge identified by member sets, the wire-level key under
/// which region messages are broadcast.
using RegionKey = std::vector<LinkId>;
using MessageKey = std::pair<RegionKey, RegionKey>;  // (parent, child)

/// Topology change applied between rounds. Events reference entities that
/// must exist (or not yet exist, for additions) when they fire.
struct ChurnEvent {
  enum class Kind { add_link, remove_link, add_edge, remove_edge };
  int round = 1;  // message round just before which the event applies
  Kind kind = Kind::remove_link;
  LinkId link = -1;             // add_link / remove_link
  std::vector<LinkId> attach;   // neighbors of an added link
  LinkId a = -1, b = -1;        // add_edge / remove_edge
  double rho = kDefaultRho;     // parameters of an added link
  double target = 0.1;
};

struct RoundSchedule {
  int rounds = 50;     // message rounds (the 3 bootstrap rounds come first)
  int t1_period = 10;  // rounds between topology refreshes
  std::vector<ChurnEvent> churn;
};

struct HarnessParams {
  AccessIntensities rho;     // bp / gbp
  ThroughputVector targets;  // ibp / igbp
  UtilitySpec utility;       // *_acsma kinds
  BpConfig bp;               // damping / normalization knobs (pairwise kinds)
  double gbp_alpha = 0.5;    // message smoothing (region kinds)
};

struct AgentSnapshot {
  LinkId id = -1;
  double th = 0.0;
  double rho = 0.0;
  bool reset = false;  // message state reinitialized at this round's refresh
};

struct RoundSnapshot {
  int round = 0;  // message round, 1-based
  std::vector<AgentSnapshot> agents;  // sorted by id
};

struct HarnessResult {
  std::vector<RoundSnapshot> rounds;
  ContentionGraph final_graph;
};

/// Runs the given algorithm as autonomous per-link agents in synchronous
/// rounds: every round each agent (1) broadcasts its end-of-previous-round
/// state, (2) the delivery layer hands each agent exactly the broadcasts of
/// its current one-hop neighbors, (3) all agents update. Three bootstrap
/// rounds of topology broadcasts precede message passing; topology tuples
/// keep flowing every round, and agents re-derive their neighbor sets,
/// local graphs, regions and owned messages at refresh rounds (every
/// t1_period rounds, plus three rounds after each churn event). Agents
/// whose local structure changed restart their messages and are flagged.
HarnessResult run_harness(const ContentionGraph& g, AgentKind kind,
                          const RoundSchedule& schedule,
                          const HarnessParams& params);

/// The three-round local-topology bootstrap, exposed for inspection.
/// Snapshots are taken after each round's ingest: g1 is the agent's closed
/// one-hop estimate, gj the union of the latest heard closed neighborhoods.
struct BootstrapRound {
  std::map<LinkId, ContentionGraph> g1;
  std::map<LinkId, ContentionGraph> gj;
};
std::vector<BootstrapRound> bootstrap_trace(const ContentionGraph& g);

/// Final per-agent local contention graphs after exactly three rounds.
std::map<LinkId, ContentionGraph> bootstrap_local_graphs(
    const ContentionGraph& g);

/// Message-agent election: the edges of the local region graph whose child
/// region's lowest member id is `id`. (For an edge P -> R the overlap
/// P ∩ R is R itself.)
std::vector<MessageKey> elect_message_agents(const LocalRegionGraph& local,
                                             LinkId id);

/// Per-agent verification that distributed GBP has what it needs:
///   f1: the local region graph adds nothing that is not global;
///   f2: the belief of the agent's chosen region is computable from
///       hearable broadcasts alone and matches the centralized value;
///   f3: every owned message is computable from hearable broadcasts alone.
/// `withhold_broadcasts_from` silences one link's broadcasts to show the
/// checks are not vacuous.
struct FeatureReport {
  struct Entry {
    LinkId agent = -1;
    bool f1 = true;
    bool f2 = true;
    bool f3 = true;
    std::string detail;
  };
  std::vector<Entry> entries;
  bool all_pass() const;
};
FeatureReport check_features(const ContentionGraph& g,
                             const AccessIntensities& rho,
                             LinkId withhold_broadcasts_from = -1);

} // namespace csmanet
