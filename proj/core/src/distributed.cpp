#include "csmanet/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "csmanet/convergence.hpp"
#include "csmanet/errors.hpp"

namespace csmanet {

AgentKind parse_agent_kind(const std::string& name) {
  if (name == "bp") return AgentKind::bp;
  if (name == "ibp") return AgentKind::ibp;
  if (name == "bp-acsma") return AgentKind::bp_acsma;
  if (name == "gbp") return AgentKind::gbp;
  if (name == "igbp") return AgentKind::igbp;
  if (name == "gbp-acsma") return AgentKind::gbp_acsma;
  throw std::invalid_argument("unknown agent kind: " + name);
}

std::string agent_kind_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::bp: return "bp";
    case AgentKind::ibp: return "ibp";
    case AgentKind::bp_acsma: return "bp-acsma";
    case AgentKind::gbp: return "gbp";
    case AgentKind::igbp: return "igbp";
    case AgentKind::gbp_acsma: return "gbp-acsma";
  }
  return "?";
}

namespace {

constexpr double kClamp = 1e-300;

bool is_region_kind(AgentKind k) {
  return k == AgentKind::gbp || k == AgentKind::igbp ||
         k == AgentKind::gbp_acsma;
}
bool is_inverse_kind(AgentKind k) {
  return k == AgentKind::ibp || k == AgentKind::igbp;
}
bool is_utility_kind(AgentKind k) {
  return k == AgentKind::bp_acsma || k == AgentKind::gbp_acsma;
}

/// A vertex's belief about a closed one-hop neighborhood, as broadcast.
struct TopoEstimate {
  std::set<LinkId> vertices;
  std::set<std::pair<LinkId, LinkId>> edges;  // canonical (a < b)

  bool operator==(const TopoEstimate&) const = default;
};

ContentionGraph to_graph(const std::set<LinkId>& vertices,
                         const std::set<std::pair<LinkId, LinkId>>& edges) {
  return ContentionGraph(
      std::vector<LinkId>(vertices.begin(), vertices.end()),
      std::vector<std::pair<LinkId, LinkId>>(edges.begin(), edges.end()));
}

struct Broadcast {
  LinkId sender = -1;
  int round = 0;
  TopoEstimate g1;
  double rho = 1.0;
  double target = 0.0;
  std::map<LinkId, std::array<double, 2>> bp_msgs;  // keyed by destination
  std::map<MessageKey, std::vector<double>> region_msgs;
};

std::array<double, 2> normalized(std::array<double, 2> m) {
  const double s = m[0] + m[1];
  if (s > 0.0) {
    m[0] /= s;
    m[1] /= s;
  }
  return m;
}

struct Agent {
  LinkId id = -1;
  AgentKind kind = AgentKind::bp;

  double rho = 1.0;
  double target = 0.0;
  double th = 0.0;
  bool reset_flag = false;

  // --- topology knowledge ---
  std::set<LinkId> heard;  // senders of the most recent round
  TopoEstimate g1;
  std::map<LinkId, TopoEstimate> nbr_g1;
  std::map<LinkId, double> nbr_rho;
  std::map<LinkId, double> nbr_target;

  // --- derived structure (rebuilt at refresh rounds) ---
  bool derived = false;
  ContentionGraph local;  // G_j
  LocalRegionGraph lrg;
  std::vector<MessageKey> owned;

  // --- message state ---
  std::map<LinkId, std::array<double, 2>> in_store;   // M_j
  std::map<LinkId, std::array<double, 2>> out_msgs;   // per destination
  std::map<MessageKey, std::vector<double>> region_store;
  std::map<MessageKey, std::vector<double>> own_region;

  void ingest_topology(const std::vector<const Broadcast*>& inbox) {
    heard.clear();
    for (const Broadcast* b : inbox) {
      heard.insert(b->sender);
      nbr_g1[b->sender] = b->g1;
      nbr_rho[b->sender] = b->rho;
      nbr_target[b->sender] = b->target;
    }
    // Rebuild the closed one-hop estimate from scratch so stale edges
    // wash out: own spokes plus any heard edge inside the neighborhood.
    g1.vertices.clear();
    g1.edges.clear();
    g1.vertices.insert(id);
    for (LinkId n : heard) {
      g1.vertices.insert(n);
      g1.edges.insert({std::min(id, n), std::max(id, n)});
    }
    for (const Broadcast* b : inbox) {
      for (const auto& e : b->g1.edges) {
        if (g1.vertices.count(e.first) && g1.vertices.count(e.second)) {
          g1.edges.insert(e);
        }
      }
    }
  }

  ContentionGraph union_graph() const {
    std::set<LinkId> v = g1.vertices;
    std::set<std::pair<LinkId, LinkId>> e = g1.edges;
    for (const auto& [n, est] : nbr_g1) {
      v.insert(est.vertices.begin(), est.vertices.end());
      e.insert(est.edges.begin(), est.edges.end());
    }
    return to_graph(v, e);
  }

  std::array<double, 2> pairwise_init() const {
    switch (kind) {
      case AgentKind::bp:
        return normalized({1.0 + rho, 1.0});
      case AgentKind::ibp:
        return normalized({1.0, 1.0 - target});
      default:  // bp-acsma: compatibility sum only
        return normalized({2.0, 1.0});
    }
  }

  AccessIntensities known_rho() const {
    AccessIntensities out = {{id, rho}};
    for (const auto& [n, r] : nbr_rho) out[n] = r;
    return out;
  }

  ThroughputVector known_targets() const {
    ThroughputVector out = {{id, target}};
    for (const auto& [n, t] : nbr_target) out[n] = t;
    return out;
  }

  std::vector<double> region_msg_init(int local_edge) const {
    // A message before anything is heard: downstream messages at one,
    // weights from the broadcast intensities (inverse/utility kinds start
    // weightless, their intensities being unknown).
    RegionMessageTable ones;
    ones.m.resize(lrg.graph.edges().size());
    for (std::size_t e = 0; e < ones.m.size(); ++e) {
      const auto& child =
          lrg.graph.regions()[static_cast<std::size_t>(lrg.graph.edges()[e].second)];
      ones.m[e].assign(child.members.size() + 1, 1.0);
    }
    if (kind == AgentKind::gbp) {
      return gbp_message_update(lrg.graph, known_rho(), ones, local_edge);
    }
    AccessIntensities unit;
    for (const Region& r : lrg.graph.regions()) {
      for (LinkId m : r.members) unit[m] = 1.0;
    }
    return gbp_message_update(lrg.graph, unit, ones, local_edge);
  }

  MessageKey key_of(int local_edge) const {
    const auto [p, c] = lrg.graph.edges()[static_cast<std::size_t>(local_edge)];
    return {lrg.graph.regions()[static_cast<std::size_t>(p)].members,
            lrg.graph.regions()[static_cast<std::size_t>(c)].members};
  }

  RegionMessageTable assemble_table() const {
    RegionMessageTable t;
    t.m.resize(lrg.graph.edges().size());
    for (std::size_t e = 0; e < t.m.size(); ++e) {
      auto it = region_store.find(key_of(static_cast<int>(e)));
      t.m[e] = (it != region_store.end())
                   ? it->second
                   : region_msg_init(static_cast<int>(e));
    }
    return t;
  }

  /// Rebuilds N_j, G_j, regions and owned messages from the current
  /// topology knowledge; restarts message state when the structure moved.
  void derive(const HarnessParams& params) {
    std::erase_if(nbr_g1, [&](const auto& kv) { return !heard.count(kv.first); });
    std::erase_if(nbr_rho, [&](const auto& kv) { return !heard.count(kv.first); });
    std::erase_if(nbr_target,
                  [&](const auto& kv) { return !heard.count(kv.first); });
    std::erase_if(in_store, [&](const auto& kv) { return !heard.count(kv.first); });

    ContentionGraph next = union_graph();
    const bool changed =
        !derived ||
        !(std::equal(next.ids().begin(), next.ids().end(), local.ids().begin(),
                     local.ids().end()) &&
          std::equal(next.edges().begin(), next.edges().end(),
                     local.edges().begin(), local.edges().end()));
    const bool was_derived = derived;
    local = std::move(next);
    derived = true;
    if (!changed) return;

    reset_flag = was_derived;
    if (is_region_kind(kind)) {
      lrg = build_local_region_graph(local, id);
      owned = elect_message_agents(lrg, id);
      own_region.clear();
      region_store.clear();
      for (std::size_t e = 0; e < lrg.graph.edges().size(); ++e) {
        const MessageKey k = key_of(static_cast<int>(e));
        if (std::find(owned.begin(), owned.end(), k) != owned.end()) {
          own_region[k] = region_msg_init(static_cast<int>(e));
          region_store[k] = own_region[k];
        }
      }
      if (is_utility_kind(kind)) rho = 1.0;
      if (kind == AgentKind::igbp) {
        // the first broadcast intensity is the extraction from the
        // start-up messages, computable before any exchange
        const RegionMessageTable table = assemble_table();
        const int r = lrg.graph.smallest_region_containing(id);
        const Region& region =
            lrg.graph.regions()[static_cast<std::size_t>(r)];
        const std::vector<double> b =
            pinned_region_belief(lrg.graph, known_targets(), r);
        const std::vector<double> w =
            region_state_weights(lrg.graph, table, r);
        const int s_active = induced_state(region, id);
        double value =
            b[static_cast<std::size_t>(s_active)] / std::max(b[0], kClamp);
        value *= w[0] / std::max(w[static_cast<std::size_t>(s_active)], kClamp);
        rho = value;
      }
    } else {
      in_store.clear();
      out_msgs.clear();
      for (LinkId n : heard) out_msgs[n] = pairwise_init();
    }
    (void)params;
  }

  void update_pairwise(const HarnessParams& params, const UtilitySpec& u) {
    // beliefs / intensity from the stored incoming messages
    double m0 = 1.0, m1 = 1.0;
    for (const auto& [from, m] : in_store) {
      m0 *= m[0];
      m1 *= m[1];
    }
    std::array<double, 2> belief{0.0, 0.0};
    switch (kind) {
      case AgentKind::bp:
        belief = normalized({m0, rho * m1});
        th = belief[1];
        break;
      case AgentKind::ibp: {
        belief = {1.0 - target, target};
        th = target;
        double r = belief[1] / std::max(belief[0], kClamp);
        for (const auto& [from, m] : in_store) {
          r *= m[0] / std::max(m[1], kClamp);
        }
        rho = r;
        break;
      }
      default: {  // bp-acsma
        rho = solve_rho_fixed_point(m0, m1, u);
        const double a = rho * m1;
        th = a / (a + m0);
        belief = {1.0 - th, th};
        break;
      }
    }

    // outgoing messages toward every current neighbor
    for (LinkId dest : heard) {
      double p0 = 1.0, p1 = 1.0;
      for (const auto& [from, m] : in_store) {
        if (from == dest) continue;
        p0 *= m[0];
        p1 *= m[1];
      }
      std::array<double, 2> fresh;
      if (kind == AgentKind::ibp) {
        auto it = in_store.find(dest);
        if (it == in_store.end()) {
          fresh = pairwise_init();
        } else {
          const double q0 = belief[0] / std::max(it->second[0], kClamp);
          const double q1 = belief[1] / std::max(it->second[1], kClamp);
          fresh = {q0 + q1, q0};
        }
      } else {
        fresh = {p0 + rho * p1, p0};
      }
      if (params.bp.normalize_messages) fresh = normalized(fresh);
      auto it = out_msgs.find(dest);
      if (it == out_msgs.end()) {
        out_msgs[dest] = fresh;
      } else {
        const double d = params.bp.damping;
        it->second = {d * it->second[0] + (1.0 - d) * fresh[0],
                      d * it->second[1] + (1.0 - d) * fresh[1]};
      }
    }
    std::erase_if(out_msgs, [&](const auto& kv) { return !heard.count(kv.first); });
  }

  void update_region(const HarnessParams& params, const UtilitySpec& u) {
    const RegionMessageTable table = assemble_table();
    const int r = lrg.graph.smallest_region_containing(id);
    if (r < 0) throw GraphError("agent owns no region");
    const Region& region = lrg.graph.regions()[static_cast<std::size_t>(r)];
    const int s_active = induced_state(region, id);

    // The intensities visible to this agent are one round old; that is
    // exactly what the broadcast schedule delivers.
    const AccessIntensities phis = known_rho();

    switch (kind) {
      case AgentKind::gbp: {
        const std::vector<double> b =
            region_belief(lrg.graph, phis, table, r);
        th = b[static_cast<std::size_t>(s_active)];
        break;
      }
      case AgentKind::igbp: {
        const std::vector<double> b =
            pinned_region_belief(lrg.graph, known_targets(), r);
        const std::vector<double> w = region_state_weights(lrg.graph, table, r);
        double value = b[static_cast<std::size_t>(s_active)] /
                       std::max(b[0], kClamp);
        value *= w[0] / std::max(w[static_cast<std::size_t>(s_active)], kClamp);
        th = target;
        rho = value;
        break;
      }
      default: {  // gbp-acsma
        const std::vector<double> w = region_state_weights(lrg.graph, table, r);
        double m0 = w[0];
        for (std::size_t t = 0; t < region.members.size(); ++t) {
          if (region.members[t] == id) continue;
          m0 += phis.at(region.members[t]) * w[t + 1];
        }
        const double m1 = w[static_cast<std::size_t>(s_active)];
        rho = solve_rho_fixed_point(m0, m1, u);
        const double a = rho * m1;
        th = a / (a + m0);
        break;
      }
    }

    // owned message updates, read entirely from previous-round state
    std::map<MessageKey, std::vector<double>> fresh_values;
    for (std::size_t e = 0; e < lrg.graph.edges().size(); ++e) {
      const MessageKey k = key_of(static_cast<int>(e));
      if (std::find(owned.begin(), owned.end(), k) == owned.end()) continue;
      std::vector<double> fresh =
          gbp_message_update(lrg.graph, phis, table, static_cast<int>(e));
      auto& slot = own_region[k];
      if (slot.size() == fresh.size()) {
        for (std::size_t s = 0; s < fresh.size(); ++s) {
          fresh[s] = (1.0 - params.gbp_alpha) * slot[s] +
                     params.gbp_alpha * fresh[s];
        }
      }
      fresh_values[k] = std::move(fresh);
    }
    for (auto& [k, v] : fresh_values) {
      own_region[k] = v;
      region_store[k] = std::move(v);
    }
  }

  void ingest_messages(const std::vector<const Broadcast*>& inbox) {
    if (is_region_kind(kind)) {
      for (const Broadcast* b : inbox) {
        for (const auto& [k, v] : b->region_msgs) region_store[k] = v;
      }
    } else {
      for (const Broadcast* b : inbox) {
        auto it = b->bp_msgs.find(id);
        if (it != b->bp_msgs.end()) in_store[b->sender] = it->second;
      }
    }
  }

  Broadcast make_broadcast(int round) const {
    Broadcast b;
    b.sender = id;
    b.round = round;
    b.g1 = g1;
    b.rho = rho;
    b.target = target;
    if (is_region_kind(kind)) {
      b.region_msgs = own_region;
    } else {
      for (const auto& [dest, m] : out_msgs) b.bp_msgs[dest] = m;
    }
    return b;
  }
};

class Harness {
 public:
  Harness(const ContentionGraph& g, AgentKind kind,
          const RoundSchedule& schedule, const HarnessParams& params)
      : graph_(g), kind_(kind), schedule_(schedule), params_(params) {
    for (LinkId id : g.ids()) add_agent(id, initial_rho(id), initial_target(id));
  }

  HarnessResult run() {
    HarnessResult res;
    for (int r = 0; r < 3; ++r) topology_round();
    for (auto& [id, a] : agents_) a.derive(params_);

    std::set<int> refresh;
    for (int r = schedule_.t1_period + 1; r <= schedule_.rounds;
         r += schedule_.t1_period) {
      refresh.insert(r);
    }
    for (const ChurnEvent& ev : schedule_.churn) refresh.insert(ev.round + 3);

    for (int round = 1; round <= schedule_.rounds; ++round) {
      for (const ChurnEvent& ev : schedule_.churn) {
        if (ev.round == round) apply_churn(ev);
      }
      const auto inboxes = exchange(round);
      for (auto& [id, agent] : agents_) {
        agent.ingest_topology(inboxes.at(id));
      }
      if (refresh.count(round)) {
        for (auto& [id, agent] : agents_) agent.derive(params_);
      }
      for (auto& [id, agent] : agents_) {
        if (!agent.derived) continue;
        agent.ingest_messages(inboxes.at(id));
        if (agent.reset_flag && refresh.count(round)) continue;  // restart
        if (is_region_kind(kind_)) {
          agent.update_region(params_, params_.utility);
        } else {
          agent.update_pairwise(params_, params_.utility);
        }
      }

      RoundSnapshot snap;
      snap.round = round;
      for (auto& [id, agent] : agents_) {
        snap.agents.push_back({id, agent.th, agent.rho, agent.reset_flag});
        agent.reset_flag = false;
      }
      res.rounds.push_back(std::move(snap));
    }
    res.final_graph = graph_;
    return res;
  }

  std::vector<BootstrapRound> bootstrap(int rounds) {
    std::vector<BootstrapRound> out;
    for (int r = 0; r < rounds; ++r) {
      topology_round();
      BootstrapRound snap;
      for (const auto& [id, a] : agents_) {
        snap.g1[id] = to_graph(a.g1.vertices, a.g1.edges);
        snap.gj[id] = a.union_graph();
      }
      out.push_back(std::move(snap));
    }
    return out;
  }

 private:
  double initial_rho(LinkId id) const {
    if (is_inverse_kind(kind_) || is_utility_kind(kind_)) return 1.0;
    auto it = params_.rho.find(id);
    if (it == params_.rho.end()) {
      throw GraphError("missing access intensity for link " +
                       std::to_string(id));
    }
    return it->second;
  }

  double initial_target(LinkId id) const {
    if (!is_inverse_kind(kind_)) return 0.0;
    auto it = params_.targets.find(id);
    if (it == params_.targets.end()) {
      throw GraphError("missing target for link " + std::to_string(id));
    }
    return it->second;
  }

  void add_agent(LinkId id, double rho, double target) {
    Agent a;
    a.id = id;
    a.kind = kind_;
    a.rho = rho;
    a.target = target;
    a.g1.vertices.insert(id);
    agents_.emplace(id, std::move(a));
  }

  // One lock-step exchange: everyone broadcasts end-of-previous-round
  // state; the delivery layer hands each agent exactly the broadcasts of
  // its one-hop neighbors in the current graph.
  std::map<LinkId, std::vector<const Broadcast*>> exchange(int round) {
    broadcasts_.clear();
    for (const auto& [id, a] : agents_) {
      broadcasts_.emplace(id, a.make_broadcast(round));
    }
    std::map<LinkId, std::vector<const Broadcast*>> inboxes;
    for (const auto& [id, a] : agents_) inboxes[id] = {};
    for (auto [x, y] : graph_.edges()) {
      inboxes[x].push_back(&broadcasts_.at(y));
      inboxes[y].push_back(&broadcasts_.at(x));
    }
    return inboxes;
  }

  void topology_round() {
    const auto inboxes = exchange(0);
    for (auto& [id, agent] : agents_) agent.ingest_topology(inboxes.at(id));
  }

  void apply_churn(const ChurnEvent& ev) {
    std::vector<LinkId> ids(graph_.ids().begin(), graph_.ids().end());
    std::vector<std::pair<LinkId, LinkId>> edges(graph_.edges().begin(),
                                                 graph_.edges().end());
    switch (ev.kind) {
      case ChurnEvent::Kind::add_link: {
        if (graph_.has_link(ev.link)) {
          throw GraphError("churn: link already present");
        }
        ids.push_back(ev.link);
        for (LinkId n : ev.attach) edges.emplace_back(ev.link, n);
        add_agent(ev.link, is_inverse_kind(kind_) || is_utility_kind(kind_)
                               ? 1.0
                               : ev.rho,
                  ev.target);
        break;
      }
      case ChurnEvent::Kind::remove_link: {
        if (!graph_.has_link(ev.link)) throw GraphError("churn: no such link");
        std::erase(ids, ev.link);
        std::erase_if(edges, [&](const auto& e) {
          return e.first == ev.link || e.second == ev.link;
        });
        agents_.erase(ev.link);
        break;
      }
      case ChurnEvent::Kind::add_edge:
        edges.emplace_back(ev.a, ev.b);
        break;
      case ChurnEvent::Kind::remove_edge:
        std::erase_if(edges, [&](const auto& e) {
          return (e.first == std::min(ev.a, ev.b) &&
                  e.second == std::max(ev.a, ev.b));
        });
        break;
    }
    graph_ = ContentionGraph(std::move(ids), std::move(edges));
  }

  ContentionGraph graph_;
  AgentKind kind_;
  RoundSchedule schedule_;
  HarnessParams params_;
  std::map<LinkId, Agent> agents_;
  std::map<LinkId, Broadcast> broadcasts_;
};

} // namespace

HarnessResult run_harness(const ContentionGraph& g, AgentKind kind,
                          const RoundSchedule& schedule,
                          const HarnessParams& params) {
  if (is_utility_kind(kind) && !params.utility.deriv) {
    throw std::invalid_argument("utility kinds need a UtilitySpec");
  }
  Harness h(g, kind, schedule, params);
  return h.run();
}

std::vector<BootstrapRound> bootstrap_trace(const ContentionGraph& g) {
  HarnessParams params;
  for (LinkId id : g.ids()) params.rho[id] = 1.0;
  Harness h(g, AgentKind::bp, RoundSchedule{}, params);
  return h.bootstrap(3);
}

std::map<LinkId, ContentionGraph> bootstrap_local_graphs(
    const ContentionGraph& g) {
  const auto trace = bootstrap_trace(g);
  return trace.back().gj;
}

std::vector<MessageKey> elect_message_agents(const LocalRegionGraph& local,
                                             LinkId id) {
  std::vector<MessageKey> out;
  for (auto [p, c] : local.graph.edges()) {
    const auto& child =
        local.graph.regions()[static_cast<std::size_t>(c)].members;
    if (!child.empty() && child.front() == id) {
      out.push_back({local.graph.regions()[static_cast<std::size_t>(p)].members,
                     child});
    }
  }
  return out;
}

bool FeatureReport::all_pass() const {
  for (const Entry& e : entries) {
    if (!(e.f1 && e.f2 && e.f3)) return false;
  }
  return true;
}

FeatureReport check_features(const ContentionGraph& g,
                             const AccessIntensities& rho,
                             LinkId withhold_broadcasts_from) {
  FeatureReport report;
  const RegionGraph global = build_region_graph(g);

  GbpConfig cfg;
  cfg.tol = 1e-10;
  cfg.max_iter = 5000;
  const GbpResult centralized = run_gbp_on(g, global, rho, cfg);

  // Converged message values keyed the way agents hear them.
  std::map<MessageKey, std::vector<double>> wire;
  for (std::size_t e = 0; e < global.edges().size(); ++e) {
    const auto [p, c] = global.edges()[e];
    wire[{global.regions()[static_cast<std::size_t>(p)].members,
          global.regions()[static_cast<std::size_t>(c)].members}] =
        centralized.final_msgs.m[e];
  }

  for (LinkId j : g.ids()) {
    FeatureReport::Entry entry;
    entry.agent = j;
    const LocalRegionGraph lrg = build_local_region_graph(g, j);

    const RegionGraphReport consistency =
        validate_local_region_graph(lrg, global, g);
    for (const RegionCheck& c : consistency.checks) {
      if ((c.name == "consistency-regions-subset" ||
           c.name == "consistency-edges-subset") &&
          !c.pass) {
        entry.f1 = false;
        entry.detail += c.detail + "; ";
      }
    }

    // A message is hearable when its agent (lowest id of the child region)
    // is j itself or an unsilenced one-hop neighbor.
    auto hearable = [&](const MessageKey& k) {
      const LinkId agent = k.second.front();
      if (agent == j) return withhold_broadcasts_from != j;
      return g.adjacent(agent, j) && agent != withhold_broadcasts_from;
    };
    auto local_table = [&]() {
      RegionMessageTable t;
      t.m.resize(lrg.graph.edges().size());
      for (std::size_t e = 0; e < t.m.size(); ++e) {
        const auto [p, c] = lrg.graph.edges()[e];
        const MessageKey k{
            lrg.graph.regions()[static_cast<std::size_t>(p)].members,
            lrg.graph.regions()[static_cast<std::size_t>(c)].members};
        if (hearable(k) && wire.count(k)) {
          t.m[e] = wire.at(k);
        } else {
          const auto& child =
              lrg.graph.regions()[static_cast<std::size_t>(c)].members;
          t.m[e].assign(child.size() + 1, 1.0 / (child.size() + 1.0));
        }
      }
      return t;
    }();

    // Feature 2: belief of the chosen (smallest) region from hearable
    // broadcasts matches the centralized belief.
    const int lr = lrg.graph.smallest_region_containing(j);
    const int gr = global.find(
        lrg.graph.regions()[static_cast<std::size_t>(lr)].members);
    if (gr < 0) {
      entry.f2 = false;
      entry.detail += "chosen region not global; ";
    } else {
      const auto local_belief = region_belief(lrg.graph, rho, local_table, lr);
      const auto global_belief =
          region_belief(global, rho, centralized.final_msgs, gr);
      for (std::size_t s = 0; s < local_belief.size(); ++s) {
        if (std::abs(local_belief[s] - global_belief[s]) > 1e-9) {
          entry.f2 = false;
          entry.detail += "belief mismatch; ";
          break;
        }
      }
    }

    // Feature 3: every owned message recomputable from hearable broadcasts.
    auto edge_key = [](const RegionGraph& rg, std::size_t e) -> MessageKey {
      const auto [p, c] = rg.edges()[e];
      return {rg.regions()[static_cast<std::size_t>(p)].members,
              rg.regions()[static_cast<std::size_t>(c)].members};
    };
    for (const MessageKey& k : elect_message_agents(lrg, j)) {
      int le = -1, ge = -1;
      for (std::size_t e = 0; e < lrg.graph.edges().size(); ++e) {
        if (edge_key(lrg.graph, e) == k) {
          le = static_cast<int>(e);
          break;
        }
      }
      for (std::size_t e = 0; e < global.edges().size(); ++e) {
        const auto [p, c] = global.edges()[e];
        if (global.regions()[static_cast<std::size_t>(p)].members == k.first &&
            global.regions()[static_cast<std::size_t>(c)].members == k.second) {
          ge = static_cast<int>(e);
          break;
        }
      }
      if (le < 0 || ge < 0) {
        entry.f3 = false;
        entry.detail += "owned edge missing; ";
        continue;
      }
      const auto local_val =
          gbp_message_update(lrg.graph, rho, local_table, le);
      const auto global_val =
          gbp_message_update(global, rho, centralized.final_msgs, ge);
      for (std::size_t s = 0; s < local_val.size(); ++s) {
        if (std::abs(local_val[s] - global_val[s]) > 1e-9) {
          entry.f3 = false;
          entry.detail += "owned message mismatch; ";
          break;
        }
      }
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

} // namespace csmanet
