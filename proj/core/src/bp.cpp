#include "csmanet/bp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csmanet/convergence.hpp"
#include "csmanet/errors.hpp"

namespace csmanet {

namespace {

constexpr double kDenomClamp = 1e-300;

std::vector<double> rho_by_index(const ContentionGraph& g,
                                 const AccessIntensities& rho) {
  std::vector<double> r(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    auto it = rho.find(g.id_of(i));
    if (it == rho.end()) {
      throw GraphError("missing access intensity for link " +
                       std::to_string(g.id_of(i)));
    }
    r[static_cast<std::size_t>(i)] = it->second;
  }
  return r;
}

std::vector<std::array<double, 2>> beliefs_by_index(
    const ContentionGraph& g, const ThroughputVector& targets) {
  std::vector<std::array<double, 2>> b(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    auto it = targets.find(g.id_of(i));
    if (it == targets.end()) {
      throw GraphError("missing target throughput for link " +
                       std::to_string(g.id_of(i)));
    }
    b[static_cast<std::size_t>(i)] = {1.0 - it->second, it->second};
  }
  return b;
}

void normalize_pair(std::array<double, 2>& m) {
  const double s = m[0] + m[1];
  if (s > 0.0) {
    m[0] /= s;
    m[1] /= s;
  }
}

void finish_message(std::array<double, 2>& slot, std::array<double, 2> fresh,
                    const BpConfig& cfg) {
  if (cfg.normalize_messages) normalize_pair(fresh);
  slot[0] = cfg.damping * slot[0] + (1.0 - cfg.damping) * fresh[0];
  slot[1] = cfg.damping * slot[1] + (1.0 - cfg.damping) * fresh[1];
}

// Position of vertex `from` in the adjacency list of `into`.
int slot_of(const ContentionGraph& g, int into, int from) {
  const auto nbrs = g.neighbors(into);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), from);
  if (it == nbrs.end() || *it != from) {
    throw GraphError("links " + std::to_string(g.id_of(from)) + " and " +
                     std::to_string(g.id_of(into)) + " are not neighbors");
  }
  return static_cast<int>(it - nbrs.begin());
}

std::vector<double> th_from_beliefs(const BeliefTable& b) {
  std::vector<double> th(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) th[i] = b[i][1];
  return th;
}

} // namespace

MessageTable MessageTable::zeros(const ContentionGraph& g) {
  MessageTable t;
  t.offset.resize(static_cast<std::size_t>(g.size()));
  int total = 0;
  for (int i = 0; i < g.size(); ++i) {
    t.offset[static_cast<std::size_t>(i)] = total;
    total += g.degree(i);
  }
  t.m.assign(static_cast<std::size_t>(total), {0.0, 0.0});
  return t;
}

const std::array<double, 2>& MessageTable::get(const ContentionGraph& g,
                                               LinkId from, LinkId into) const {
  const int i = g.index_of(into);
  return at(g, i, slot_of(g, i, g.index_of(from)));
}

std::array<double, 2>& MessageTable::get(const ContentionGraph& g, LinkId from,
                                         LinkId into) {
  const int i = g.index_of(into);
  return at(g, i, slot_of(g, i, g.index_of(from)));
}

MessageTable initial_bp_messages(const ContentionGraph& g,
                                 const AccessIntensities& rho, bool normalize) {
  const auto r = rho_by_index(g, rho);
  MessageTable t = MessageTable::zeros(g);
  for (int i = 0; i < g.size(); ++i) {
    const auto nbrs = g.neighbors(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const int j = nbrs[k];
      std::array<double, 2> m{1.0 + r[static_cast<std::size_t>(j)], 1.0};
      if (normalize) normalize_pair(m);
      t.at(g, i, static_cast<int>(k)) = m;
    }
  }
  return t;
}

MessageTable bp_message_update(const ContentionGraph& g,
                               const AccessIntensities& rho,
                               const MessageTable& msgs, const BpConfig& cfg) {
  const auto r = rho_by_index(g, rho);
  MessageTable next = msgs;
  for (int i = 0; i < g.size(); ++i) {
    const auto nbrs = g.neighbors(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const int j = nbrs[k];
      // Incoming messages of the sender j, skipping the one from i.
      double prod0 = 1.0, prod1 = 1.0;
      const auto jnbrs = g.neighbors(j);
      for (std::size_t q = 0; q < jnbrs.size(); ++q) {
        if (jnbrs[q] == i) continue;
        const auto& in = msgs.at(g, j, static_cast<int>(q));
        prod0 *= in[0];
        prod1 *= in[1];
      }
      const double rj = r[static_cast<std::size_t>(j)];
      finish_message(next.at(g, i, static_cast<int>(k)),
                     {prod0 + rj * prod1, prod0}, cfg);
    }
  }
  return next;
}

BeliefTable bp_beliefs(const ContentionGraph& g, const AccessIntensities& rho,
                       const MessageTable& msgs) {
  const auto r = rho_by_index(g, rho);
  BeliefTable b(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    double prod0 = 1.0, prod1 = 1.0;
    for (int k = 0; k < g.degree(i); ++k) {
      const auto& in = msgs.at(g, i, k);
      prod0 *= in[0];
      prod1 *= in[1];
    }
    std::array<double, 2> bi{prod0, r[static_cast<std::size_t>(i)] * prod1};
    normalize_pair(bi);
    b[static_cast<std::size_t>(i)] = bi;
  }
  return b;
}

BpResult run_bp(const ContentionGraph& g, const AccessIntensities& rho,
                const BpConfig& cfg) {
  BpResult res;
  MessageTable msgs = initial_bp_messages(g, rho, cfg.normalize_messages);
  std::vector<double> prev;
  for (int n = 1; n <= cfg.max_iter; ++n) {
    const BeliefTable b = bp_beliefs(g, rho, msgs);
    res.history.push_back(th_from_beliefs(b));
    res.iterations = n;
    if (n >= 2 && max_rel_delta(res.history.back(), prev) < cfg.tol) {
      res.converged = true;
      break;
    }
    prev = res.history.back();
    if (n == cfg.max_iter) break;
    msgs = bp_message_update(g, rho, msgs, cfg);
  }
  for (int i = 0; i < g.size(); ++i) {
    res.th[g.id_of(i)] = res.history.back()[static_cast<std::size_t>(i)];
  }
  res.final_msgs = std::move(msgs);
  return res;
}

SbpState sbp_from_messages(const ContentionGraph& g, const MessageTable& msgs,
                           const BeliefTable& beliefs) {
  SbpState s;
  s.offset = msgs.offset;
  s.n.resize(msgs.m.size());
  for (std::size_t k = 0; k < msgs.m.size(); ++k) {
    s.n[k] = msgs.m[k][1] / std::max(msgs.m[k][0], kDenomClamp);
  }
  s.c.resize(beliefs.size());
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    s.c[i] = beliefs[i][1] / std::max(beliefs[i][0], kDenomClamp);
  }
  return s;
}

BpResult run_sbp(const ContentionGraph& g, const AccessIntensities& rho,
                 const BpConfig& cfg) {
  const auto r = rho_by_index(g, rho);
  BpResult res;
  // ratio of the initial (1 + rho_j, 1) message
  MessageTable ratio = MessageTable::zeros(g);
  for (int i = 0; i < g.size(); ++i) {
    const auto nbrs = g.neighbors(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      ratio.at(g, i, static_cast<int>(k))[0] =
          1.0 / (1.0 + r[static_cast<std::size_t>(nbrs[k])]);
    }
  }
  auto ratio_at = [&](int into, int pos) -> double& {
    return ratio.at(g, into, pos)[0];
  };

  std::vector<double> c(static_cast<std::size_t>(g.size()));
  std::vector<double> prev;
  for (int n = 1; n <= cfg.max_iter; ++n) {
    std::vector<double> th(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
      double ci = r[static_cast<std::size_t>(i)];
      for (int k = 0; k < g.degree(i); ++k) ci *= ratio_at(i, k);
      c[static_cast<std::size_t>(i)] = ci;
      th[static_cast<std::size_t>(i)] = ci / (1.0 + ci);
    }
    res.history.push_back(th);
    res.iterations = n;
    if (n >= 2 && max_rel_delta(res.history.back(), prev) < cfg.tol) {
      res.converged = true;
      break;
    }
    prev = res.history.back();
    if (n == cfg.max_iter) break;

    MessageTable next = ratio;
    for (int i = 0; i < g.size(); ++i) {
      const auto nbrs = g.neighbors(i);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const int j = nbrs[k];
        const double n_ij = ratio_at(j, slot_of(g, j, i));  // i -> j
        next.at(g, i, static_cast<int>(k))[0] =
            n_ij / (n_ij + c[static_cast<std::size_t>(j)]);
      }
    }
    ratio = std::move(next);
  }
  for (int i = 0; i < g.size(); ++i) {
    res.th[g.id_of(i)] = res.history.back()[static_cast<std::size_t>(i)];
  }
  return res;
}

MessageTable initial_ibp_messages(const ContentionGraph& g,
                                  const ThroughputVector& targets,
                                  bool normalize) {
  const auto b = beliefs_by_index(g, targets);
  MessageTable t = MessageTable::zeros(g);
  for (int i = 0; i < g.size(); ++i) {
    const auto nbrs = g.neighbors(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const auto& bj = b[static_cast<std::size_t>(nbrs[k])];
      std::array<double, 2> m{bj[0] + bj[1], bj[0]};
      if (normalize) normalize_pair(m);
      t.at(g, i, static_cast<int>(k)) = m;
    }
  }
  return t;
}

MessageTable ibp_message_update(const ContentionGraph& g,
                                const ThroughputVector& targets,
                                const MessageTable& msgs, const BpConfig& cfg) {
  const auto b = beliefs_by_index(g, targets);
  MessageTable next = msgs;
  for (int i = 0; i < g.size(); ++i) {
    const auto nbrs = g.neighbors(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const int j = nbrs[k];
      const auto& bj = b[static_cast<std::size_t>(j)];
      // reverse message m_{i->j}, whose entries divide the pinned belief
      const auto& rev = msgs.at(g, j, slot_of(g, j, i));
      const double q0 = bj[0] / std::max(rev[0], kDenomClamp);
      const double q1 = bj[1] / std::max(rev[1], kDenomClamp);
      finish_message(next.at(g, i, static_cast<int>(k)), {q0 + q1, q0}, cfg);
    }
  }
  return next;
}

AccessIntensities ibp_extract_rho(const ContentionGraph& g,
                                  const ThroughputVector& targets,
                                  const MessageTable& msgs) {
  const auto b = beliefs_by_index(g, targets);
  AccessIntensities rho;
  for (int j = 0; j < g.size(); ++j) {
    double ratio = b[static_cast<std::size_t>(j)][1] /
                   std::max(b[static_cast<std::size_t>(j)][0], kDenomClamp);
    for (int k = 0; k < g.degree(j); ++k) {
      const auto& in = msgs.at(g, j, k);
      ratio *= in[0] / std::max(in[1], kDenomClamp);
    }
    rho[g.id_of(j)] = ratio;
  }
  return rho;
}

IbpResult run_ibp(const ContentionGraph& g, const ThroughputVector& targets,
                  const BpConfig& cfg) {
  for (int i = 0; i < g.size(); ++i) {
    auto it = targets.find(g.id_of(i));
    const double th = (it == targets.end()) ? -1.0 : it->second;
    if (!(th > 0.0) || !(th < 1.0)) {
      throw InfeasibleTargets("target throughput of link " +
                              std::to_string(g.id_of(i)) +
                              " must lie strictly inside (0, 1)");
    }
  }

  IbpResult res;
  MessageTable msgs = initial_ibp_messages(g, targets, cfg.normalize_messages);
  std::vector<double> prev;
  for (int n = 1; n <= cfg.max_iter; ++n) {
    const AccessIntensities rho = ibp_extract_rho(g, targets, msgs);
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
    msgs = ibp_message_update(g, targets, msgs, cfg);
  }
  res.final_msgs = std::move(msgs);
  return res;
}

std::array<double, 2> ring_fixed_point(double rho) {
  const double s = std::sqrt(1.0 + 4.0 * rho);
  const double b0 = (1.0 + s) / (2.0 * s);
  return {b0, 1.0 - b0};
}

} // namespace csmanet
