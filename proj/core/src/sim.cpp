#include "csmanet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "csmanet/errors.hpp"

namespace csmanet {

DistKind parse_dist_kind(const std::string& name) {
  if (name == "exponential" || name == "exp") return DistKind::exponential;
  if (name == "deterministic" || name == "det") return DistKind::deterministic;
  if (name == "uniform") return DistKind::uniform;
  throw std::invalid_argument("unknown distribution kind: " + name);
}

std::string dist_kind_name(DistKind kind) {
  switch (kind) {
    case DistKind::exponential: return "exponential";
    case DistKind::deterministic: return "deterministic";
    case DistKind::uniform: return "uniform";
  }
  return "?";
}

double DistSpec::sample(Rng& rng) const {
  switch (kind) {
    case DistKind::exponential: return rng.exponential(mean);
    case DistKind::deterministic: return mean;
    case DistKind::uniform: return rng.uniform(0.0, 2.0 * mean);
  }
  return mean;
}

IcnSimulator::IcnSimulator(const ContentionGraph& g,
                           const AccessIntensities& rho, const SimConfig& cfg)
    : graph_(g), cfg_(cfg), rng_(cfg.seed) {
  if (!(cfg_.tx.mean > 0.0) || !(cfg_.backoff.mean > 0.0)) {
    throw std::invalid_argument("distribution means must be positive");
  }
  const auto n = static_cast<std::size_t>(g.size());
  rho_.assign(n, 0.0);
  set_access_intensities(rho);
  active_.assign(n, 0);
  tx_end_.assign(n, 0.0);
  remaining_.assign(n, 0.0);
  busy_.assign(n, 0);
  for (int i = 0; i < g.size(); ++i) {
    remaining_[static_cast<std::size_t>(i)] = draw_backoff(i);
  }
}

void IcnSimulator::set_access_intensities(const AccessIntensities& rho) {
  for (int i = 0; i < graph_.size(); ++i) {
    auto it = rho.find(graph_.id_of(i));
    if (it == rho.end()) {
      throw GraphError("missing access intensity for link " +
                       std::to_string(graph_.id_of(i)));
    }
    if (!(it->second > 0.0)) {
      throw GraphError("access intensity must be positive at link " +
                       std::to_string(graph_.id_of(i)));
    }
    rho_[static_cast<std::size_t>(i)] = it->second;
  }
}

double IcnSimulator::draw_backoff(int link) {
  DistSpec d = cfg_.backoff;
  d.mean = cfg_.tx.mean / rho_[static_cast<std::size_t>(link)];
  return d.sample(rng_);
}

void IcnSimulator::run_until(double t_end, std::vector<double>& active_time) {
  const int n = graph_.size();
  while (now_ < t_end) {
    // Next event: earliest transmission end or unfrozen countdown expiry.
    double t_next = std::numeric_limits<double>::infinity();
    int who = -1;
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      double t;
      if (active_[ui]) {
        t = tx_end_[ui];
      } else if (busy_[ui] == 0) {
        t = now_ + remaining_[ui];
      } else {
        continue;  // frozen
      }
      if (t < t_next) {
        t_next = t;
        who = i;
      }
    }
    const double step_to = std::min(t_next, t_end);
    const double dt = step_to - now_;
    if (dt > 0.0) {
      for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (active_[ui]) {
          active_time[ui] += dt;
        } else if (busy_[ui] == 0) {
          remaining_[ui] -= dt;
        }
      }
      now_ = step_to;
    }
    if (t_next > t_end) break;

    const auto uw = static_cast<std::size_t>(who);
    if (active_[uw]) {
      // Transmission ends; neighbors thaw (resumption is implicit).
      active_[uw] = 0;
      remaining_[uw] = draw_backoff(who);
      for (int v : graph_.neighbors(who)) --busy_[static_cast<std::size_t>(v)];
    } else {
      // Countdown hit zero; start transmitting, neighbors freeze.
      active_[uw] = 1;
      tx_end_[uw] = now_ + cfg_.tx.sample(rng_);
      for (int v : graph_.neighbors(who)) ++busy_[static_cast<std::size_t>(v)];
    }
  }
  now_ = t_end;
}

std::vector<double> IcnSimulator::advance(double duration) {
  if (!(duration > 0.0)) {
    throw std::invalid_argument("advance duration must be positive");
  }
  std::vector<double> active_time(static_cast<std::size_t>(graph_.size()), 0.0);
  run_until(now_ + duration, active_time);
  return active_time;
}

SimResult simulate_icn(const ContentionGraph& g, const AccessIntensities& rho,
                       const SimConfig& cfg) {
  if (!(cfg.horizon > 0.0)) throw std::invalid_argument("zero horizon");
  IcnSimulator sim(g, rho, cfg);

  const double warmup = cfg.warmup_fraction * cfg.horizon;
  if (warmup > 0.0) sim.advance(warmup);

  const int batches = std::max(1, cfg.batches);
  const double window = (cfg.horizon - warmup) / batches;
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<std::vector<double>> batch_th(
      static_cast<std::size_t>(batches));
  std::vector<double> total(n, 0.0);
  for (int b = 0; b < batches; ++b) {
    auto t = sim.advance(window);
    for (std::size_t i = 0; i < n; ++i) {
      total[i] += t[i];
      t[i] /= window;
    }
    batch_th[static_cast<std::size_t>(b)] = std::move(t);
  }

  SimResult out;
  for (int i = 0; i < g.size(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double mean = total[ui] / (window * batches);
    double var = 0.0;
    for (int b = 0; b < batches; ++b) {
      const double d = batch_th[static_cast<std::size_t>(b)][ui] - mean;
      var += d * d;
    }
    const double se = (batches > 1)
                          ? std::sqrt(var / (batches * (batches - 1.0)))
                          : 0.0;
    out.th[g.id_of(i)] = mean;
    out.se[g.id_of(i)] = se;
  }
  return out;
}

} // namespace csmanet
