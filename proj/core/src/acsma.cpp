#include "csmanet/acsma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "csmanet/bp.hpp"
#include "csmanet/convergence.hpp"
#include "csmanet/errors.hpp"
#include "csmanet/icn.hpp"

namespace csmanet {

namespace {

constexpr double kRBracket = 30.0;

double link_throughput(double r, double m0, double m1) {
  const double a = std::exp(r) * m1;
  return a / (a + m0);
}

// f with beta * U'(f) = r, clamped into (0, f_max]. U' is decreasing, so
// bisection applies.
double input_rate_for(const UtilitySpec& u, double r, double f_max) {
  const double lo_v = u.beta * u.deriv(f_max);
  if (r <= lo_v) return f_max;
  double lo = 1e-12, hi = f_max;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (u.beta * u.deriv(mid) > r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> flat_r(const ContentionGraph& g,
                           const AccessIntensities& rho) {
  std::vector<double> r(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    r[static_cast<std::size_t>(i)] = std::log(rho.at(g.id_of(i)));
  }
  return r;
}

} // namespace

UtilitySpec UtilitySpec::log_utility(double beta) {
  UtilitySpec u;
  u.beta = beta;
  u.value = [](double x) { return std::log(x); };
  u.deriv = [](double x) { return 1.0 / x; };
  u.name = "log";
  return u;
}

double solve_rho_fixed_point(double m0, double m1, const UtilitySpec& u) {
  if (!(m0 > 0.0) || !(m1 > 0.0)) {
    throw std::runtime_error("message products must be positive");
  }
  auto f = [&](double r) {
    return r - u.beta * u.deriv(link_throughput(r, m0, m1));
  };
  double lo = -kRBracket, hi = kRBracket;
  if (!(f(lo) < 0.0) || !(f(hi) > 0.0)) {
    throw std::runtime_error("bracket failure in intensity solve");
  }
  // f is increasing (U' decreases in th, th increases in r), so plain
  // bisection reaches full precision in ~100 halvings.
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

AcsmaResult run_bp_acsma(const ContentionGraph& g, const UtilitySpec& u,
                         const AcsmaComputeConfig& cfg) {
  AcsmaResult res;
  const int n_links = g.size();

  // start-up messages carry no intensity information: (2, 1) normalized
  MessageTable msgs = MessageTable::zeros(g);
  for (auto& m : msgs.m) m = {2.0 / 3.0, 1.0 / 3.0};

  std::vector<double> rho(static_cast<std::size_t>(n_links), 1.0);
  std::vector<double> prev;
  for (int n = 1; n <= cfg.max_iter; ++n) {
    std::vector<double> r(static_cast<std::size_t>(n_links));
    for (int i = 0; i < n_links; ++i) {
      double m0 = 1.0, m1 = 1.0;
      for (int k = 0; k < g.degree(i); ++k) {
        const auto& in = msgs.at(g, i, k);
        m0 *= in[0];
        m1 *= in[1];
      }
      const double rho_i = solve_rho_fixed_point(m0, m1, u);
      rho[static_cast<std::size_t>(i)] = rho_i;
      r[static_cast<std::size_t>(i)] = std::log(rho_i);
      res.th[g.id_of(i)] = link_throughput(r[static_cast<std::size_t>(i)], m0, m1);
    }
    res.r_history.push_back(r);
    res.iterations = n;
    if (n >= 2 && max_rel_delta(res.r_history.back(), prev) < cfg.tol) {
      res.converged = true;
      break;
    }
    prev = res.r_history.back();
    if (n == cfg.max_iter) break;

    // outgoing messages with the freshly solved intensities
    MessageTable next = msgs;
    for (int i = 0; i < n_links; ++i) {
      const auto nbrs = g.neighbors(i);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const int j = nbrs[k];
        double prod0 = 1.0, prod1 = 1.0;
        const auto jnbrs = g.neighbors(j);
        for (std::size_t q = 0; q < jnbrs.size(); ++q) {
          if (jnbrs[q] == i) continue;
          const auto& in = msgs.at(g, j, static_cast<int>(q));
          prod0 *= in[0];
          prod1 *= in[1];
        }
        const double rj = rho[static_cast<std::size_t>(j)];
        std::array<double, 2> fresh{prod0 + rj * prod1, prod0};
        const double s = fresh[0] + fresh[1];
        next.at(g, i, static_cast<int>(k)) = {fresh[0] / s, fresh[1] / s};
      }
    }
    msgs = std::move(next);
  }
  for (int i = 0; i < n_links; ++i) {
    res.rho[g.id_of(i)] = rho[static_cast<std::size_t>(i)];
  }
  return res;
}

AcsmaResult run_gbp_acsma(const ContentionGraph& g, const UtilitySpec& u,
                          const AcsmaComputeConfig& cfg) {
  AcsmaResult res;
  const RegionGraph rg = build_region_graph(g);
  RegionMessageTable msgs = initial_igbp_messages(rg);

  AccessIntensities rho_prev;  // what the agents broadcast last sweep
  for (LinkId id : g.ids()) rho_prev[id] = 1.0;

  std::vector<double> prev;
  for (int n = 1; n <= cfg.max_iter; ++n) {
    AccessIntensities rho_new;
    std::vector<double> r(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
      const LinkId id = g.id_of(i);
      const int ri = rg.smallest_region_containing(id);
      const Region& region = rg.regions()[static_cast<std::size_t>(ri)];
      const std::vector<double> w = region_state_weights(rg, msgs, ri);
      // fold the other members' (previous-sweep) intensities into the idle
      // product, leaving th_j = rho_j w1 / (rho_j w1 + m0)
      const int s_active = induced_state(region, id);
      double m0 = w[0];
      for (std::size_t t = 0; t < region.members.size(); ++t) {
        if (region.members[t] == id) continue;
        m0 += rho_prev.at(region.members[t]) * w[t + 1];
      }
      const double m1 = w[static_cast<std::size_t>(s_active)];
      const double rho_i = solve_rho_fixed_point(m0, m1, u);
      rho_new[id] = rho_i;
      r[static_cast<std::size_t>(i)] = std::log(rho_i);
      res.th[id] = link_throughput(r[static_cast<std::size_t>(i)], m0, m1);
    }
    res.r_history.push_back(r);
    res.iterations = n;
    res.rho = rho_new;
    if (n >= 2 && max_rel_delta(res.r_history.back(), prev) < cfg.tol) {
      res.converged = true;
      break;
    }
    prev = res.r_history.back();
    if (n == cfg.max_iter) break;

    msgs = gbp_sweep(rg, rho_prev, msgs, cfg.gbp_alpha);
    rho_prev = rho_new;
  }
  return res;
}

OracleResult exact_acsma_oracle(const ContentionGraph& g, const UtilitySpec& u,
                                const OracleConfig& cfg) {
  OracleResult res;
  for (double damping = cfg.damping; !res.converged && damping > cfg.damping / 4;
       damping *= 0.5) {
    std::vector<double> r(static_cast<std::size_t>(g.size()), 0.0);
    AccessIntensities rho;
    for (LinkId id : g.ids()) rho[id] = 1.0;
    for (int n = 1; n <= cfg.max_iter; ++n) {
      const ThroughputVector th = exact_throughputs(g, rho, cfg.cap);
      double delta = 0.0;
      for (int i = 0; i < g.size(); ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double target = u.beta * u.deriv(th.at(g.id_of(i)));
        const double next = (1.0 - damping) * r[ui] + damping * target;
        delta = std::max(delta, std::abs(next - r[ui]) /
                                    std::max(std::abs(next), kRelFloor));
        r[ui] = next;
        rho[g.id_of(i)] = std::exp(next);
      }
      res.iterations = n;
      if (delta < cfg.tol) {
        res.converged = true;
        res.rho = rho;
        res.th = exact_throughputs(g, rho, cfg.cap);
        break;
      }
    }
  }
  return res;
}

BaselineResult run_measurement_acsma(const ContentionGraph& g,
                                     const UtilitySpec& u,
                                     const AcsmaBaselineConfig& bcfg,
                                     const SimConfig& simcfg) {
  BaselineResult res;
  const auto n_links = static_cast<std::size_t>(g.size());
  std::vector<double> r(n_links, 1.0);
  std::vector<double> f(n_links);
  for (std::size_t i = 0; i < n_links; ++i) {
    f[i] = input_rate_for(u, r[i], bcfg.f_max);
  }

  AccessIntensities rho;
  for (int i = 0; i < g.size(); ++i) {
    rho[g.id_of(i)] = std::exp(r[static_cast<std::size_t>(i)]);
  }
  IcnSimulator sim(g, rho, simcfg);

  for (int n = 1; n <= bcfg.max_iter; ++n) {
    const std::vector<double> active = sim.advance(bcfg.update_interval);
    BaselineIteration it;
    it.measured.resize(n_links);
    for (std::size_t i = 0; i < n_links; ++i) {
      const double service = active[i] / bcfg.update_interval;
      it.measured[i] = service;
      r[i] += bcfg.step_size * (service - f[i]);
      r[i] = std::clamp(r[i], bcfg.r_min, bcfg.r_max);
      f[i] = input_rate_for(u, r[i], bcfg.f_max);
      rho[g.id_of(static_cast<int>(i))] = std::exp(r[i]);
    }
    it.r = r;
    it.f = f;
    res.trace.push_back(std::move(it));
    sim.set_access_intensities(rho);
  }
  res.rho = rho;

  // Post-hoc convergence against the final r: the first iteration from
  // which the whole remaining trace stays inside the tolerance tube.
  const std::vector<double>& r_final = res.trace.back().r;
  int first_stable = static_cast<int>(res.trace.size()) + 1;
  for (int n = static_cast<int>(res.trace.size()); n >= 1; --n) {
    double worst = 0.0;
    const auto& rn = res.trace[static_cast<std::size_t>(n - 1)].r;
    for (std::size_t i = 0; i < n_links; ++i) {
      worst = std::max(worst, std::abs(rn[i] - r_final[i]) /
                                  std::max(std::abs(r_final[i]), kRelFloor));
    }
    if (worst < bcfg.tol) {
      first_stable = n;
    } else {
      break;
    }
  }
  res.iterations_to_convergence = first_stable;
  // Converged = entered the tube with a trailing window to spare.
  const int window = std::max(10, static_cast<int>(res.trace.size()) / 10);
  res.converged =
      first_stable <= static_cast<int>(res.trace.size()) - window + 1;
  return res;
}

double evaluate_utility(const ThroughputVector& th, const UtilitySpec& u) {
  double total = 0.0;
  for (const auto& [id, t] : th) {
    if (!(t > 0.0)) return -std::numeric_limits<double>::infinity();
    total += u.value(t);
  }
  return total;
}

double evaluate_objective(const ContentionGraph& g,
                          const AccessIntensities& rho, const UtilitySpec& u,
                          int cap) {
  const StationaryDistribution d = partition_function(g, rho, cap);
  double entropy = 0.0;
  for (double p : d.prob) {
    if (p > 0.0) entropy -= p * std::log(p);
  }
  double util = 0.0;
  for (LinkId id : g.ids()) {
    const double th = d.Zi.at(id) / d.Z;
    if (!(th > 0.0)) return -std::numeric_limits<double>::infinity();
    util += u.value(th);
  }
  return u.beta * util + entropy;
}

} // namespace csmanet
