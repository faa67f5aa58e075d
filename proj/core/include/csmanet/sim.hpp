#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "csmanet/graph.hpp"
#include "csmanet/rng.hpp"
#include "csmanet/types.hpp"

namespace csmanet {

enum class DistKind { exponential, deterministic, uniform };

DistKind parse_dist_kind(const std::string& name);
std::string dist_kind_name(DistKind kind);

/// Distribution descriptor. `uniform` is U(0, 2*mean).
struct DistSpec {
  DistKind kind = DistKind::exponential;
  double mean = 1.0;

  double sample(Rng& rng) const;
};

struct SimConfig {
  DistSpec tx{DistKind::exponential, 1.0};
  /// Backoff distribution shape. The per-link mean is derived from the
  /// access intensity (E[t_cd] = E[t_tr] / rho_i), so only the kind matters
  /// here; the mean field is the rho = 1 baseline.
  DistSpec backoff{DistKind::exponential, 1.0};
  double horizon = 1e4;
  std::uint64_t seed = 1;
  double warmup_fraction = 0.1;  // fraction of horizon discarded
  int batches = 20;              // batch-means windows for stderr
};

struct SimResult {
  ThroughputVector th;
  std::map<LinkId, double> se;  // batch-means standard error of th
};

/// Event-driven continuous-time simulation of the idealized CSMA dynamics:
/// backoff timers count down only while the channel is sensed idle, a timer
/// reaching zero starts a transmission, neighbors freeze for its duration.
/// Deterministic given the seed; simultaneous events are ordered by link id.
SimResult simulate_icn(const ContentionGraph& g, const AccessIntensities& rho,
                       const SimConfig& cfg);

/// The same dynamics exposed as a steppable instance, for measurement-driven
/// control loops that probe the network window by window and adjust access
/// intensities in between. Single-threaded; one instance per run.
class IcnSimulator {
 public:
  IcnSimulator(const ContentionGraph& g, const AccessIntensities& rho,
               const SimConfig& cfg);

  /// Applies to backoff draws from now on; frozen/running timers and
  /// ongoing transmissions are unaffected.
  void set_access_intensities(const AccessIntensities& rho);

  /// Advances simulated time by `duration` and returns the per-link active
  /// time inside that window, indexed like the graph's vertices.
  std::vector<double> advance(double duration);

  double now() const { return now_; }

 private:
  double draw_backoff(int link);
  void run_until(double t_end, std::vector<double>& active_time);

  const ContentionGraph& graph_;
  SimConfig cfg_;
  Rng rng_;
  double now_ = 0.0;
  std::vector<double> rho_;
  std::vector<char> active_;
  std::vector<double> tx_end_;     // valid while active
  std::vector<double> remaining_;  // backoff left, valid while idle
  std::vector<int> busy_;          // transmitting neighbors
};

} // namespace csmanet
