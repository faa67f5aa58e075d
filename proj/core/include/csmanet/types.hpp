#pragma once

#include <cstdint>
#include <map>

namespace csmanet {

/// Identifier of a wireless link (one vertex of the contention graph).
/// Ids are non-negative, unique within a graph, and totally ordered; the
/// order is what agent election and all deterministic sweeps rely on.
using LinkId = int;

/// Per-link access intensity rho_i = E[t_tr] / E[t_cd], keyed by link id.
/// Ordered map so iteration over links is deterministic.
using AccessIntensities = std::map<LinkId, double>;

/// Per-link normalized throughput in [0,1), keyed by link id.
using ThroughputVector = std::map<LinkId, double>;

/// Default access intensity, typical of 802.11b networks.
inline constexpr double kDefaultRho = 83.0 / 15.5;

} // namespace csmanet
