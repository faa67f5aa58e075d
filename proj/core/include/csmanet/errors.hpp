#pragma once

#include <stdexcept>

namespace csmanet {

/// Malformed graph input: duplicate ids, self-edges, dangling endpoints, ...
struct GraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exact engines refuse graphs beyond the enumeration cap instead of
/// silently degrading.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Target throughputs violate a clique airtime bound (sum over a maximal
/// clique must stay below 1).
struct InfeasibleTargets : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace csmanet
