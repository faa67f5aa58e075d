#pragma once

#include <functional>
#include <string>
#include <vector>

#include "csmanet/gbp.hpp"
#include "csmanet/graph.hpp"
#include "csmanet/independent_sets.hpp"
#include "csmanet/sim.hpp"
#include "csmanet/types.hpp"

namespace csmanet {

/// Strictly concave increasing utility on (0,1) with its derivative.
/// beta is the weighting factor multiplying the utility sum in the
/// entropy-regularized objective.
struct UtilitySpec {
  double beta = 1.0;
  std::function<double(double)> value;
  std::function<double(double)> deriv;  // positive, decreasing
  std::string name = "log";

  static UtilitySpec log_utility(double beta = 1.0);
};

/// The unique rho > 0 with log(rho) = beta * U'(th(rho)), where
/// th(rho) = rho*m1 / (rho*m1 + m0) is the link's belief given the products
/// of its incoming messages. Bracketed bisection on log(rho) in [-30, 30],
/// resolved to ~1e-12 relative; throws std::runtime_error when the bracket
/// fails (pathological message products).
double solve_rho_fixed_point(double m0, double m1, const UtilitySpec& u);

struct AcsmaComputeConfig {
  double tol = 1e-2;   // relative change of r = log(rho) between sweeps
  int max_iter = 500;
  double gbp_alpha = 0.5;
};

struct AcsmaResult {
  AccessIntensities rho;
  ThroughputVector th;  // the algorithm's own beliefs at the fixed point
  int iterations = 0;
  bool converged = false;
  std::vector<std::vector<double>> r_history;  // per-vertex log(rho)
};

/// Proactive utility optimization with pairwise messages: each sweep every
/// link rebalances its intensity against its current belief, then sends
/// messages computed with the fresh intensity.
AcsmaResult run_bp_acsma(const ContentionGraph& g, const UtilitySpec& u,
                         const AcsmaComputeConfig& cfg = {});

/// Region-graph variant; belief and message updates read the intensities
/// broadcast in the previous sweep, which is what one-hop broadcast makes
/// available to the distributed agents.
AcsmaResult run_gbp_acsma(const ContentionGraph& g, const UtilitySpec& u,
                          const AcsmaComputeConfig& cfg = {});

struct OracleConfig {
  double tol = 1e-9;
  int max_iter = 50000;
  double damping = 0.5;  // step fraction in r-space
  int cap = kEnumerationCap;
};

struct OracleResult {
  AccessIntensities rho;
  ThroughputVector th;
  int iterations = 0;
  bool converged = false;
};

/// Damped fixed-point iteration r_j <- beta * U'(exact th_j(rho)), using
/// exact marginals; solves the entropy-regularized problem exactly within
/// the enumeration cap (forests of any size via dynamic programming). On
/// non-convergence the damping is halved and the iteration retried once.
OracleResult exact_acsma_oracle(const ContentionGraph& g, const UtilitySpec& u,
                                const OracleConfig& cfg = {});

struct AcsmaBaselineConfig {
  double update_interval = 150.0;  // simulated time per iteration (T)
  double step_size = 0.1;          // gradient scale in r-space
  int max_iter = 500;
  double tol = 0.03;  // by nature looser than the computational variants
  double r_min = 1e-3;
  double r_max = 30.0;
  double f_max = 0.98;
};

struct BaselineIteration {
  std::vector<double> r;         // by vertex index
  std::vector<double> f;         // input rates after the update
  std::vector<double> measured;  // service rates seen in the window
};

struct BaselineResult {
  std::vector<BaselineIteration> trace;
  AccessIntensities rho;
  bool converged = false;
  /// First iteration from which every later r stays within tol of the
  /// final value; trace.size()+1 when that never happens.
  int iterations_to_convergence = 0;
};

/// The measurement-driven baseline: probe the network for one update
/// interval, move r_j by step * (measured service rate - f_j), rebalance
/// f_j from beta*U'(f_j) = r_j, repeat. Convergence is judged after the
/// run, against the final r, over a trailing window; persistent temporal
/// fluctuations show up as non-convergence, which is a reportable outcome.
BaselineResult run_measurement_acsma(const ContentionGraph& g,
                                     const UtilitySpec& u,
                                     const AcsmaBaselineConfig& bcfg,
                                     const SimConfig& simcfg);

/// Sum of per-link utilities; a non-positive throughput yields -infinity.
double evaluate_utility(const ThroughputVector& th, const UtilitySpec& u);

/// The entropy-regularized objective beta * sum U(th_j) - sum u_s log u_s,
/// evaluated at the exact stationary distribution under rho.
double evaluate_objective(const ContentionGraph& g,
                          const AccessIntensities& rho, const UtilitySpec& u,
                          int cap = kEnumerationCap);

} // namespace csmanet
