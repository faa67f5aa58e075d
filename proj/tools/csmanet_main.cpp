// csmanet: inference and control for CSMA contention graphs.
//
// Subcommands: gen, targets, solve, invert, optimize, simulate, regions,
// distributed, bench. All randomized commands take an explicit seed and the
// outputs are byte-identical for identical (command, seed) pairs.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "csmanet/acsma.hpp"
#include "csmanet/bp.hpp"
#include "csmanet/cliques.hpp"
#include "csmanet/convergence.hpp"
#include "csmanet/distributed.hpp"
#include "csmanet/errors.hpp"
#include "csmanet/gbp.hpp"
#include "csmanet/graph.hpp"
#include "csmanet/icn.hpp"
#include "csmanet/independent_sets.hpp"
#include "csmanet/io.hpp"
#include "csmanet/region_graph.hpp"
#include "csmanet/rng.hpp"
#include "csmanet/sim.hpp"

namespace {

using namespace csmanet;

int log_level() {
  static const int level = [] {
    const char* v = std::getenv("CSMANET_LOG");
    return v ? std::atoi(v) : 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[csmanet] " << msg << '\n';
}

constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

std::ostream& open_or_stdout(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

AccessIntensities uniform_rho(const ContentionGraph& g, double rho) {
  AccessIntensities out;
  for (LinkId id : g.ids()) out[id] = rho;
  return out;
}

struct LoadedGraph {
  ContentionGraph graph;
  AccessIntensities rho;
};

LoadedGraph load_graph(const std::string& path, double rho_override) {
  GraphFile f = read_graph_json(std::filesystem::path(path));
  LoadedGraph out{std::move(f.graph), std::move(f.rho)};
  if (rho_override > 0.0) out.rho = uniform_rho(out.graph, rho_override);
  return out;
}

void write_th_csv(const std::string& path, const ContentionGraph& g,
                  const ThroughputVector& th,
                  const std::map<LinkId, double>* se = nullptr) {
  std::ofstream file;
  std::ostream& out = open_or_stdout(path, file);
  std::vector<LinkId> ids(g.ids().begin(), g.ids().end());
  std::vector<std::vector<double>> cols(se ? 2 : 1);
  for (LinkId id : ids) {
    cols[0].push_back(th.at(id));
    if (se) cols[1].push_back(se->at(id));
  }
  std::vector<std::string> names{"th"};
  if (se) names.push_back("se");
  write_link_csv(out, names, ids, cols);
}

void write_rho_csv(const std::string& path, const ContentionGraph& g,
                   const AccessIntensities& rho) {
  std::ofstream file;
  std::ostream& out = open_or_stdout(path, file);
  std::vector<LinkId> ids(g.ids().begin(), g.ids().end());
  std::vector<std::vector<double>> cols(1);
  for (LinkId id : ids) cols[0].push_back(rho.at(id));
  write_link_csv(out, {"rho"}, ids, cols);
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
  std::string kind;
  int n = 8;
  int z = 3;
  int layers = 4;
  double degree = 4.0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  double rho = 0.0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  ContentionGraph g;
  if (a.kind == "ring") {
    g = ring_graph(a.n);
  } else if (a.kind == "cayley") {
    g = cayley_tree_graph(a.z, a.layers);
  } else if (a.kind == "random") {
    if (!a.has_seed) throw std::runtime_error("gen random requires --seed");
    g = random_geometric_graph(a.n, a.degree, a.seed);
  } else {
    throw std::runtime_error("unknown topology kind: " + a.kind);
  }
  log_info("generated " + std::to_string(g.size()) + " links, " +
           std::to_string(g.edge_count()) + " edges");
  std::ofstream file;
  std::ostream& out = open_or_stdout(a.out, file);
  if (a.rho > 0.0) {
    const AccessIntensities rho = uniform_rho(g, a.rho);
    write_graph_json(out, g, &rho);
  } else {
    write_graph_json(out, g, nullptr);
  }
  return 0;
}

// ------------------------------------------------------------- targets ----

int cmd_targets(const std::string& graph_path, double gamma,
                std::uint64_t seed, int mixture, const std::string& out_path) {
  if (!(gamma >= 0.0) || !(gamma < 1.0)) {
    throw InfeasibleTargets("load factor must satisfy 0 <= gamma < 1");
  }
  const LoadedGraph in = load_graph(graph_path, 0.0);
  Rng rng(seed);
  std::vector<std::vector<LinkId>> sets;
  for (int k = 0; k < mixture; ++k) {
    sets.push_back(sample_maximal_independent_set(in.graph, rng));
  }
  std::vector<double> weights(sets.size());
  double total = 0.0;
  for (double& w : weights) {
    w = rng.uniform01() + 1e-9;
    total += w;
  }
  ThroughputVector targets;
  for (LinkId id : in.graph.ids()) targets[id] = 0.0;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (LinkId id : sets[k]) targets[id] += gamma * weights[k] / total;
  }
  std::ofstream file;
  std::ostream& out = open_or_stdout(out_path, file);
  write_targets_json(out, targets);
  return 0;
}

// --------------------------------------------------------------- solve ----

struct SolveArgs {
  std::string graph;
  std::string algo = "bp";
  double rho = 0.0;
  double tol = 1e-9;
  int max_iter = 5000;
  double alpha = 0.5;
  double damping = 0.0;
  double horizon = 1e4;
  std::uint64_t seed = 1;
  std::string out;
  bool dump_regions = false;
};

int cmd_solve(const SolveArgs& a) {
  const LoadedGraph in = load_graph(a.graph, a.rho);
  ThroughputVector th;
  int iterations = 0;
  bool converged = true;

  if (a.algo == "exact") {
    th = exact_throughputs(in.graph, in.rho);
    std::cout << "algo=exact links=" << in.graph.size();
    if (!is_forest(in.graph)) {
      const StationaryDistribution d = partition_function(in.graph, in.rho);
      std::cout << " Z=" << format_g12(d.Z);
    }
    std::cout << '\n';
  } else if (a.algo == "bp" || a.algo == "sbp") {
    BpConfig cfg;
    cfg.tol = a.tol;
    cfg.max_iter = a.max_iter;
    cfg.damping = a.damping;
    const BpResult r = (a.algo == "bp") ? run_bp(in.graph, in.rho, cfg)
                                        : run_sbp(in.graph, in.rho, cfg);
    th = r.th;
    iterations = r.iterations;
    converged = r.converged;
    std::cout << "algo=" << a.algo << " iterations=" << iterations
              << " converged=" << (converged ? "yes" : "no") << '\n';
  } else if (a.algo == "gbp") {
    GbpConfig cfg;
    cfg.tol = a.tol;
    cfg.max_iter = a.max_iter;
    cfg.alpha = a.alpha;
    const GbpResult r = run_gbp(in.graph, in.rho, cfg);
    th = r.th;
    iterations = r.iterations;
    converged = r.converged;
    std::cout << "algo=gbp regions=" << r.region_graph.region_count()
              << " iterations=" << iterations
              << " converged=" << (converged ? "yes" : "no") << '\n';
    if (a.dump_regions) {
      for (const Region& reg : r.region_graph.regions()) {
        std::cout << "  level " << reg.level << ":";
        for (LinkId id : reg.members) std::cout << ' ' << id;
        std::cout << '\n';
      }
    }
  } else if (a.algo == "sim") {
    SimConfig cfg;
    cfg.horizon = a.horizon;
    cfg.seed = a.seed;
    const SimResult r = simulate_icn(in.graph, in.rho, cfg);
    th = r.th;
    std::cout << "algo=sim horizon=" << format_g12(a.horizon) << '\n';
    write_th_csv(a.out, in.graph, th, &r.se);
    return 0;
  } else {
    throw std::runtime_error("unknown solver: " + a.algo);
  }

  write_th_csv(a.out, in.graph, th);
  return converged ? 0 : kExitNotConverged;
}

// -------------------------------------------------------------- invert ----

int cmd_invert(const std::string& graph_path, const std::string& targets_path,
               const std::string& algo, double tol, int max_iter, double alpha,
               const std::string& out_path) {
  const LoadedGraph in = load_graph(graph_path, 0.0);
  const ThroughputVector targets =
      read_targets_json(std::filesystem::path(targets_path));

  AccessIntensities rho;
  int iterations = 0;
  bool converged = false;
  if (algo == "ibp") {
    BpConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    const IbpResult r = run_ibp(in.graph, targets, cfg);
    rho = r.rho;
    iterations = r.iterations;
    converged = r.converged;
  } else if (algo == "igbp") {
    GbpConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.alpha = alpha;
    const IgbpResult r = run_igbp(in.graph, targets, cfg);
    rho = r.rho;
    iterations = r.iterations;
    converged = r.converged;
  } else {
    throw std::runtime_error("unknown inverse solver: " + algo);
  }
  std::cout << "algo=" << algo << " iterations=" << iterations
            << " converged=" << (converged ? "yes" : "no") << '\n';
  write_rho_csv(out_path, in.graph, rho);
  return converged ? 0 : kExitNotConverged;
}

// ------------------------------------------------------------ optimize ----

struct OptimizeArgs {
  std::string graph;
  std::string algo = "bp-acsma";
  std::string utility = "log";
  double beta = 1.0;
  double tol = 1e-2;
  int max_iter = 500;
  double T = 150.0;
  double step = 0.1;
  std::uint64_t seed = 1;
  std::string out;
  std::string trace;
};

int cmd_optimize(const OptimizeArgs& a) {
  if (a.utility != "log") {
    throw std::runtime_error("only the log utility is wired to the CLI");
  }
  const LoadedGraph in = load_graph(a.graph, 0.0);
  const UtilitySpec u = UtilitySpec::log_utility(a.beta);

  AccessIntensities rho;
  ThroughputVector th;
  int iterations = 0;
  bool converged = false;
  std::vector<std::vector<double>> r_trace;

  if (a.algo == "bp-acsma" || a.algo == "gbp-acsma") {
    AcsmaComputeConfig cfg;
    cfg.tol = a.tol;
    cfg.max_iter = a.max_iter;
    const AcsmaResult r = (a.algo == "bp-acsma") ? run_bp_acsma(in.graph, u, cfg)
                                                 : run_gbp_acsma(in.graph, u, cfg);
    rho = r.rho;
    th = r.th;
    iterations = r.iterations;
    converged = r.converged;
    r_trace = r.r_history;
  } else if (a.algo == "acsma") {
    AcsmaBaselineConfig bcfg;
    bcfg.update_interval = a.T;
    bcfg.step_size = a.step;
    bcfg.max_iter = a.max_iter;
    SimConfig scfg;
    scfg.seed = a.seed;
    const BaselineResult r = run_measurement_acsma(in.graph, u, bcfg, scfg);
    rho = r.rho;
    const SimConfig verify{.horizon = 5000.0, .seed = a.seed + 1};
    th = simulate_icn(in.graph, rho, verify).th;
    iterations = r.iterations_to_convergence;
    converged = r.converged;
    for (const BaselineIteration& it : r.trace) r_trace.push_back(it.r);
  } else if (a.algo == "oracle") {
    OracleConfig cfg;
    const OracleResult r = exact_acsma_oracle(in.graph, u, cfg);
    rho = r.rho;
    th = r.th;
    iterations = r.iterations;
    converged = r.converged;
  } else {
    throw std::runtime_error("unknown optimizer: " + a.algo);
  }

  double total_th = 0.0;
  for (const auto& [id, t] : th) total_th += t;
  std::cout << "algo=" << a.algo << " Th=" << format_g12(total_th)
            << " U=" << format_g12(evaluate_utility(th, u))
            << " iterations=" << iterations
            << " converged=" << (converged ? "yes" : "no") << '\n';

  {
    std::ofstream file;
    std::ostream& out = open_or_stdout(a.out, file);
    std::vector<LinkId> ids(in.graph.ids().begin(), in.graph.ids().end());
    std::vector<std::vector<double>> cols(2);
    for (LinkId id : ids) {
      cols[0].push_back(rho.at(id));
      cols[1].push_back(th.count(id) ? th.at(id) : 0.0);
    }
    write_link_csv(out, {"rho", "th"}, ids, cols);
  }
  if (!a.trace.empty()) {
    std::ofstream tf(a.trace);
    tf << "iter";
    for (LinkId id : in.graph.ids()) tf << ",r_" << id;
    tf << '\n';
    for (std::size_t n = 0; n < r_trace.size(); ++n) {
      tf << (n + 1);
      for (double v : r_trace[n]) tf << ',' << format_g12(v);
      tf << '\n';
    }
  }
  return converged ? 0 : kExitNotConverged;
}

// ------------------------------------------------------------ simulate ----

int cmd_simulate(const std::string& graph_path, double rho_override,
                 const std::string& dist_tx, const std::string& dist_bo,
                 double horizon, std::uint64_t seed,
                 const std::string& out_path) {
  const LoadedGraph in = load_graph(graph_path, rho_override);
  SimConfig cfg;
  cfg.tx.kind = parse_dist_kind(dist_tx);
  cfg.backoff.kind = parse_dist_kind(dist_bo);
  cfg.horizon = horizon;
  cfg.seed = seed;
  const SimResult r = simulate_icn(in.graph, in.rho, cfg);
  write_th_csv(out_path, in.graph, r.th, &r.se);
  return 0;
}

// ------------------------------------------------------------- regions ----

int cmd_regions(const std::string& graph_path, LinkId local,
                const std::string& out_path) {
  const LoadedGraph in = load_graph(graph_path, 0.0);
  RegionGraph rg;
  if (local >= 0) {
    rg = build_local_region_graph(in.graph, local).graph;
  } else {
    rg = build_region_graph(in.graph);
  }
  nlohmann::json j;
  j["regions"] = nlohmann::json::array();
  for (const Region& r : rg.regions()) {
    j["regions"].push_back({{"level", r.level}, {"members", r.members}});
  }
  j["edges"] = nlohmann::json::array();
  for (auto [p, c] : rg.edges()) j["edges"].push_back({p, c});
  const RegionGraphReport report = validate_region_graph(rg, in.graph);
  j["valid"] = report.all_pass();

  std::ofstream file;
  std::ostream& out = open_or_stdout(out_path, file);
  out << j.dump() << '\n';
  return 0;
}

// --------------------------------------------------------- distributed ----

std::vector<ChurnEvent> read_churn(const std::string& path) {
  std::vector<ChurnEvent> events;
  if (path.empty()) return events;
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(f);
  for (const auto& e : j) {
    ChurnEvent ev;
    ev.round = e.at("round").get<int>();
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "add_link") {
      ev.kind = ChurnEvent::Kind::add_link;
      ev.link = e.at("link").get<LinkId>();
      ev.attach = e.at("attach").get<std::vector<LinkId>>();
      if (e.contains("rho")) ev.rho = e.at("rho").get<double>();
      if (e.contains("target")) ev.target = e.at("target").get<double>();
    } else if (kind == "remove_link") {
      ev.kind = ChurnEvent::Kind::remove_link;
      ev.link = e.at("link").get<LinkId>();
    } else if (kind == "add_edge" || kind == "remove_edge") {
      ev.kind = (kind == "add_edge") ? ChurnEvent::Kind::add_edge
                                     : ChurnEvent::Kind::remove_edge;
      ev.a = e.at("a").get<LinkId>();
      ev.b = e.at("b").get<LinkId>();
    } else {
      throw std::runtime_error("unknown churn kind: " + kind);
    }
    events.push_back(ev);
  }
  return events;
}

int cmd_distributed(const std::string& graph_path, const std::string& agents,
                    int rounds, int t1, const std::string& targets_path,
                    double beta, const std::string& churn_path,
                    const std::string& out_path) {
  const LoadedGraph in = load_graph(graph_path, 0.0);
  const AgentKind kind = parse_agent_kind(agents);

  HarnessParams params;
  params.rho = in.rho;
  params.utility = UtilitySpec::log_utility(beta);
  if (!targets_path.empty()) {
    params.targets = read_targets_json(std::filesystem::path(targets_path));
  }
  RoundSchedule schedule;
  schedule.rounds = rounds;
  schedule.t1_period = t1;
  schedule.churn = read_churn(churn_path);

  const HarnessResult r = run_harness(in.graph, kind, schedule, params);

  std::ofstream file;
  std::ostream& out = open_or_stdout(out_path, file);
  out << "round,id,th,rho,reset\n";
  for (const RoundSnapshot& snap : r.rounds) {
    for (const AgentSnapshot& a : snap.agents) {
      out << snap.round << ',' << a.id << ',' << format_g12(a.th) << ','
          << format_g12(a.rho) << ',' << (a.reset ? 1 : 0) << '\n';
    }
  }
  return 0;
}

// --------------------------------------------------------------- bench ----

int cmd_bench(int links, double degree, int topologies, std::uint64_t seed,
              double rho_factor, double horizon, int jobs,
              const std::string& out_path) {
  struct Row {
    std::uint64_t seed;
    double bp_err, gbp_err;
    int bp_iters, gbp_iters;
  };
  std::vector<Row> rows(static_cast<std::size_t>(topologies));
  std::atomic<int> next{0};

  auto work = [&] {
    for (int t = next.fetch_add(1); t < topologies; t = next.fetch_add(1)) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
      const ContentionGraph g = random_geometric_graph(links, degree, s);
      const AccessIntensities rho = uniform_rho(g, kDefaultRho * rho_factor);

      SimConfig scfg;
      scfg.horizon = horizon;
      scfg.seed = s + 1000003;
      const ThroughputVector ref = simulate_icn(g, rho, scfg).th;
      double max_ref = 0.0;
      for (const auto& [id, v] : ref) max_ref = std::max(max_ref, v);

      auto mean_err = [&](const ThroughputVector& th) {
        double total = 0.0;
        for (const auto& [id, v] : th) total += std::abs(v - ref.at(id));
        return total / (static_cast<double>(th.size()) * max_ref);
      };

      BpConfig bcfg;
      bcfg.tol = 1e-9;
      bcfg.max_iter = 3000;
      const BpResult bp = run_bp(g, rho, bcfg);
      GbpConfig gcfg;
      gcfg.tol = 1e-9;
      gcfg.max_iter = 3000;
      const GbpResult gbp = run_gbp(g, rho, gcfg);

      Row row;
      row.seed = s;
      row.bp_err = mean_err(bp.th);
      row.gbp_err = mean_err(gbp.th);
      row.bp_iters = iterations_within(bp.history, 0.01);
      row.gbp_iters = iterations_within(gbp.history, 0.01);
      rows[static_cast<std::size_t>(t)] = row;
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < jobs; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::ofstream file;
  std::ostream& out = open_or_stdout(out_path, file);
  out << "seed,bp_err,gbp_err,bp_iters,gbp_iters\n";
  double bp_sum = 0.0, gbp_sum = 0.0;
  for (const Row& r : rows) {
    out << r.seed << ',' << format_g12(r.bp_err) << ',' << format_g12(r.gbp_err)
        << ',' << r.bp_iters << ',' << r.gbp_iters << '\n';
    bp_sum += r.bp_err;
    gbp_sum += r.gbp_err;
  }
  std::cout << "links=" << links << " topologies=" << topologies
            << " mean_bp_err=" << format_g12(bp_sum / topologies)
            << " mean_gbp_err=" << format_g12(gbp_sum / topologies) << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"inference and control for CSMA contention graphs"};
  app.require_subcommand(1);

  // gen
  GenArgs gen;
  auto* sc_gen = app.add_subcommand("gen", "generate a topology");
  sc_gen->add_option("kind", gen.kind, "ring | cayley | random")->required();
  sc_gen->add_option("--n", gen.n, "link count (ring/random)");
  sc_gen->add_option("--z", gen.z, "cayley order");
  sc_gen->add_option("--layers", gen.layers, "cayley layers");
  sc_gen->add_option("--degree", gen.degree, "target mean degree (random)");
  auto* gen_seed = sc_gen->add_option("--seed", gen.seed, "rng seed (random)");
  sc_gen->add_option("--rho", gen.rho, "uniform access intensity to embed");
  sc_gen->add_option("-o,--out", gen.out, "output graph json");

  // targets
  std::string tg_graph, tg_out;
  double tg_gamma = 0.8;
  std::uint64_t tg_seed = 0;
  int tg_mix = 3;
  auto* sc_targets =
      app.add_subcommand("targets", "feasible target throughputs from a "
                                    "scaled mixture of maximal independent sets");
  sc_targets->add_option("graph", tg_graph)->required();
  sc_targets->add_option("--gamma", tg_gamma, "load factor in [0,1)");
  sc_targets->add_option("--seed", tg_seed)->required();
  sc_targets->add_option("--mais-count", tg_mix, "sets in the mixture");
  sc_targets->add_option("-o,--out", tg_out);

  // solve
  SolveArgs solve;
  auto* sc_solve = app.add_subcommand("solve", "compute link throughputs");
  sc_solve->add_option("graph", solve.graph)->required();
  sc_solve->add_option("--algo", solve.algo, "exact | bp | sbp | gbp | sim");
  sc_solve->add_option("--rho", solve.rho, "override all intensities");
  sc_solve->add_option("--tol", solve.tol);
  sc_solve->add_option("--max-iter", solve.max_iter);
  sc_solve->add_option("--alpha", solve.alpha, "gbp message smoothing");
  sc_solve->add_option("--damping", solve.damping, "bp damping");
  sc_solve->add_option("--horizon", solve.horizon, "sim horizon");
  sc_solve->add_option("--seed", solve.seed, "sim seed");
  sc_solve->add_flag("--dump-regions", solve.dump_regions);
  sc_solve->add_option("-o,--out", solve.out);

  // invert
  std::string inv_graph, inv_targets, inv_algo = "ibp", inv_out;
  double inv_tol = 1e-9, inv_alpha = 0.5;
  int inv_max_iter = 5000;
  auto* sc_invert =
      app.add_subcommand("invert", "access intensities for target throughputs");
  sc_invert->add_option("graph", inv_graph)->required();
  sc_invert->add_option("--targets", inv_targets)->required();
  sc_invert->add_option("--algo", inv_algo, "ibp | igbp");
  sc_invert->add_option("--tol", inv_tol);
  sc_invert->add_option("--max-iter", inv_max_iter);
  sc_invert->add_option("--alpha", inv_alpha);
  sc_invert->add_option("-o,--out", inv_out);

  // optimize
  OptimizeArgs opt;
  auto* sc_opt = app.add_subcommand("optimize", "network utility optimization");
  sc_opt->add_option("graph", opt.graph)->required();
  sc_opt->add_option("--algo", opt.algo,
                     "bp-acsma | gbp-acsma | acsma | oracle");
  sc_opt->add_option("--beta", opt.beta);
  sc_opt->add_option("--utility", opt.utility);
  sc_opt->add_option("--tol", opt.tol);
  sc_opt->add_option("--max-iter", opt.max_iter);
  sc_opt->add_option("--T", opt.T, "baseline update interval");
  sc_opt->add_option("--step", opt.step, "baseline gradient step");
  sc_opt->add_option("--seed", opt.seed, "baseline sim seed");
  sc_opt->add_option("-o,--out", opt.out);
  sc_opt->add_option("--trace", opt.trace, "per-iteration r trace csv");

  // simulate
  std::string sim_graph, sim_tx = "exponential", sim_bo = "exponential", sim_out;
  double sim_rho = 0.0, sim_horizon = 1e4;
  std::uint64_t sim_seed = 0;
  auto* sc_sim = app.add_subcommand("simulate", "event-driven reference run");
  sc_sim->add_option("graph", sim_graph)->required();
  sc_sim->add_option("--rho", sim_rho);
  sc_sim->add_option("--dist-tx", sim_tx, "exponential | deterministic | uniform");
  sc_sim->add_option("--dist-bo", sim_bo);
  sc_sim->add_option("--horizon", sim_horizon);
  sc_sim->add_option("--seed", sim_seed)->required();
  sc_sim->add_option("-o,--out", sim_out);

  // regions
  std::string reg_graph, reg_out;
  LinkId reg_local = -1;
  auto* sc_reg = app.add_subcommand("regions", "dump the region graph");
  sc_reg->add_option("graph", reg_graph)->required();
  sc_reg->add_option("--local", reg_local, "owner vertex for a local graph");
  sc_reg->add_option("-o,--out", reg_out);

  // distributed
  std::string d_graph, d_agents = "bp", d_targets, d_churn, d_out;
  int d_rounds = 50, d_t1 = 10;
  double d_beta = 1.0;
  auto* sc_dist = app.add_subcommand("distributed", "round-based agent run");
  sc_dist->add_option("graph", d_graph)->required();
  sc_dist->add_option("--agents", d_agents,
                      "bp | ibp | bp-acsma | gbp | igbp | gbp-acsma");
  sc_dist->add_option("--rounds", d_rounds);
  sc_dist->add_option("--t1", d_t1, "refresh period in rounds");
  sc_dist->add_option("--targets", d_targets);
  sc_dist->add_option("--beta", d_beta);
  sc_dist->add_option("--churn", d_churn, "json list of churn events");
  sc_dist->add_option("-o,--out", d_out);

  // bench
  int b_links = 50, b_topologies = 10, b_jobs = 1;
  double b_degree = 4.0, b_rho_factor = 1.0, b_horizon = 2e5;
  std::uint64_t b_seed = 0;
  std::string b_out;
  auto* sc_bench =
      app.add_subcommand("bench", "accuracy sweep over random topologies");
  sc_bench->add_option("--links", b_links);
  sc_bench->add_option("--degree", b_degree);
  sc_bench->add_option("--topologies", b_topologies);
  sc_bench->add_option("--seed", b_seed)->required();
  sc_bench->add_option("--rho-factor", b_rho_factor, "multiple of the default rho");
  sc_bench->add_option("--horizon", b_horizon, "reference sim horizon");
  sc_bench->add_option("--jobs", b_jobs, "parallel topologies");
  sc_bench->add_option("-o,--out", b_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_gen->parsed()) {
      gen.has_seed = gen_seed->count() > 0;
      return cmd_gen(gen);
    }
    if (sc_targets->parsed()) {
      return cmd_targets(tg_graph, tg_gamma, tg_seed, tg_mix, tg_out);
    }
    if (sc_solve->parsed()) return cmd_solve(solve);
    if (sc_invert->parsed()) {
      return cmd_invert(inv_graph, inv_targets, inv_algo, inv_tol, inv_max_iter,
                        inv_alpha, inv_out);
    }
    if (sc_opt->parsed()) return cmd_optimize(opt);
    if (sc_sim->parsed()) {
      return cmd_simulate(sim_graph, sim_rho, sim_tx, sim_bo, sim_horizon,
                          sim_seed, sim_out);
    }
    if (sc_reg->parsed()) return cmd_regions(reg_graph, reg_local, reg_out);
    if (sc_dist->parsed()) {
      return cmd_distributed(d_graph, d_agents, d_rounds, d_t1, d_targets,
                             d_beta, d_churn, d_out);
    }
    if (sc_bench->parsed()) {
      return cmd_bench(b_links, b_degree, b_topologies, b_seed, b_rho_factor,
                       b_horizon, b_jobs, b_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
