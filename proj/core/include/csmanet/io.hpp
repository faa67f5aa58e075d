#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "csmanet/graph.hpp"
#include "csmanet/types.hpp"

namespace csmanet {

/// On-disk graph schema:
///   {"links":[{"id":1,"rho":2.0},...],"edges":[[1,2],...]}
/// rho is optional per link; absent entries fall back to the default
/// intensity. Ids are serialized as integers, floats with 12 significant
/// digits.
struct GraphFile {
  ContentionGraph graph;
  AccessIntensities rho;
  bool has_rho = false;  // true when any link carried an explicit rho
};

GraphFile read_graph_json(std::istream& in);
GraphFile read_graph_json(const std::filesystem::path& file);
void write_graph_json(std::ostream& out, const ContentionGraph& g,
                      const AccessIntensities* rho = nullptr);
void write_graph_json(const std::filesystem::path& file,
                      const ContentionGraph& g,
                      const AccessIntensities* rho = nullptr);

/// Targets schema: {"targets":[{"id":1,"th":0.3},...]}
ThroughputVector read_targets_json(std::istream& in);
ThroughputVector read_targets_json(const std::filesystem::path& file);
void write_targets_json(std::ostream& out, const ThroughputVector& targets);
void write_targets_json(const std::filesystem::path& file,
                        const ThroughputVector& targets);

/// 12 significant digits, shortest form ("%.12g").
std::string format_g12(double v);

/// Per-link table as CSV: "id,<col0>,<col1>,..." with one row per link in
/// id order. All columns must be the same size as ids.
void write_link_csv(std::ostream& out, const std::vector<std::string>& columns,
                    const std::vector<LinkId>& ids,
                    const std::vector<std::vector<double>>& values);

} // namespace csmanet
