#include "csmanet/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "csmanet/errors.hpp"

namespace csmanet {

namespace {

using nlohmann::json;

std::ifstream open_in(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

} // namespace

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

GraphFile read_graph_json(std::istream& in) {
  json j = json::parse(in);
  GraphFile out;
  std::vector<LinkId> ids;
  for (const auto& link : j.at("links")) {
    const LinkId id = link.at("id").get<LinkId>();
    ids.push_back(id);
    if (link.contains("rho")) {
      out.rho[id] = link.at("rho").get<double>();
      out.has_rho = true;
    }
  }
  std::vector<std::pair<LinkId, LinkId>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw std::runtime_error("edges must be [a, b] pairs");
    }
    edges.emplace_back(e[0].get<LinkId>(), e[1].get<LinkId>());
  }
  out.graph = ContentionGraph(std::move(ids), std::move(edges));
  for (LinkId id : out.graph.ids()) {
    if (!out.rho.count(id)) out.rho[id] = kDefaultRho;
  }
  return out;
}

GraphFile read_graph_json(const std::filesystem::path& file) {
  auto in = open_in(file);
  return read_graph_json(in);
}

void write_graph_json(std::ostream& out, const ContentionGraph& g,
                      const AccessIntensities* rho) {
  // Hand-rolled writing keeps float formatting at 12 significant digits and
  // the field order stable, so identical inputs give identical bytes.
  out << "{\"links\":[";
  bool first = true;
  for (LinkId id : g.ids()) {
    if (!first) out << ',';
    first = false;
    out << "{\"id\":" << id;
    if (rho && rho->count(id)) {
      out << ",\"rho\":" << format_g12(rho->at(id));
    }
    out << '}';
  }
  out << "],\"edges\":[";
  first = true;
  for (auto [a, b] : g.edges()) {
    if (!first) out << ',';
    first = false;
    out << '[' << a << ',' << b << ']';
  }
  out << "]}\n";
}

void write_graph_json(const std::filesystem::path& file,
                      const ContentionGraph& g, const AccessIntensities* rho) {
  auto out = open_out(file);
  write_graph_json(out, g, rho);
}

ThroughputVector read_targets_json(std::istream& in) {
  json j = json::parse(in);
  ThroughputVector out;
  for (const auto& t : j.at("targets")) {
    out[t.at("id").get<LinkId>()] = t.at("th").get<double>();
  }
  return out;
}

ThroughputVector read_targets_json(const std::filesystem::path& file) {
  auto in = open_in(file);
  return read_targets_json(in);
}

void write_targets_json(std::ostream& out, const ThroughputVector& targets) {
  out << "{\"targets\":[";
  bool first = true;
  for (const auto& [id, th] : targets) {
    if (!first) out << ',';
    first = false;
    out << "{\"id\":" << id << ",\"th\":" << format_g12(th) << '}';
  }
  out << "]}\n";
}

void write_targets_json(const std::filesystem::path& file,
                        const ThroughputVector& targets) {
  auto out = open_out(file);
  write_targets_json(out, targets);
}

void write_link_csv(std::ostream& out, const std::vector<std::string>& columns,
                    const std::vector<LinkId>& ids,
                    const std::vector<std::vector<double>>& values) {
  out << "id";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (std::size_t row = 0; row < ids.size(); ++row) {
    out << ids[row];
    for (const auto& col : values) {
      out << ',' << format_g12(col[row]);
    }
    out << '\n';
  }
}

} // namespace csmanet
