#include "swbnet/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "swbnet/error.hpp"
#include "swbnet/format.hpp"

namespace swbnet {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open '" + path.string() + "'");
  return in;
}

bool skippable(std::string_view line) {
  return line.empty() || line.front() == '#' || line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::vector<EdgeRecord> read_edge_records(std::istream& in) {
  std::vector<EdgeRecord> records;
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (skippable(line)) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw IngestError("expected 'source<TAB>target'", lineno);
    records.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  return records;
}

std::vector<EdgeRecord> load_edge_records(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_edge_records(in);
  } catch (const IngestError& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

void write_friend_graph(std::ostream& out, const FriendGraph& g) {
  out << "nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (const auto& e : g.edges())
    out << g.id(e.u) << '\t' << g.id(e.v) << '\t' << format_fixed(e.weight, 6) << '\n';
  for (NodeIndex u = 0; u < g.node_count(); ++u)
    if (g.degree(u) == 0) out << g.id(u) << '\n';
}

FriendGraph read_friend_graph(std::istream& in) {
  std::string raw;
  long lineno = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  bool header = false;
  std::vector<std::string> isolated;
  std::vector<std::tuple<std::string, std::string, double>> list;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (skippable(line)) continue;
    if (!header) {
      auto f = split(line, ' ');
      if (f.size() != 4 || f[0] != "nodes" || f[2] != "edges" ||
          std::from_chars(f[1].data(), f[1].data() + f[1].size(), nodes).ec != std::errc{} ||
          std::from_chars(f[3].data(), f[3].data() + f[3].size(), edges).ec != std::errc{})
        throw IngestError("expected header 'nodes <N> edges <E>'", lineno);
      header = true;
      continue;
    }
    auto f = split(line, '\t');
    if (f.size() == 1) {
      isolated.emplace_back(f[0]);
      continue;
    }
    double w = 0.0;
    if (f.size() != 3 || f[0].empty() || f[1].empty() ||
        std::from_chars(f[2].data(), f[2].data() + f[2].size(), w).ec != std::errc{})
      throw IngestError("expected 'u<TAB>v<TAB>weight'", lineno);
    list.emplace_back(std::string(f[0]), std::string(f[1]), w);
  }
  if (!header) throw IngestError("missing 'nodes <N> edges <E>' header");
  FriendGraph g;
  try {
    g = FriendGraph::from_id_edges(std::move(isolated), list, true);
  } catch (const ArgumentError& e) {
    throw IngestError(e.what());
  }
  if (g.node_count() != nodes || g.edge_count() != edges)
    throw IngestError("header declares " + std::to_string(nodes) + " nodes / " + std::to_string(edges) +
                      " edges but the body has " + std::to_string(g.node_count()) + " / " +
                      std::to_string(g.edge_count()));
  return g;
}

FriendGraph load_friend_graph(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_friend_graph(in);
  } catch (const IngestError& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json stats_to_json(const GraphStats& s) {
  nlohmann::ordered_json j;
  j["node_count"] = s.node_count;
  j["edge_count"] = s.edge_count;
  j["density"] = s.density;
  j["diameter"] = s.diameter;
  j["diameter_mode"] = std::string(to_string(s.diameter_mode));
  j["diameter_is_lower_bound"] = s.diameter_is_lower_bound;
  j["connected"] = s.connected;
  j["average_degree"] = s.average_degree;
  j["average_clustering"] = s.average_clustering;
  return j;
}

}  // namespace swbnet
