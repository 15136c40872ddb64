#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "swbnet/graph.hpp"

namespace testing_support {

inline swbnet::FriendGraph to_friend_graph(const oracle::TestGraph& g) {
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (const auto& [a, b] : g.edges) edges.emplace_back(a, b, 1.0);
  return swbnet::FriendGraph::from_id_edges(g.nodes, edges, false);
}

inline swbnet::FriendGraph friend_graph(std::vector<std::pair<std::string, std::string>> pairs,
                                        std::vector<std::string> extra_nodes = {}) {
  oracle::TestGraph g;
  g.nodes = std::move(extra_nodes);
  g.edges = std::move(pairs);
  return to_friend_graph(g);
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("swbnet_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_support
