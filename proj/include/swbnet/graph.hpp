#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace swbnet {

// Dense node index. Indices follow the byte-wise order of the user identifiers,
// so "smallest index" and "smallest identifier" coincide everywhere.
using NodeIndex = std::uint32_t;

using EdgeRecord = std::pair<std::string, std::string>;

/// Follower relations: an arc (u, v) means u follows v.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }

  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(NodeIndex u) const { return ids_[u]; }
  std::optional<NodeIndex> find(std::string_view id) const;

  std::span<const NodeIndex> out_neighbors(NodeIndex u) const {
    return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const NodeIndex> in_neighbors(NodeIndex u) const {
    return {in_sources_.data() + in_offsets_[u], in_sources_.data() + in_offsets_[u + 1]};
  }
  bool has_edge(NodeIndex u, NodeIndex v) const;

 private:
  friend struct DirectedBuild build_directed_graph(std::span<const EdgeRecord> records);

  std::vector<std::string> ids_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeIndex> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeIndex> in_sources_;
};

struct DirectedBuild {
  DirectedGraph graph;
  std::size_t records = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

/// Deduplicates arcs and drops self-loops (both are counted in the result).
DirectedBuild build_directed_graph(std::span<const EdgeRecord> records);

// inclusive: C_i = N(i) + {i}; exclusive: C_i = N(i).
enum class JaccardConvention { inclusive, exclusive };

struct WeightedEdge {
  NodeIndex u;
  NodeIndex v;
  double weight;
};

/// Undirected graph of reciprocated follower ties. Stored as a symmetric CSR
/// adjacency; every edge appears in both endpoint rows with the same weight.
class FriendGraph {
 public:
  FriendGraph() = default;

  // `ids` must be strictly increasing; edges are given once each, in either
  // orientation. Throws ArgumentError on self-loops, parallel edges,
  // out-of-range endpoints or weights outside [0,1].
  static FriendGraph from_edges(std::vector<std::string> ids, const std::vector<WeightedEdge>& edges,
                                bool weighted);

  // Same, keyed by identifier. Every edge endpoint is added to the node set.
  static FriendGraph from_id_edges(std::vector<std::string> nodes,
                                   const std::vector<std::tuple<std::string, std::string, double>>& edges,
                                   bool weighted);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return targets_.size() / 2; }
  bool empty() const { return ids_.empty(); }

  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(NodeIndex u) const { return ids_[u]; }
  std::optional<NodeIndex> find(std::string_view id) const;

  std::size_t degree(NodeIndex u) const { return offsets_[u + 1] - offsets_[u]; }
  std::span<const NodeIndex> neighbors(NodeIndex u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::span<const double> weights(NodeIndex u) const {
    return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
  }
  std::optional<double> weight(NodeIndex u, NodeIndex v) const;

  // False until edge weights have been computed; weights then hold the 1.0 placeholder.
  bool weighted() const { return weighted_; }

  /// Canonical edge list: u < v, sorted by (u, v).
  std::vector<WeightedEdge> edges() const;

  /// Subgraph induced by nodes with keep[u] != 0. Weights are carried over.
  FriendGraph induced(const std::vector<char>& keep) const;

  friend bool operator==(const FriendGraph&, const FriendGraph&) = default;

 private:
  friend FriendGraph compute_jaccard_weights(const FriendGraph&, JaccardConvention, unsigned);

  std::vector<std::string> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> targets_;
  std::vector<double> weights_;
  bool weighted_ = false;
};

/// Unordered edge {u,v} for every pair of opposite arcs. All nodes are kept.
FriendGraph extract_reciprocal(const DirectedGraph& g);

struct ActivityMap {
  std::map<std::string, long, std::less<>> counts;  // tweets per user over the window
  int window_days = 180;
};

/// Induced subgraph on users with counts[user] >= min_total. Users missing from
/// the activity map are dropped.
FriendGraph filter_active_users(const FriendGraph& g, const ActivityMap& activity, long min_total);

JaccardConvention parse_jaccard_convention(std::string_view s);
std::string_view to_string(JaccardConvention c);

/// Sets every edge weight to |C_u ∩ C_v| / |C_u ∪ C_v|.
FriendGraph compute_jaccard_weights(const FriendGraph& g, JaccardConvention convention,
                                    unsigned workers = 1);

/// Component label per node; labels are numbered in order of each component's smallest node.
std::vector<NodeIndex> component_labels(const FriendGraph& g);

/// Largest component by node count; ties go to the component holding the smallest identifier.
FriendGraph largest_connected_component(const FriendGraph& g);

/// Keeps edges with weight >= epsilon and drops nodes left without edges.
FriendGraph threshold_subgraph(const FriendGraph& g, double epsilon);

enum class DiameterMode { exact, double_sweep, automatic };

DiameterMode parse_diameter_mode(std::string_view s);
std::string_view to_string(DiameterMode m);

struct StatsOptions {
  DiameterMode diameter_mode = DiameterMode::automatic;
  std::size_t exact_node_budget = 200'000;  // automatic mode switches to double sweep above this
  unsigned workers = 1;
};

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double density = 0.0;
  std::size_t diameter = 0;
  DiameterMode diameter_mode = DiameterMode::exact;  // resolved mode, never automatic
  bool diameter_is_lower_bound = false;
  bool connected = true;  // false: diameter refers to the largest component only
  double average_degree = 0.0;
  double average_clustering = 0.0;
};

double average_degree(std::size_t node_count, std::size_t edge_count);
double density(std::size_t node_count, std::size_t edge_count);

/// Throws ComputeError("empty graph") when g has no nodes.
GraphStats graph_stats(const FriendGraph& g, const StatsOptions& options = {});

/// Hop distances from `source`; unreachable nodes get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const FriendGraph& g, NodeIndex source);

/// Largest finite eccentricity over all sources.
std::size_t exact_diameter(const FriendGraph& g, unsigned workers = 1);

/// Lower bound: BFS from the highest-degree node, then from the farthest node found.
std::size_t double_sweep_diameter(const FriendGraph& g);

/// Per-node local clustering coefficient; nodes with degree < 2 get 0.
std::vector<double> local_clustering(const FriendGraph& g, unsigned workers = 1);

/// (degree, node count) pairs in increasing degree order.
std::vector<std::pair<std::size_t, std::size_t>> degree_distribution(const FriendGraph& g);

}  // namespace swbnet
