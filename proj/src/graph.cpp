#include "swbnet/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "swbnet/error.hpp"
#include "swbnet/parallel.hpp"

namespace swbnet {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::optional<NodeIndex> find_sorted(const std::vector<std::string>& ids, std::string_view id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids.begin());
}

bool sorted_contains(std::span<const NodeIndex> range, NodeIndex x) {
  return std::binary_search(range.begin(), range.end(), x);
}

std::size_t sorted_intersection_size(std::span<const NodeIndex> a, std::span<const NodeIndex> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

void build_csr(std::size_t n, const std::vector<std::pair<NodeIndex, NodeIndex>>& arcs,
               std::vector<std::size_t>& offsets, std::vector<NodeIndex>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& [u, v] : arcs) ++offsets[u + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  targets.resize(arcs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : arcs) targets[cursor[u]++] = v;
  for (std::size_t u = 0; u < n; ++u)
    std::sort(targets.begin() + offsets[u], targets.begin() + offsets[u + 1]);
}

}  // namespace

std::optional<NodeIndex> DirectedGraph::find(std::string_view id) const { return find_sorted(ids_, id); }

bool DirectedGraph::has_edge(NodeIndex u, NodeIndex v) const {
  return sorted_contains(out_neighbors(u), v);
}

DirectedBuild build_directed_graph(std::span<const EdgeRecord> records) {
  DirectedBuild result;
  result.records = records.size();

  std::vector<std::string> ids;
  ids.reserve(records.size() * 2);
  for (const auto& [src, dst] : records) {
    ids.push_back(src);
    ids.push_back(dst);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > std::numeric_limits<NodeIndex>::max())
    throw ArgumentError("too many distinct nodes for 32-bit node indices");

  std::vector<std::pair<NodeIndex, NodeIndex>> arcs;
  arcs.reserve(records.size());
  for (const auto& [src, dst] : records) {
    if (src == dst) {
      ++result.self_loops_dropped;
      continue;
    }
    arcs.emplace_back(*find_sorted(ids, src), *find_sorted(ids, dst));
  }
  std::sort(arcs.begin(), arcs.end());
  const auto before = arcs.size();
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  result.duplicates_dropped = before - arcs.size();

  // A node that only appears in self-loops is still a node of the graph.
  DirectedGraph& g = result.graph;
  g.ids_ = std::move(ids);
  build_csr(g.ids_.size(), arcs, g.out_offsets_, g.out_targets_);
  for (auto& a : arcs) std::swap(a.first, a.second);
  build_csr(g.ids_.size(), arcs, g.in_offsets_, g.in_sources_);
  return result;
}

// ---------------------------------------------------------------------------
// FriendGraph

FriendGraph FriendGraph::from_edges(std::vector<std::string> ids, const std::vector<WeightedEdge>& edges,
                                    bool weighted) {
  for (std::size_t i = 1; i < ids.size(); ++i)
    if (!(ids[i - 1] < ids[i])) throw ArgumentError("node identifiers must be unique and sorted");
  const std::size_t n = ids.size();

  std::vector<WeightedEdge> canon;
  canon.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw ArgumentError("edge endpoint out of range");
    if (e.u == e.v) throw ArgumentError("self-loop on node '" + ids[e.u] + "'");
    if (!(e.weight >= 0.0 && e.weight <= 1.0))
      throw ArgumentError("edge weight outside [0,1] on '" + ids[e.u] + "'-'" + ids[e.v] + "'");
    canon.push_back(e.u < e.v ? e : WeightedEdge{e.v, e.u, e.weight});
  }
  std::sort(canon.begin(), canon.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < canon.size(); ++i)
    if (canon[i].u == canon[i - 1].u && canon[i].v == canon[i - 1].v)
      throw ArgumentError("parallel edge '" + ids[canon[i].u] + "'-'" + ids[canon[i].v] + "'");

  FriendGraph g;
  g.ids_ = std::move(ids);
  g.weighted_ = weighted;
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : canon) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.targets_.resize(canon.size() * 2);
  g.weights_.resize(canon.size() * 2);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Canonical order fills each row in increasing neighbor order: row u receives
  // first its smaller neighbors (as the v side of earlier edges), then larger ones.
  std::vector<std::vector<std::pair<NodeIndex, double>>> lower(n);
  for (const auto& e : canon) lower[e.v].emplace_back(e.u, e.weight);
  for (NodeIndex u = 0; u < n; ++u) {
    for (const auto& [v, w] : lower[u]) {
      g.targets_[cursor[u]] = v;
      g.weights_[cursor[u]++] = w;
    }
  }
  for (const auto& e : canon) {
    g.targets_[cursor[e.u]] = e.v;
    g.weights_[cursor[e.u]++] = e.weight;
  }
  return g;
}

FriendGraph FriendGraph::from_id_edges(std::vector<std::string> nodes,
                                       const std::vector<std::tuple<std::string, std::string, double>>& edges,
                                       bool weighted) {
  for (const auto& [a, b, w] : edges) {
    nodes.push_back(a);
    nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<WeightedEdge> indexed;
  indexed.reserve(edges.size());
  for (const auto& [a, b, w] : edges)
    indexed.push_back({*find_sorted(nodes, a), *find_sorted(nodes, b), w});
  return from_edges(std::move(nodes), indexed, weighted);
}

std::optional<NodeIndex> FriendGraph::find(std::string_view id) const { return find_sorted(ids_, id); }

std::optional<double> FriendGraph::weight(NodeIndex u, NodeIndex v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return weights(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::vector<WeightedEdge> FriendGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count());
  for (NodeIndex u = 0; u < node_count(); ++u) {
    auto nb = neighbors(u);
    auto w = weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (nb[k] > u) out.push_back({u, nb[k], w[k]});
  }
  return out;
}

FriendGraph FriendGraph::induced(const std::vector<char>& keep) const {
  std::vector<NodeIndex> remap(node_count(), std::numeric_limits<NodeIndex>::max());
  std::vector<std::string> ids;
  for (NodeIndex u = 0; u < node_count(); ++u) {
    if (keep[u]) {
      remap[u] = static_cast<NodeIndex>(ids.size());
      ids.push_back(ids_[u]);
    }
  }
  std::vector<WeightedEdge> kept;
  for (const auto& e : edges())
    if (keep[e.u] && keep[e.v]) kept.push_back({remap[e.u], remap[e.v], e.weight});
  return from_edges(std::move(ids), kept, weighted_);
}

// ---------------------------------------------------------------------------
// Reduction pipeline

FriendGraph extract_reciprocal(const DirectedGraph& g) {
  std::vector<WeightedEdge> edges;
  for (NodeIndex u = 0; u < g.node_count(); ++u)
    for (NodeIndex v : g.out_neighbors(u))
      if (v > u && g.has_edge(v, u)) edges.push_back({u, v, 1.0});
  return FriendGraph::from_edges(g.ids(), edges, false);
}

FriendGraph filter_active_users(const FriendGraph& g, const ActivityMap& activity, long min_total) {
  if (min_total < 0) throw ArgumentError("min_total must be non-negative");
  std::vector<char> keep(g.node_count(), 0);
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    auto it = activity.counts.find(g.id(u));
    keep[u] = it != activity.counts.end() && it->second >= min_total;
  }
  return g.induced(keep);
}

JaccardConvention parse_jaccard_convention(std::string_view s) {
  if (s == "inclusive") return JaccardConvention::inclusive;
  if (s == "exclusive") return JaccardConvention::exclusive;
  throw ArgumentError("unknown jaccard convention '" + std::string(s) + "' (expected inclusive|exclusive)");
}

std::string_view to_string(JaccardConvention c) {
  return c == JaccardConvention::inclusive ? "inclusive" : "exclusive";
}

FriendGraph compute_jaccard_weights(const FriendGraph& g, JaccardConvention convention, unsigned workers) {
  FriendGraph out = g;
  out.weighted_ = true;
  const bool inclusive = convention == JaccardConvention::inclusive;
  // Each row is computed independently from the immutable input, so the result
  // is identical for any worker count.
  parallel_for(g.node_count(), workers, [&](std::size_t ui) {
    const auto u = static_cast<NodeIndex>(ui);
    auto nu = g.neighbors(u);
    for (std::size_t k = 0; k < nu.size(); ++k) {
      const NodeIndex v = nu[k];
      auto nv = g.neighbors(v);
      // u and v are adjacent, so neither common-neighbor scan can contain u or v.
      std::size_t common = sorted_intersection_size(nu, nv);
      std::size_t size_u = nu.size();
      std::size_t size_v = nv.size();
      if (inclusive) {
        common += 2;  // v is in C_u and u is in C_v
        ++size_u;
        ++size_v;
      }
      const std::size_t uni = size_u + size_v - common;
      out.weights_[g.offsets_[u] + k] = static_cast<double>(common) / static_cast<double>(uni);
    }
  });
  return out;
}

std::vector<NodeIndex> component_labels(const FriendGraph& g) {
  const auto unset = std::numeric_limits<NodeIndex>::max();
  std::vector<NodeIndex> label(g.node_count(), unset);
  NodeIndex next = 0;
  std::vector<NodeIndex> stack;
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeIndex u = stack.back();
      stack.pop_back();
      for (NodeIndex v : g.neighbors(u)) {
        if (label[v] == unset) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

FriendGraph largest_connected_component(const FriendGraph& g) {
  if (g.empty()) return g;
  auto label = component_labels(g);
  const NodeIndex ncomp = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::size_t> size(ncomp, 0);
  for (auto l : label) ++size[l];
  // Labels are assigned in order of smallest member, so the first maximum wins ties.
  const auto best = static_cast<NodeIndex>(std::max_element(size.begin(), size.end()) - size.begin());
  if (size[best] == g.node_count()) return g;
  std::vector<char> keep(g.node_count());
  for (std::size_t u = 0; u < keep.size(); ++u) keep[u] = label[u] == best;
  return g.induced(keep);
}

FriendGraph threshold_subgraph(const FriendGraph& g, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ArgumentError("epsilon must lie in [0,1]");
  std::vector<WeightedEdge> kept;
  std::vector<char> attached(g.node_count(), 0);
  for (const auto& e : g.edges()) {
    if (e.weight >= epsilon) {
      kept.push_back(e);
      attached[e.u] = attached[e.v] = 1;
    }
  }
  std::vector<NodeIndex> remap(g.node_count());
  std::vector<std::string> ids;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    if (attached[u]) {
      remap[u] = static_cast<NodeIndex>(ids.size());
      ids.push_back(g.id(u));
    }
  }
  for (auto& e : kept) e = {remap[e.u], remap[e.v], e.weight};
  return FriendGraph::from_edges(std::move(ids), kept, g.weighted());
}

// ---------------------------------------------------------------------------
// Statistics

DiameterMode parse_diameter_mode(std::string_view s) {
  if (s == "exact") return DiameterMode::exact;
  if (s == "double-sweep" || s == "double_sweep") return DiameterMode::double_sweep;
  if (s == "auto") return DiameterMode::automatic;
  throw ArgumentError("unknown diameter mode '" + std::string(s) + "' (expected exact|double-sweep|auto)");
}

std::string_view to_string(DiameterMode m) {
  switch (m) {
    case DiameterMode::exact:
      return "exact";
    case DiameterMode::double_sweep:
      return "double_sweep";
    case DiameterMode::automatic:
      break;
  }
  return "auto";
}

double average_degree(std::size_t node_count, std::size_t edge_count) {
  if (node_count == 0) return 0.0;
  return 2.0 * static_cast<double>(edge_count) / static_cast<double>(node_count);
}

double density(std::size_t node_count, std::size_t edge_count) {
  if (node_count < 2) return 0.0;
  const double n = static_cast<double>(node_count);
  return 2.0 * static_cast<double>(edge_count) / (n * (n - 1.0));
}

std::vector<std::size_t> bfs_distances(const FriendGraph& g, NodeIndex source) {
  std::vector<std::size_t> dist(g.node_count(), kUnreached);
  std::vector<NodeIndex> frontier{source};
  std::vector<NodeIndex> next;
  dist[source] = 0;
  std::size_t level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (NodeIndex u : frontier) {
      for (NodeIndex v : g.neighbors(u)) {
        if (dist[v] == kUnreached) {
          dist[v] = level;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

namespace {

std::size_t eccentricity(const std::vector<std::size_t>& dist) {
  std::size_t ecc = 0;
  for (auto d : dist)
    if (d != kUnreached) ecc = std::max(ecc, d);
  return ecc;
}

}  // namespace

std::size_t exact_diameter(const FriendGraph& g, unsigned workers) {
  std::vector<std::size_t> ecc(g.node_count(), 0);
  parallel_for(g.node_count(), workers,
               [&](std::size_t u) { ecc[u] = eccentricity(bfs_distances(g, static_cast<NodeIndex>(u))); });
  return ecc.empty() ? 0 : *std::max_element(ecc.begin(), ecc.end());
}

std::size_t double_sweep_diameter(const FriendGraph& g) {
  if (g.empty()) return 0;
  NodeIndex start = 0;
  for (NodeIndex u = 1; u < g.node_count(); ++u)
    if (g.degree(u) > g.degree(start)) start = u;
  auto first = bfs_distances(g, start);
  NodeIndex far = start;
  for (NodeIndex u = 0; u < g.node_count(); ++u)
    if (first[u] != kUnreached && first[u] > first[far]) far = u;
  return eccentricity(bfs_distances(g, far));
}

std::vector<double> local_clustering(const FriendGraph& g, unsigned workers) {
  std::vector<double> cc(g.node_count(), 0.0);
  parallel_for(g.node_count(), workers, [&](std::size_t ui) {
    const auto u = static_cast<NodeIndex>(ui);
    auto nu = g.neighbors(u);
    const std::size_t k = nu.size();
    if (k < 2) return;
    std::size_t links = 0;  // each neighbor-neighbor link is seen from both ends
    for (NodeIndex v : nu) links += sorted_intersection_size(nu, g.neighbors(v));
    cc[ui] = static_cast<double>(links) / static_cast<double>(k * (k - 1));
  });
  return cc;
}

GraphStats graph_stats(const FriendGraph& g, const StatsOptions& options) {
  if (g.empty()) throw ComputeError("empty graph");
  GraphStats s;
  s.node_count = g.node_count();
  s.edge_count = g.edge_count();
  s.density = density(s.node_count, s.edge_count);
  s.average_degree = average_degree(s.node_count, s.edge_count);

  auto cc = local_clustering(g, options.workers);
  double sum = 0.0;
  for (double c : cc) sum += c;
  s.average_clustering = sum / static_cast<double>(cc.size());

  FriendGraph lcc = largest_connected_component(g);
  s.connected = lcc.node_count() == g.node_count();
  DiameterMode mode = options.diameter_mode;
  if (mode == DiameterMode::automatic)
    mode = lcc.node_count() <= options.exact_node_budget ? DiameterMode::exact : DiameterMode::double_sweep;
  s.diameter_mode = mode;
  if (mode == DiameterMode::exact) {
    s.diameter = exact_diameter(lcc, options.workers);
  } else {
    s.diameter = double_sweep_diameter(lcc);
    s.diameter_is_lower_bound = true;
  }
  return s;
}

std::vector<std::pair<std::size_t, std::size_t>> degree_distribution(const FriendGraph& g) {
  std::map<std::size_t, std::size_t> hist;
  for (NodeIndex u = 0; u < g.node_count(); ++u) ++hist[g.degree(u)];
  return {hist.begin(), hist.end()};
}

}  // namespace swbnet
