#include "swbnet/assortativity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "swbnet/error.hpp"
#include "swbnet/format.hpp"
#include "swbnet/parallel.hpp"
#include "swbnet/random.hpp"

namespace swbnet {

Orientation parse_orientation(std::string_view s) {
  if (s == "both" || s == "both-orientations") return Orientation::both;
  if (s == "single" || s == "single-orientation") return Orientation::single;
  throw ArgumentError("unknown orientation '" + std::string(s) + "' (expected both|single)");
}

std::string_view to_string(Orientation o) { return o == Orientation::both ? "both" : "single"; }

std::vector<double> node_scores(const FriendGraph& g, const SwbScores& scores) {
  std::vector<double> out(g.node_count());
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    auto it = scores.find(g.id(u));
    if (it == scores.end()) throw ComputeError("no SWB score for user '" + g.id(u) + "'");
    out[u] = it->second.swb;
  }
  return out;
}

PairedSample pairwise_sample(const FriendGraph& g, std::span<const double> node_swb, Orientation orientation) {
  PairedSample s;
  const std::size_t rows = orientation == Orientation::both ? 2 * g.edge_count() : g.edge_count();
  s.x.reserve(rows);
  s.y.reserve(rows);
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    for (NodeIndex v : g.neighbors(u)) {
      if (orientation == Orientation::single && v < u) continue;
      s.x.push_back(node_swb[u]);
      s.y.push_back(node_swb[v]);
    }
  }
  return s;
}

PairedSample neighborhood_sample(const FriendGraph& g, std::span<const double> node_swb) {
  PairedSample s;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    auto nb = g.neighbors(u);
    if (nb.empty()) {
      ++s.excluded;
      continue;
    }
    double sum = 0.0;
    for (NodeIndex v : nb) sum += node_swb[v];
    s.x.push_back(node_swb[u]);
    s.y.push_back(sum / static_cast<double>(nb.size()));
  }
  return s;
}

AssortativityResult pairwise_assortativity(const FriendGraph& g, const SwbScores& scores, Orientation orientation) {
  if (g.edge_count() < 2) throw ComputeError("pairwise assortativity needs at least 2 edges");
  auto swb = node_scores(g, scores);
  auto sample = pairwise_sample(g, swb, orientation);
  AssortativityResult res;
  static_cast<CorrelationResult&>(res) = pearson(sample.x, sample.y);
  return res;
}

AssortativityResult neighborhood_assortativity(const FriendGraph& g, const SwbScores& scores) {
  auto swb = node_scores(g, scores);
  auto sample = neighborhood_sample(g, swb);
  if (sample.x.empty()) throw ComputeError("every node is isolated");
  if (sample.x.size() < 2) throw ComputeError("neighborhood assortativity needs at least 2 connected nodes");
  AssortativityResult res;
  static_cast<CorrelationResult&>(res) = pearson(sample.x, sample.y);
  res.excluded = sample.excluded;
  return res;
}

std::vector<double> default_epsilons() {
  return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

void validate_epsilons(std::span<const double> epsilons) {
  if (epsilons.empty()) throw ArgumentError("epsilon list is empty");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] >= 0.0 && epsilons[i] <= 1.0))
      throw ArgumentError("epsilon " + format_double(epsilons[i]) + " outside [0,1]");
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) throw ArgumentError("epsilons must be strictly increasing");
  }
}

AssortativityReport threshold_sweep(const FriendGraph& g, const SwbScores& scores, std::span<const double> epsilons,
                                    double min_p, Orientation orientation, unsigned workers) {
  validate_epsilons(epsilons);
  if (!(min_p > 0.0 && min_p <= 1.0)) throw ArgumentError("significance cutoff must lie in (0,1]");
  // Resolve every score up front so a missing one aborts instead of flagging each row.
  node_scores(g, scores);

  AssortativityReport report;
  report.min_p = min_p;
  report.orientation = orientation;
  report.rows.resize(epsilons.size());
  parallel_for(epsilons.size(), workers, [&](std::size_t i) {
    SweepRow& row = report.rows[i];
    row.epsilon = epsilons[i];
    FriendGraph sub = threshold_subgraph(g, epsilons[i]);
    row.n_edges = orientation == Orientation::both ? 2 * sub.edge_count() : sub.edge_count();
    row.n_nodes = sub.node_count();
    bool significant = true;
    try {
      row.pairwise = pairwise_assortativity(sub, scores, orientation);
      significant &= row.pairwise->p_value && *row.pairwise->p_value < min_p;
    } catch (const ComputeError&) {
      row.flags.emplace_back("pairwise_undefined");
      significant = false;
    }
    try {
      row.neighborhood = neighborhood_assortativity(sub, scores);
      significant &= row.neighborhood->p_value && *row.neighborhood->p_value < min_p;
    } catch (const ComputeError&) {
      row.flags.emplace_back("neighborhood_undefined");
      significant = false;
    }
    if (!significant) row.flags.insert(row.flags.begin(), "not_significant");
  });
  return report;
}

namespace {

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out.push_back(';');
    out += f;
  }
  return out;
}

}  // namespace

void write_report_csv(std::ostream& out, const AssortativityReport& report) {
  out << "epsilon,pairwise_r,pairwise_p,n_edges,neighborhood_r,neighborhood_p,n_nodes,flags\n";
  auto r = [](const std::optional<CorrelationResult>& c) { return c ? format_double(c->r) : std::string(); };
  auto p = [](const std::optional<CorrelationResult>& c) {
    return c && c->p_value ? format_double(*c->p_value) : std::string();
  };
  for (const auto& row : report.rows) {
    out << format_double(row.epsilon) << ',' << r(row.pairwise) << ',' << p(row.pairwise) << ',' << row.n_edges
        << ',' << r(row.neighborhood) << ',' << p(row.neighborhood) << ',' << row.n_nodes << ','
        << join_flags(row.flags) << '\n';
  }
}

nlohmann::ordered_json report_to_json(const AssortativityReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  auto r = [](const std::optional<CorrelationResult>& c) -> nlohmann::ordered_json {
    return c ? nlohmann::ordered_json(c->r) : nullptr;
  };
  auto p = [](const std::optional<CorrelationResult>& c) -> nlohmann::ordered_json {
    return c && c->p_value ? nlohmann::ordered_json(*c->p_value) : nullptr;
  };
  for (const auto& row : report.rows) {
    nlohmann::ordered_json j;
    j["epsilon"] = row.epsilon;
    j["pairwise_r"] = r(row.pairwise);
    j["pairwise_p"] = p(row.pairwise);
    j["n_edges"] = row.n_edges;
    j["neighborhood_r"] = r(row.neighborhood);
    j["neighborhood_p"] = p(row.neighborhood);
    j["n_nodes"] = row.n_nodes;
    j["flags"] = row.flags;
    rows.push_back(std::move(j));
  }
  nlohmann::ordered_json j;
  j["min_p"] = report.min_p;
  j["orientation"] = std::string(to_string(report.orientation));
  j["rows"] = std::move(rows);
  return j;
}

NullBand bootstrap_null_band(const FriendGraph& g, const SwbScores& scores, std::size_t replicates, double level,
                             std::uint64_t seed, Orientation orientation) {
  if (replicates < 10) throw ArgumentError("bootstrap needs at least 10 replicates");
  if (!(level > 0.0 && level < 1.0)) throw ArgumentError("band level must lie in (0,1)");
  if (g.edge_count() < 2) throw ComputeError("pairwise assortativity needs at least 2 edges");
  const auto pool = node_scores(g, scores);
  Rng rng(seed);
  std::vector<double> draw(pool.size());
  std::vector<double> rs;
  rs.reserve(replicates);
  for (std::size_t b = 0; b < replicates; ++b) {
    for (auto& d : draw) d = pool[rng.below(pool.size())];
    auto sample = pairwise_sample(g, draw, orientation);
    try {
      rs.push_back(pearson(sample.x, sample.y).r);
    } catch (const ComputeError&) {
      // constant redraw; skip
    }
  }
  if (rs.size() < 10) throw ComputeError("bootstrap produced too few non-degenerate replicates");
  std::sort(rs.begin(), rs.end());
  const double tail = (1.0 - level) / 2.0;
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(rs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, rs.size() - 1);
    return rs[lo] + (pos - static_cast<double>(lo)) * (rs[hi] - rs[lo]);
  };
  return {at(tail), at(1.0 - tail), rs.size()};
}

}  // namespace swbnet
