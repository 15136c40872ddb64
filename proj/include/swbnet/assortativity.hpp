#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "swbnet/correlation.hpp"
#include "swbnet/graph.hpp"
#include "swbnet/sentiment.hpp"

namespace swbnet {

// both: every undirected edge contributes (u,v) and (v,u).
// single: one row per edge, smaller identifier as source.
enum class Orientation { both, single };

Orientation parse_orientation(std::string_view s);
std::string_view to_string(Orientation o);

struct AssortativityResult : CorrelationResult {
  std::size_t excluded = 0;  // isolated nodes left out of the neighborhood sample
};

/// SWB per node in index order. Throws ComputeError naming the first node without a score.
std::vector<double> node_scores(const FriendGraph& g, const SwbScores& scores);

struct PairedSample {
  std::vector<double> x;
  std::vector<double> y;
  std::size_t excluded = 0;
};

// Sample vectors in the fixed order (node index, then neighbor index).
PairedSample pairwise_sample(const FriendGraph& g, std::span<const double> node_swb, Orientation orientation);
PairedSample neighborhood_sample(const FriendGraph& g, std::span<const double> node_swb);

/// Pearson correlation of endpoint SWB values across edges. Needs >= 2 edges.
AssortativityResult pairwise_assortativity(const FriendGraph& g, const SwbScores& scores,
                                           Orientation orientation = Orientation::both);

/// Pearson correlation of node SWB against the mean SWB of its neighbors.
AssortativityResult neighborhood_assortativity(const FriendGraph& g, const SwbScores& scores);

struct SweepRow {
  double epsilon = 0.0;
  std::size_t n_edges = 0;  // pairwise sample size (edge orientations)
  std::size_t n_nodes = 0;  // neighborhood sample size
  std::optional<CorrelationResult> pairwise;
  std::optional<CorrelationResult> neighborhood;
  std::vector<std::string> flags;  // not_significant, pairwise_undefined, neighborhood_undefined
};

struct AssortativityReport {
  std::vector<SweepRow> rows;
  double min_p = 0.001;
  Orientation orientation = Orientation::both;
};

/// 0.0, 0.1, ..., 0.9
std::vector<double> default_epsilons();

/// Throws ArgumentError unless the list is non-empty, strictly increasing and inside [0,1].
void validate_epsilons(std::span<const double> epsilons);

/// One row per epsilon over threshold_subgraph(g, epsilon). Per-row failures become
/// flags; a row is `not_significant` unless both p-values are below min_p.
AssortativityReport threshold_sweep(const FriendGraph& g, const SwbScores& scores, std::span<const double> epsilons,
                                    double min_p = 0.001, Orientation orientation = Orientation::both,
                                    unsigned workers = 1);

void write_report_csv(std::ostream& out, const AssortativityReport& report);
nlohmann::ordered_json report_to_json(const AssortativityReport& report);

struct NullBand {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t replicates = 0;  // non-degenerate replicates used
};

/// Distribution of pairwise r when node scores are redrawn with replacement
/// from the graph's own scores, which removes any tie structure. Returns the
/// central `level` interval.
NullBand bootstrap_null_band(const FriendGraph& g, const SwbScores& scores, std::size_t replicates, double level,
                             std::uint64_t seed, Orientation orientation = Orientation::both);

}  // namespace swbnet
