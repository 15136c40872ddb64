#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swbnet/assortativity.hpp"
#include "swbnet/graph.hpp"
#include "swbnet/sentiment.hpp"

namespace swbnet {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(std::string_view s);

struct PipelineConfig {
  std::filesystem::path edges;
  std::filesystem::path tweets;
  std::filesystem::path lexicon;
  std::filesystem::path out_dir = "out";
  long min_tweets = 180;
  int window_days = 180;
  JaccardConvention convention = JaccardConvention::inclusive;
  CountMode count_mode = CountMode::tweet;
  std::vector<double> epsilons = default_epsilons();
  double min_p = 0.001;
  Orientation orientation = Orientation::both;
  DiameterMode diameter_mode = DiameterMode::automatic;
  std::size_t exact_node_budget = 200'000;
  double bin_width = 0.05;
  OutputFormat format = OutputFormat::csv;
  unsigned workers = 1;
  std::uint64_t seed = 42;  // recorded only; the pipeline itself draws no random numbers
};

struct ReductionCounts {
  std::size_t edge_records = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t follower_nodes = 0;
  std::size_t follower_edges = 0;
  std::size_t reciprocal_edges = 0;
  std::size_t active_nodes = 0;
  std::size_t active_edges = 0;
  std::size_t component_nodes = 0;
  std::size_t component_edges = 0;
};

struct FriendGraphBuild {
  FriendGraph graph;
  ReductionCounts counts;
};

/// build -> reciprocal -> activity filter (skipped when activity is null) -> Jaccard -> largest component.
FriendGraphBuild build_friend_graph(std::span<const EdgeRecord> records, const ActivityMap* activity,
                                    long min_tweets, JaccardConvention convention, unsigned workers);

/// Output files by name, in the order they are written.
using FileBundle = std::vector<std::pair<std::string, std::string>>;

struct PipelineResult {
  ReductionCounts counts;
  FriendGraph graph;
  GraphStats stats;
  SwbScores scores;
  AssortativityReport report;
  FileBundle files;  // everything except the manifest
  nlohmann::ordered_json manifest;
};

/// Runs every stage in memory. Errors carry the failing stage's name.
PipelineResult compute_pipeline(const PipelineConfig& config);

/// compute_pipeline, then writes the bundle and manifest.json into config.out_dir.
/// Nothing is written when a stage fails.
PipelineResult run_pipeline(const PipelineConfig& config);

/// Writes files into dir (created if needed).
void write_bundle(const std::filesystem::path& dir, const FileBundle& files);

nlohmann::ordered_json config_to_json(const PipelineConfig& config);

}  // namespace swbnet
