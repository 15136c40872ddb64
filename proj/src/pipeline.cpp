#include "swbnet/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <openssl/opensslv.h>

#include "swbnet/digest.hpp"
#include "swbnet/error.hpp"
#include "swbnet/format.hpp"
#include "swbnet/graph_io.hpp"
#include "swbnet/random.hpp"
#include "swbnet/synth.hpp"

namespace swbnet {

namespace {

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    const std::string msg = std::string("[") + name + "] " + e.what();
    switch (e.kind()) {
      case ErrorKind::config:
        throw ArgumentError(msg);
      case ErrorKind::ingestion:
        throw IngestError(msg);
      case ErrorKind::computation:
        break;
    }
    throw ComputeError(msg);
  }
}

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

nlohmann::ordered_json counts_to_json(const ReductionCounts& c) {
  nlohmann::ordered_json j;
  j["edge_records"] = c.edge_records;
  j["self_loops_dropped"] = c.self_loops_dropped;
  j["duplicates_dropped"] = c.duplicates_dropped;
  j["follower_nodes"] = c.follower_nodes;
  j["follower_edges"] = c.follower_edges;
  j["reciprocal_edges"] = c.reciprocal_edges;
  j["active_nodes"] = c.active_nodes;
  j["active_edges"] = c.active_edges;
  j["component_nodes"] = c.component_nodes;
  j["component_edges"] = c.component_edges;
  return j;
}

}  // namespace

OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ArgumentError("unknown format '" + std::string(s) + "' (expected csv|json)");
}

FriendGraphBuild build_friend_graph(std::span<const EdgeRecord> records, const ActivityMap* activity,
                                    long min_tweets, JaccardConvention convention, unsigned workers) {
  FriendGraphBuild out;
  auto& c = out.counts;
  auto directed = stage("build-graph", [&] { return build_directed_graph(records); });
  c.edge_records = directed.records;
  c.self_loops_dropped = directed.self_loops_dropped;
  c.duplicates_dropped = directed.duplicates_dropped;
  c.follower_nodes = directed.graph.node_count();
  c.follower_edges = directed.graph.edge_count();

  FriendGraph g = stage("reciprocal", [&] { return extract_reciprocal(directed.graph); });
  c.reciprocal_edges = g.edge_count();
  if (activity) g = stage("activity-filter", [&] { return filter_active_users(g, *activity, min_tweets); });
  c.active_nodes = g.node_count();
  c.active_edges = g.edge_count();
  g = stage("jaccard", [&] { return compute_jaccard_weights(g, convention, workers); });
  g = stage("largest-component", [&] { return largest_connected_component(g); });
  c.component_nodes = g.node_count();
  c.component_edges = g.edge_count();
  out.graph = std::move(g);
  return out;
}

nlohmann::ordered_json config_to_json(const PipelineConfig& config) {
  nlohmann::ordered_json j;
  j["edges"] = config.edges.string();
  j["tweets"] = config.tweets.string();
  j["lexicon"] = config.lexicon.string();
  j["out_dir"] = config.out_dir.string();
  j["min_tweets"] = config.min_tweets;
  j["window_days"] = config.window_days;
  j["jaccard_convention"] = std::string(to_string(config.convention));
  j["count_mode"] = std::string(to_string(config.count_mode));
  j["epsilons"] = config.epsilons;
  j["min_p"] = config.min_p;
  j["orientation"] = std::string(to_string(config.orientation));
  j["diameter"] = std::string(to_string(config.diameter_mode));
  j["exact_node_budget"] = config.exact_node_budget;
  j["bin_width"] = config.bin_width;
  j["format"] = config.format == OutputFormat::csv ? "csv" : "json";
  j["workers"] = config.workers;
  j["seed"] = config.seed;
  return j;
}

PipelineResult compute_pipeline(const PipelineConfig& config) {
  stage("config", [&] {
    validate_epsilons(config.epsilons);
    if (config.min_tweets < 0) throw ArgumentError("--min-tweets must be non-negative");
    if (config.window_days <= 0) throw ArgumentError("window must be positive");
    if (!(config.bin_width > 0.0)) throw ArgumentError("bin width must be positive");
    for (const auto* p : {&config.edges, &config.tweets, &config.lexicon})
      if (!std::filesystem::exists(*p)) throw ArgumentError("input '" + p->string() + "' does not exist");
    return 0;
  });
  const unsigned workers = std::max(1u, config.workers);

  auto records = stage("ingest-edges", [&] {
    auto r = load_edge_records(config.edges);
    if (r.empty()) throw IngestError(config.edges.string() + ": edge list contains no edges");
    return r;
  });
  auto tweets = stage("ingest-tweets", [&] {
    auto t = load_tweets(config.tweets);
    if (t.empty()) throw IngestError(config.tweets.string() + ": no tweets");
    return t;
  });
  auto lexicon = stage("load-lexicon", [&] { return Lexicon::load(config.lexicon); });
  auto activity = activity_from_tweets(tweets, config.window_days);

  PipelineResult res;
  auto built = build_friend_graph(records, &activity, config.min_tweets, config.convention, workers);
  res.counts = built.counts;
  res.graph = std::move(built.graph);
  if (res.graph.empty()) throw ComputeError("[largest-component] no users left after filtering");

  res.scores = stage("score", [&] {
    std::vector<TweetRecord> kept;
    for (auto& t : tweets)
      if (res.graph.find(t.user_id)) kept.push_back(std::move(t));
    return score_users(kept, lexicon, config.count_mode, workers);
  });
  auto dist = stage("distribution", [&] { return swb_distribution(res.scores, config.bin_width, false); });
  auto dist_nonzero = stage("distribution", [&] {
    try {
      return std::optional<Histogram>(swb_distribution(res.scores, config.bin_width, true));
    } catch (const ComputeError&) {
      return std::optional<Histogram>();
    }
  });
  std::vector<double> swb_values, emotionality;
  for (const auto& [id, s] : res.scores) {
    swb_values.push_back(s.swb);
    emotionality.push_back(s.emotionality());
  }
  auto emo_hist = stage("distribution", [&] { return histogram(emotionality, 0.0, 1.0, config.bin_width); });

  res.stats = stage("stats", [&] {
    StatsOptions opt;
    opt.diameter_mode = config.diameter_mode;
    opt.exact_node_budget = config.exact_node_budget;
    opt.workers = workers;
    return graph_stats(res.graph, opt);
  });
  res.report = stage("sweep", [&] {
    return threshold_sweep(res.graph, res.scores, config.epsilons, config.min_p, config.orientation, workers);
  });

  std::vector<double> weights;
  for (const auto& e : res.graph.edges()) weights.push_back(e.weight);

  auto& files = res.files;
  files.emplace_back("friend_graph.tsv", render([&](std::ostream& os) { write_friend_graph(os, res.graph); }));
  files.emplace_back("graph_stats.json", stats_to_json(res.stats).dump(2) + "\n");
  files.emplace_back("scores.csv", render([&](std::ostream& os) { write_scores_csv(os, res.scores); }));
  files.emplace_back("swb_histogram.csv", render([&](std::ostream& os) { write_histogram_csv(os, dist); }));
  if (dist_nonzero)
    files.emplace_back("swb_histogram_nonzero.csv",
                       render([&](std::ostream& os) { write_histogram_csv(os, *dist_nonzero); }));
  files.emplace_back("emotionality_histogram.csv",
                     render([&](std::ostream& os) { write_histogram_csv(os, emo_hist); }));
  files.emplace_back("degree_distribution.csv", render([&](std::ostream& os) {
                       os << "degree,count\n";
                       for (auto [d, n] : degree_distribution(res.graph)) os << d << ',' << n << '\n';
                     }));
  if (!weights.empty())
    files.emplace_back("weight_histogram.csv", render([&](std::ostream& os) {
                         write_histogram_csv(os, histogram(weights, 0.0, 1.0, config.bin_width));
                       }));
  if (config.format == OutputFormat::csv) {
    files.emplace_back("assortativity.csv", render([&](std::ostream& os) { write_report_csv(os, res.report); }));
  } else {
    files.emplace_back("assortativity.json", report_to_json(res.report).dump(2) + "\n");
  }

  auto& m = res.manifest;
  m["tool"] = "swbnet";
  m["version"] = kVersion;
  m["created_at"] = format_utc_timestamp(std::chrono::duration_cast<std::chrono::seconds>(
                                             std::chrono::system_clock::now().time_since_epoch())
                                             .count());
  m["config"] = config_to_json(config);
  m["rng"] = Rng::kAlgorithm;
  nlohmann::ordered_json libs;
  libs["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                          std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                          std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  libs["openssl"] = OPENSSL_VERSION_TEXT;
  m["libraries"] = libs;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const auto* p : {&config.edges, &config.tweets, &config.lexicon})
    inputs.push_back({{"path", p->string()}, {"sha256", sha256_file(*p)}});
  m["inputs"] = inputs;
  m["lexicon"] = {{"positive", lexicon.positive_count()},
                  {"negative", lexicon.negative_count()},
                  {"warnings", lexicon.warnings()}};
  m["reduction"] = counts_to_json(res.counts);
  std::size_t zero_swb = 0, no_content = 0;
  for (const auto& [id, s] : res.scores) {
    zero_swb += s.swb == 0.0;
    no_content += s.no_emotional_content;
  }
  m["swb_summary"] = {{"users", res.scores.size()},
                      {"zero_swb", zero_swb},
                      {"no_emotional_content", no_content},
                      {"median", empirical_quantile(swb_values, 0.5)},
                      {"p95", empirical_quantile(swb_values, 0.95)}};
  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  for (const auto& [name, content] : files) outputs.push_back({{"file", name}, {"sha256", sha256_hex(content)}});
  m["outputs"] = outputs;
  return res;
}

void write_bundle(const std::filesystem::path& dir, const FileBundle& files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ArgumentError("cannot create output directory '" + dir.string() + "': " + ec.message());
  for (const auto& [name, content] : files) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw ComputeError("failed writing '" + (dir / name).string() + "'");
  }
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  auto res = compute_pipeline(config);
  FileBundle all = res.files;
  all.emplace_back("manifest.json", res.manifest.dump(2) + "\n");
  stage("write", [&] {
    write_bundle(config.out_dir, all);
    return 0;
  });
  return res;
}

}  // namespace swbnet
