// swbnet command-line driver. Every stage can run alone on a previous stage's
// files, or `run` executes the whole chain.

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "swbnet/assortativity.hpp"
#include "swbnet/error.hpp"
#include "swbnet/format.hpp"
#include "swbnet/graph_io.hpp"
#include "swbnet/parallel.hpp"
#include "swbnet/pipeline.hpp"
#include "swbnet/random.hpp"
#include "swbnet/synth.hpp"

namespace {

using namespace swbnet;

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (auto field : split(text, ',')) {
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    double v = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size())
      throw ArgumentError(std::string("bad ") + what + " value '" + std::string(field) + "'");
    out.push_back(v);
  }
  return out;
}

MixtureMode parse_mode(const std::string& text) {
  auto v = parse_double_list(text, "mixture mode");
  if (v.size() != 3) throw ArgumentError("mixture mode must be 'mean,sd,weight'");
  return {v[0], v[1], v[2]};
}

void emit(const std::string& out_dir, const std::string& name, const std::string& content) {
  if (out_dir.empty()) {
    std::cout << content;
  } else {
    write_bundle(out_dir, {{name, content}});
  }
}

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

struct Options {
  std::string edges, tweets, lexicon, graph, scores, out;
  long min_tweets = 180;
  int window_days = 180;
  std::string convention = "inclusive";
  std::string count_mode = "tweet";
  std::string epsilons = "0.0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string diameter = "auto";
  std::size_t exact_budget = 200'000;
  std::string format = "csv";
  std::string orientation = "both";
  double min_p = 0.001;
  double bin_width = 0.05;
  unsigned workers = default_workers();
  std::uint64_t seed = 42;
  // synth
  std::size_t n = 2000;
  double homophily = 20.0;
  double mean_degree = 20.0;
  std::string mode1 = "0.0,0.05,0.5";
  std::string mode2 = "0.3,0.05,0.5";
  bool raw = false;
};

int cmd_build_graph(const Options& o) {
  auto records = load_edge_records(o.edges);
  std::optional<ActivityMap> activity;
  if (!o.tweets.empty()) activity = activity_from_tweets(load_tweets(o.tweets), o.window_days);
  auto built = build_friend_graph(records, activity ? &*activity : nullptr, o.min_tweets,
                                  parse_jaccard_convention(o.convention), o.workers);
  const auto& c = built.counts;
  std::cerr << "records " << c.edge_records << ", self-loops dropped " << c.self_loops_dropped
            << ", duplicates dropped " << c.duplicates_dropped << ", reciprocal edges " << c.reciprocal_edges
            << ", component " << c.component_nodes << " nodes / " << c.component_edges << " edges\n";
  emit(o.out, "friend_graph.tsv", render([&](std::ostream& os) { write_friend_graph(os, built.graph); }));
  return 0;
}

int cmd_score(const Options& o) {
  auto lex = Lexicon::load(o.lexicon);
  for (const auto& w : lex.warnings()) std::cerr << "warning: " << w << '\n';
  auto tweets = load_tweets(o.tweets);
  auto scores = score_users(tweets, lex, parse_count_mode(o.count_mode), o.workers);
  if (scores.empty()) throw IngestError("no tweets");
  if (o.out.empty()) {
    write_scores_csv(std::cout, scores);
    return 0;
  }
  std::vector<double> emo;
  for (const auto& [id, s] : scores) emo.push_back(s.emotionality());
  FileBundle files;
  files.emplace_back("scores.csv", render([&](std::ostream& os) { write_scores_csv(os, scores); }));
  files.emplace_back("swb_histogram.csv", render([&](std::ostream& os) {
                       write_histogram_csv(os, swb_distribution(scores, o.bin_width));
                     }));
  files.emplace_back("emotionality_histogram.csv", render([&](std::ostream& os) {
                       write_histogram_csv(os, histogram(emo, 0.0, 1.0, o.bin_width));
                     }));
  write_bundle(o.out, files);
  return 0;
}

int cmd_stats(const Options& o) {
  auto g = load_friend_graph(o.graph);
  StatsOptions opt;
  opt.diameter_mode = parse_diameter_mode(o.diameter);
  opt.exact_node_budget = o.exact_budget;
  opt.workers = o.workers;
  emit(o.out, "graph_stats.json", stats_to_json(graph_stats(g, opt)).dump(2) + "\n");
  return 0;
}

int cmd_assort(const Options& o) {
  auto g = load_friend_graph(o.graph);
  auto scores = load_scores_csv(o.scores);
  const auto orientation = parse_orientation(o.orientation);
  auto pw = pairwise_assortativity(g, scores, orientation);
  auto nb = neighborhood_assortativity(g, scores);
  auto p = [](const CorrelationResult& c) { return c.p_value ? format_double(*c.p_value) : std::string(); };
  std::string content;
  if (parse_output_format(o.format) == OutputFormat::csv) {
    content = "measure,r,p,n,excluded\npairwise," + format_double(pw.r) + "," + p(pw) + "," + std::to_string(pw.n) +
              ",0\nneighborhood," + format_double(nb.r) + "," + p(nb) + "," + std::to_string(nb.n) + "," +
              std::to_string(nb.excluded) + "\n";
  } else {
    auto one = [](const AssortativityResult& c) {
      nlohmann::ordered_json j;
      j["r"] = c.r;
      j["p"] = c.p_value ? nlohmann::ordered_json(*c.p_value) : nullptr;
      j["n"] = c.n;
      j["excluded"] = c.excluded;
      return j;
    };
    nlohmann::ordered_json j;
    j["orientation"] = std::string(to_string(orientation));
    j["pairwise"] = one(pw);
    j["neighborhood"] = one(nb);
    content = j.dump(2) + "\n";
  }
  emit(o.out, parse_output_format(o.format) == OutputFormat::csv ? "assortativity.csv" : "assortativity.json",
       content);
  return 0;
}

int cmd_sweep(const Options& o) {
  auto g = load_friend_graph(o.graph);
  auto scores = load_scores_csv(o.scores);
  auto eps = parse_double_list(o.epsilons, "epsilon");
  auto report = threshold_sweep(g, scores, eps, o.min_p, parse_orientation(o.orientation), o.workers);
  if (parse_output_format(o.format) == OutputFormat::csv) {
    emit(o.out, "assortativity.csv", render([&](std::ostream& os) { write_report_csv(os, report); }));
  } else {
    emit(o.out, "assortativity.json", report_to_json(report).dump(2) + "\n");
  }
  return 0;
}

int cmd_synth(const Options& o) {
  if (o.out.empty()) throw ArgumentError("synth needs --out");
  BimodalSpec bs;
  bs.n = o.n;
  bs.mode1 = parse_mode(o.mode1);
  bs.mode2 = parse_mode(o.mode2);
  bs.seed = o.seed;
  HomophilySpec hs;
  hs.h = o.homophily;
  hs.mean_degree = o.mean_degree;
  hs.seed = o.seed + 1;
  hs.convention = parse_jaccard_convention(o.convention);
  auto scores = generate_bimodal_swb(bs);
  auto graph = generate_homophilous_graph(scores, hs);

  nlohmann::ordered_json meta;
  meta["rng"] = Rng::kAlgorithm;
  meta["seed"] = o.seed;
  meta["n"] = bs.n;
  meta["mode1"] = {bs.mode1.mean, bs.mode1.sd, bs.mode1.weight};
  meta["mode2"] = {bs.mode2.mean, bs.mode2.sd, bs.mode2.weight};
  meta["homophily"] = hs.h;
  meta["mean_degree"] = hs.mean_degree;
  meta["graph_seed"] = hs.seed;
  meta["jaccard_convention"] = std::string(to_string(hs.convention));

  FileBundle files;
  files.emplace_back("friend_graph.tsv", render([&](std::ostream& os) { write_friend_graph(os, graph); }));
  files.emplace_back("scores.csv", render([&](std::ostream& os) { write_scores_csv(os, scores); }));
  if (o.raw) {
    RawFixtureSpec rs;
    rs.seed = o.seed + 2;
    meta["raw_seed"] = rs.seed;
    auto fx = make_raw_fixture(scores, graph, rs);
    files.emplace_back("edges.tsv", render([&](std::ostream& os) {
                         os << "# follower arcs: source<TAB>target\n";
                         for (const auto& [a, b] : fx.arcs) os << a << '\t' << b << '\n';
                       }));
    files.emplace_back("tweets.jsonl", render([&](std::ostream& os) {
                         for (const auto& t : fx.tweets) {
                           nlohmann::ordered_json j;
                           j["user_id"] = t.user_id;
                           j["ts"] = format_utc_timestamp(t.timestamp);
                           j["type"] = t.type;
                           j["text"] = t.text;
                           os << j.dump() << '\n';
                         }
                       }));
    files.emplace_back("lexicon.tsv", fx.lexicon_tsv);
  }
  files.emplace_back("synth_manifest.json", meta.dump(2) + "\n");
  write_bundle(o.out, files);
  return 0;
}

int cmd_run(const Options& o) {
  PipelineConfig c;
  c.edges = o.edges;
  c.tweets = o.tweets;
  c.lexicon = o.lexicon;
  c.out_dir = o.out.empty() ? "out" : o.out;
  c.min_tweets = o.min_tweets;
  c.window_days = o.window_days;
  c.convention = parse_jaccard_convention(o.convention);
  c.count_mode = parse_count_mode(o.count_mode);
  c.epsilons = parse_double_list(o.epsilons, "epsilon");
  c.min_p = o.min_p;
  c.orientation = parse_orientation(o.orientation);
  c.diameter_mode = parse_diameter_mode(o.diameter);
  c.exact_node_budget = o.exact_budget;
  c.bin_width = o.bin_width;
  c.format = parse_output_format(o.format);
  c.workers = o.workers;
  c.seed = o.seed;
  auto res = run_pipeline(c);
  std::cerr << "wrote " << res.files.size() + 1 << " files to " << c.out_dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swbnet: friend-graph reduction, SWB scoring and assortativity"};
  app.require_subcommand(1);
  Options o;

  auto workers = [&](CLI::App* s) {
    s->add_option("--workers", o.workers, "Worker threads (output does not depend on this)")
        ->check(CLI::PositiveNumber);
  };
  auto out = [&](CLI::App* s, const char* help) { s->add_option("--out", o.out, help); };
  auto graph_inputs = [&](CLI::App* s) {
    s->add_option("--edges", o.edges, "Follower edge list (source<TAB>target)")->required();
    s->add_option("--tweets", o.tweets, "Tweets as JSON Lines");
    s->add_option("--min-tweets", o.min_tweets, "Minimum tweets per user over the window")->check(CLI::NonNegativeNumber);
    s->add_option("--jaccard-convention", o.convention, "inclusive|exclusive")
        ->check(CLI::IsMember({"inclusive", "exclusive"}));
  };
  auto report_opts = [&](CLI::App* s) {
    s->add_option("--epsilons", o.epsilons, "Comma-separated edge-weight thresholds");
    s->add_option("--min-p", o.min_p, "Significance cutoff for row markers");
    s->add_option("--orientation", o.orientation, "both|single")->check(CLI::IsMember({"both", "single"}));
    s->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto diameter = [&](CLI::App* s) {
    s->add_option("--diameter", o.diameter, "exact|double-sweep|auto")
        ->check(CLI::IsMember({"exact", "double-sweep", "auto"}));
    s->add_option("--exact-budget", o.exact_budget, "Largest component size for exact diameter in auto mode");
  };

  auto* build = app.add_subcommand("build-graph", "Reduce follower arcs to the weighted friend graph");
  graph_inputs(build);
  workers(build);
  out(build, "Output directory (stdout when omitted)");

  auto* score = app.add_subcommand("score", "Score users from tweets and a lexicon");
  score->add_option("--tweets", o.tweets, "Tweets as JSON Lines")->required();
  score->add_option("--lexicon", o.lexicon, "Lexicon TSV")->required();
  score->add_option("--count-mode", o.count_mode, "tweet|occurrence")->check(CLI::IsMember({"tweet", "occurrence"}));
  score->add_option("--bin-width", o.bin_width, "Histogram bin width");
  workers(score);
  out(score, "Output directory (scores CSV to stdout when omitted)");

  auto* stats = app.add_subcommand("stats", "Structural statistics of a friend graph");
  stats->add_option("--graph", o.graph, "Friend graph file")->required();
  diameter(stats);
  workers(stats);
  out(stats, "Output directory (stdout when omitted)");

  auto* assort = app.add_subcommand("assort", "Pairwise and neighborhood assortativity");
  assort->add_option("--graph", o.graph, "Friend graph file")->required();
  assort->add_option("--scores", o.scores, "Scores CSV")->required();
  assort->add_option("--orientation", o.orientation, "both|single")->check(CLI::IsMember({"both", "single"}));
  assort->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  out(assort, "Output directory (stdout when omitted)");

  auto* sweep = app.add_subcommand("sweep", "Assortativity across edge-weight thresholds");
  sweep->add_option("--graph", o.graph, "Friend graph file")->required();
  sweep->add_option("--scores", o.scores, "Scores CSV")->required();
  report_opts(sweep);
  workers(sweep);
  out(sweep, "Output directory (stdout when omitted)");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic population and homophilous graph");
  synth->add_option("--n", o.n, "Population size")->check(CLI::PositiveNumber);
  synth->add_option("--homophily", o.homophily, "Homophily strength h >= 0");
  synth->add_option("--mean-degree", o.mean_degree, "Target mean degree");
  synth->add_option("--mode1", o.mode1, "First mixture mode as mean,sd,weight");
  synth->add_option("--mode2", o.mode2, "Second mixture mode as mean,sd,weight");
  synth->add_option("--seed", o.seed, "Random seed");
  synth->add_option("--jaccard-convention", o.convention, "inclusive|exclusive")
      ->check(CLI::IsMember({"inclusive", "exclusive"}));
  synth->add_flag("--raw", o.raw, "Also write edges.tsv, tweets.jsonl and lexicon.tsv for `run`");
  synth->add_option("--out", o.out, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Full pipeline");
  graph_inputs(run);
  run->get_option("--tweets")->required();
  run->add_option("--lexicon", o.lexicon, "Lexicon TSV")->required();
  run->add_option("--count-mode", o.count_mode, "tweet|occurrence")->check(CLI::IsMember({"tweet", "occurrence"}));
  run->add_option("--bin-width", o.bin_width, "Histogram bin width");
  run->add_option("--seed", o.seed, "Seed recorded in the manifest");
  report_opts(run);
  diameter(run);
  workers(run);
  out(run, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorKind::config);
  }

  try {
    if (*build) return cmd_build_graph(o);
    if (*score) return cmd_score(o);
    if (*stats) return cmd_stats(o);
    if (*assort) return cmd_assort(o);
    if (*sweep) return cmd_sweep(o);
    if (*synth) return cmd_synth(o);
    if (*run) return cmd_run(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::computation);
  }
  return 0;
}
