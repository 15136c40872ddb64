// Python bindings. Scores cross the boundary as plain {user_id: swb} dicts
// unless the full per-user counts are asked for.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "swbnet/assortativity.hpp"
#include "swbnet/error.hpp"
#include "swbnet/graph.hpp"
#include "swbnet/graph_io.hpp"
#include "swbnet/pipeline.hpp"
#include "swbnet/sentiment.hpp"
#include "swbnet/synth.hpp"

namespace py = pybind11;
using namespace swbnet;

namespace {

SwbScores to_scores(const std::map<std::string, double>& m) {
  SwbScores s;
  for (const auto& [u, v] : m) s[u].swb = v;
  return s;
}

std::map<std::string, double> from_scores(const SwbScores& s) {
  std::map<std::string, double> m;
  for (const auto& [u, v] : s) m[u] = v.swb;
  return m;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict correlation_dict(const CorrelationResult& c) {
  py::dict d;
  d["r"] = c.r;
  d["p"] = c.p_value ? py::cast(*c.p_value) : py::none();
  d["n"] = c.n;
  return d;
}

py::dict stats_dict(const GraphStats& s) { return json_to_py(stats_to_json(s)).cast<py::dict>(); }

}  // namespace

PYBIND11_MODULE(_swbnet, m) {
  m.doc() = "Friend-graph reduction, SWB scoring and assortativity";
  m.attr("__version__") = kVersion;

  // Translators run newest first, so the subclasses are registered after the base.
  auto& base = py::register_exception<Error>(m, "SwbnetError");
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<IngestError>(m, "IngestError", base.ptr());
  py::register_exception<ComputeError>(m, "ComputeError", base.ptr());

  py::class_<FriendGraph>(m, "FriendGraph")
      .def(py::init([](const std::vector<std::tuple<std::string, std::string, double>>& edges,
                       std::vector<std::string> nodes, bool weighted) {
             return FriendGraph::from_id_edges(std::move(nodes), edges, weighted);
           }),
           py::arg("edges"), py::arg("nodes") = std::vector<std::string>{}, py::arg("weighted") = false)
      .def_property_readonly("node_count", &FriendGraph::node_count)
      .def_property_readonly("edge_count", &FriendGraph::edge_count)
      .def_property_readonly("weighted", &FriendGraph::weighted)
      .def_property_readonly("ids", &FriendGraph::ids)
      .def("edges",
           [](const FriendGraph& g) {
             std::vector<std::tuple<std::string, std::string, double>> out;
             for (const auto& e : g.edges()) out.emplace_back(g.id(e.u), g.id(e.v), e.weight);
             return out;
           })
      .def("weight",
           [](const FriendGraph& g, const std::string& a, const std::string& b) -> std::optional<double> {
             auto u = g.find(a), v = g.find(b);
             if (!u || !v) return std::nullopt;
             return g.weight(*u, *v);
           })
      .def("__len__", &FriendGraph::node_count)
      .def("__eq__", [](const FriendGraph& a, const FriendGraph& b) { return a == b; })
      .def("__repr__", [](const FriendGraph& g) {
        return "<FriendGraph nodes=" + std::to_string(g.node_count()) + " edges=" + std::to_string(g.edge_count()) +
               ">";
      });

  m.def("read_edge_records", &load_edge_records, py::arg("path"));
  m.def("load_friend_graph", &load_friend_graph, py::arg("path"));
  m.def(
      "build_friend_graph",
      [](const std::vector<EdgeRecord>& records, std::optional<std::map<std::string, long>> activity,
         long min_tweets, const std::string& convention, unsigned workers) {
        ActivityMap act;
        if (activity) act.counts.insert(activity->begin(), activity->end());
        auto built = build_friend_graph(records, activity ? &act : nullptr, min_tweets,
                                        parse_jaccard_convention(convention), workers);
        return built.graph;
      },
      py::arg("edges"), py::arg("activity") = py::none(), py::arg("min_tweets") = 180,
      py::arg("convention") = "inclusive", py::arg("workers") = 1);
  m.def(
      "extract_reciprocal",
      [](const std::vector<EdgeRecord>& records) { return extract_reciprocal(build_directed_graph(records).graph); },
      py::arg("edges"));
  m.def(
      "filter_active_users",
      [](const FriendGraph& g, const std::map<std::string, long>& counts, long min_total) {
        ActivityMap act;
        act.counts.insert(counts.begin(), counts.end());
        return filter_active_users(g, act, min_total);
      },
      py::arg("graph"), py::arg("activity"), py::arg("min_total") = 180);
  m.def(
      "compute_jaccard_weights",
      [](const FriendGraph& g, const std::string& convention, unsigned workers) {
        return compute_jaccard_weights(g, parse_jaccard_convention(convention), workers);
      },
      py::arg("graph"), py::arg("convention") = "inclusive", py::arg("workers") = 1);
  m.def("largest_connected_component", &largest_connected_component, py::arg("graph"));
  m.def("threshold_subgraph", &threshold_subgraph, py::arg("graph"), py::arg("epsilon"));
  m.def(
      "graph_stats",
      [](const FriendGraph& g, const std::string& diameter, std::size_t exact_node_budget, unsigned workers) {
        return stats_dict(graph_stats(g, {parse_diameter_mode(diameter), exact_node_budget, workers}));
      },
      py::arg("graph"), py::arg("diameter") = "auto", py::arg("exact_node_budget") = 200'000,
      py::arg("workers") = 1);

  py::class_<Lexicon>(m, "Lexicon")
      .def_static("load", &Lexicon::load, py::arg("path"))
      .def_static(
          "parse",
          [](const std::string& text) {
            std::istringstream in(text);
            return Lexicon::parse(in);
          },
          py::arg("text"))
      .def_property_readonly("positive_count", &Lexicon::positive_count)
      .def_property_readonly("negative_count", &Lexicon::negative_count)
      .def_property_readonly("warnings", &Lexicon::warnings)
      .def("__len__", &Lexicon::size);

  m.def("tokenize", &tokenize, py::arg("text"));
  m.def(
      "classify_tweet",
      [](const std::vector<std::string>& tokens, const Lexicon& lex, const std::string& mode) {
        auto h = classify_tweet(tokens, lex, parse_count_mode(mode));
        return std::make_pair(h.positive, h.negative);
      },
      py::arg("tokens"), py::arg("lexicon"), py::arg("mode") = "tweet");
  m.def("swb_value", &swb_value, py::arg("positive"), py::arg("negative"));

  py::class_<UserScore>(m, "UserScore")
      .def_readonly("swb", &UserScore::swb)
      .def_property_readonly("positive", [](const UserScore& s) { return s.counts.positive; })
      .def_property_readonly("negative", [](const UserScore& s) { return s.counts.negative; })
      .def_property_readonly("total", [](const UserScore& s) { return s.counts.total; })
      .def_property_readonly("emotionality", &UserScore::emotionality)
      .def_readonly("no_emotional_content", &UserScore::no_emotional_content)
      .def("__repr__", [](const UserScore& s) { return "<UserScore swb=" + std::to_string(s.swb) + ">"; });

  m.def(
      "score_users",
      [](const std::vector<std::tuple<std::string, std::string>>& tweets, const Lexicon& lex, const std::string& mode,
         unsigned workers) {
        std::vector<TweetRecord> recs;
        recs.reserve(tweets.size());
        for (const auto& [user, text] : tweets) recs.push_back({user, 0, "tweet", text});
        return score_users(recs, lex, parse_count_mode(mode), workers);
      },
      py::arg("tweets"), py::arg("lexicon"), py::arg("mode") = "tweet", py::arg("workers") = 1,
      "Scores (user_id, text) pairs; returns {user_id: UserScore}.");
  m.def(
      "load_tweets",
      [](const std::filesystem::path& path) {
        std::vector<std::tuple<std::string, std::string>> out;
        for (auto& t : load_tweets(path)) out.emplace_back(std::move(t.user_id), std::move(t.text));
        return out;
      },
      py::arg("path"));

  m.def(
      "pearson",
      [](const std::vector<double>& x, const std::vector<double>& y) { return correlation_dict(pearson(x, y)); },
      py::arg("x"), py::arg("y"));
  m.def(
      "pairwise_assortativity",
      [](const FriendGraph& g, const std::map<std::string, double>& scores, const std::string& orientation) {
        return correlation_dict(pairwise_assortativity(g, to_scores(scores), parse_orientation(orientation)));
      },
      py::arg("graph"), py::arg("scores"), py::arg("orientation") = "both");
  m.def(
      "neighborhood_assortativity",
      [](const FriendGraph& g, const std::map<std::string, double>& scores) {
        auto r = neighborhood_assortativity(g, to_scores(scores));
        auto d = correlation_dict(r);
        d["excluded"] = r.excluded;
        return d;
      },
      py::arg("graph"), py::arg("scores"));
  m.def(
      "threshold_sweep",
      [](const FriendGraph& g, const std::map<std::string, double>& scores, std::optional<std::vector<double>> eps,
         double min_p, const std::string& orientation, unsigned workers) {
        auto rep = threshold_sweep(g, to_scores(scores), eps ? *eps : default_epsilons(), min_p,
                                   parse_orientation(orientation), workers);
        return py::object(json_to_py(report_to_json(rep))["rows"]);
      },
      py::arg("graph"), py::arg("scores"), py::arg("epsilons") = py::none(), py::arg("min_p") = 0.001,
      py::arg("orientation") = "both", py::arg("workers") = 1);

  m.def(
      "generate_bimodal_swb",
      [](std::size_t n, std::tuple<double, double, double> mode1, std::tuple<double, double, double> mode2,
         std::uint64_t seed) {
        BimodalSpec spec;
        spec.n = n;
        spec.mode1 = {std::get<0>(mode1), std::get<1>(mode1), std::get<2>(mode1)};
        spec.mode2 = {std::get<0>(mode2), std::get<1>(mode2), std::get<2>(mode2)};
        spec.seed = seed;
        return from_scores(generate_bimodal_swb(spec));
      },
      py::arg("n") = 2000, py::arg("mode1") = std::make_tuple(0.0, 0.05, 0.5),
      py::arg("mode2") = std::make_tuple(0.3, 0.05, 0.5), py::arg("seed") = 1);
  m.def(
      "generate_homophilous_graph",
      [](const std::map<std::string, double>& scores, double h, double mean_degree, std::uint64_t seed,
         const std::string& convention) {
        HomophilySpec spec;
        spec.h = h;
        spec.mean_degree = mean_degree;
        spec.seed = seed;
        spec.convention = parse_jaccard_convention(convention);
        return generate_homophilous_graph(to_scores(scores), spec);
      },
      py::arg("scores"), py::arg("h") = 0.0, py::arg("mean_degree") = 20.0, py::arg("seed") = 1,
      py::arg("convention") = "inclusive");

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& edges, const std::filesystem::path& tweets,
         const std::filesystem::path& lexicon, std::optional<std::filesystem::path> out_dir, long min_tweets,
         const std::string& convention, const std::string& count_mode, std::optional<std::vector<double>> epsilons,
         const std::string& diameter, unsigned workers) {
        PipelineConfig c;
        c.edges = edges;
        c.tweets = tweets;
        c.lexicon = lexicon;
        c.min_tweets = min_tweets;
        c.convention = parse_jaccard_convention(convention);
        c.count_mode = parse_count_mode(count_mode);
        if (epsilons) c.epsilons = *epsilons;
        c.diameter_mode = parse_diameter_mode(diameter);
        c.workers = workers;
        PipelineResult res;
        if (out_dir) {
          c.out_dir = *out_dir;
          res = run_pipeline(c);
        } else {
          res = compute_pipeline(c);
        }
        py::dict d;
        d["graph"] = res.graph;
        d["stats"] = stats_dict(res.stats);
        d["scores"] = from_scores(res.scores);
        d["sweep"] = json_to_py(report_to_json(res.report))["rows"];
        d["manifest"] = json_to_py(res.manifest);
        return d;
      },
      py::arg("edges"), py::arg("tweets"), py::arg("lexicon"), py::arg("out_dir") = py::none(),
      py::arg("min_tweets") = 180, py::arg("convention") = "inclusive", py::arg("count_mode") = "tweet",
      py::arg("epsilons") = py::none(), py::arg("diameter") = "auto", py::arg("workers") = 1,
      "Full pipeline. Writes the output bundle when out_dir is given, otherwise runs in memory.");
}
