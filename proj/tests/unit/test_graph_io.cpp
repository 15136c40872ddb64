#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../support.hpp"
#include "swbnet/error.hpp"
#include "swbnet/format.hpp"
#include "swbnet/graph_io.hpp"

using namespace swbnet;

namespace {

std::vector<EdgeRecord> parse_edges(const std::string& text) {
  std::istringstream in(text);
  return read_edge_records(in);
}

FriendGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_friend_graph(in);
}

}  // namespace

TEST_CASE("edge list parsing") {
  auto r = parse_edges("# header\n\na\tb\r\nb\ta\n");
  CHECK(r == std::vector<EdgeRecord>{{"a", "b"}, {"b", "a"}});
  CHECK(parse_edges("").empty());
  CHECK_THROWS_WITH_AS(parse_edges("a\tb\nc d\n"), doctest::Contains("line 2"), IngestError);
  CHECK_THROWS_WITH_AS(parse_edges("a\tb\tc\n"), doctest::Contains("line 1"), IngestError);
  CHECK_THROWS_AS(parse_edges("a\t\n"), IngestError);
  CHECK_THROWS_AS(load_edge_records("/nonexistent/edges.tsv"), IngestError);
}

TEST_CASE("friend graph round trip keeps weights to six decimals and isolated nodes") {
  auto tg = oracle::random_graph(40, 0.15, 12);
  tg.nodes.push_back("zz_isolated");
  auto g = compute_jaccard_weights(testing_support::to_friend_graph(tg), JaccardConvention::exclusive);
  std::ostringstream out;
  write_friend_graph(out, g);
  auto back = parse_graph(out.str());
  CHECK(back.ids() == g.ids());
  CHECK(back.weighted());
  auto a = g.edges(), b = back.edges();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].u == b[i].u);
    CHECK(a[i].v == b[i].v);
    CHECK(std::fabs(b[i].weight - a[i].weight) <= 5e-7);
  }
  std::ostringstream again;
  write_friend_graph(again, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("friend graph format") {
  auto g = FriendGraph::from_id_edges({"c"}, {{"a", "b", 1.0 / 3.0}}, true);
  std::ostringstream out;
  write_friend_graph(out, g);
  CHECK(out.str() == "nodes 3 edges 1\na\tb\t0.333333\nc\n");
  CHECK_THROWS_AS(parse_graph("a\tb\t0.5\n"), IngestError);
  CHECK_THROWS_AS(parse_graph("nodes 3 edges 1\na\tb\t0.5\n"), IngestError);
  CHECK_THROWS_AS(parse_graph("nodes 2 edges 1\na\tb\tx\n"), IngestError);
  CHECK_THROWS_AS(parse_graph("nodes 2 edges 1\na\tb\t1.5\n"), IngestError);
  CHECK_THROWS_AS(parse_graph("nodes 1 edges 1\na\ta\t0.5\n"), IngestError);
}

TEST_CASE("stats JSON fields") {
  GraphStats s;
  s.node_count = 3;
  s.edge_count = 3;
  s.density = 1.0;
  s.diameter = 1;
  s.average_degree = 2.0;
  s.average_clustering = 1.0;
  auto j = stats_to_json(s);
  for (const char* k : {"node_count", "edge_count", "density", "diameter", "diameter_mode", "diameter_is_lower_bound",
                        "connected", "average_degree", "average_clustering"})
    CHECK(j.contains(k));
  CHECK(j["diameter_mode"] == "exact");
}

TEST_CASE("format helpers") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_fixed(1.0 / 3.0, 6) == "0.333333");
  CHECK(split("a,,b", ',') == std::vector<std::string_view>{"a", "", "b"});
  CHECK(chomp("x\r") == "x");
}
