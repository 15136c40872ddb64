#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "swbnet/graph.hpp"

namespace swbnet {

// Edge list: one `source<TAB>target` per line. Lines starting with '#' and
// blank lines are skipped; anything else that is not exactly two non-empty
// tab-separated fields raises IngestError with the line number.
std::vector<EdgeRecord> read_edge_records(std::istream& in);
std::vector<EdgeRecord> load_edge_records(const std::filesystem::path& path);

// Friend graph text format:
//
//   nodes <N> edges <E>
//   <u>\t<v>\t<weight with 6 decimals>      (E lines, canonical order)
//   <id>                                    (one line per node without edges)
//
// The single-field lines keep isolated nodes across a round trip.
void write_friend_graph(std::ostream& out, const FriendGraph& g);
FriendGraph read_friend_graph(std::istream& in);
FriendGraph load_friend_graph(const std::filesystem::path& path);

nlohmann::ordered_json stats_to_json(const GraphStats& s);

}  // namespace swbnet
