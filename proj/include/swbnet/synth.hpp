#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swbnet/graph.hpp"
#include "swbnet/sentiment.hpp"

namespace swbnet {

struct MixtureMode {
  double mean = 0.0;
  double sd = 0.05;
  double weight = 0.5;
};

/// Two-component Gaussian mixture clipped to [-1, 1]. The defaults put one
/// peak near 0 and one near 0.3.
struct BimodalSpec {
  std::size_t n = 2000;
  MixtureMode mode1{0.0, 0.05, 0.5};
  MixtureMode mode2{0.3, 0.05, 0.5};
  std::uint64_t seed = 1;
};

struct HomophilySpec {
  double h = 0.0;  // 0 reduces to uniform random pairs
  double mean_degree = 20.0;
  std::uint64_t seed = 1;
  std::size_t max_attempts_per_edge = 100'000;
  JaccardConvention convention = JaccardConvention::inclusive;
};

/// Synthetic user ids: "u" followed by a zero-padded index, so id order equals index order.
std::string synth_user_id(std::size_t index, std::size_t population);

/// Throws ArgumentError on an invalid spec. Counts are left at zero.
SwbScores generate_bimodal_swb(const BimodalSpec& spec);

/// Samples uniform node pairs and accepts each with probability exp(-h |S(u) - S(v)|)
/// until round(n * mean_degree / 2) distinct edges exist. Edge weights are
/// Jaccard weights under spec.convention. Throws ComputeError when the attempt
/// budget runs out.
FriendGraph generate_homophilous_graph(const SwbScores& scores, const HomophilySpec& spec);

struct RawFixtureSpec {
  std::size_t tweets_per_user = 200;
  double min_emotional_fraction = 0.3;
  double max_emotional_fraction = 0.7;
  double unreciprocated_fraction = 0.1;  // extra one-way arcs per friend edge
  std::size_t inactive_users = 20;       // attached but below the activity threshold
  std::size_t inactive_tweets = 30;
  std::uint64_t seed = 1;
};

/// Raw inputs for the full pipeline: follower arcs, tweets and a lexicon whose
/// scoring reproduces `scores` up to rounding. Adds inactive users and a
/// detached active triangle so the activity filter and component extraction
/// both have work to do.
struct RawFixture {
  std::vector<EdgeRecord> arcs;
  std::vector<TweetRecord> tweets;
  std::string lexicon_tsv;
};

RawFixture make_raw_fixture(const SwbScores& scores, const FriendGraph& graph, const RawFixtureSpec& spec);

std::string format_utc_timestamp(std::int64_t seconds);

}  // namespace swbnet
