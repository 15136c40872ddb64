#include "swbnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "swbnet/error.hpp"
#include "swbnet/random.hpp"

namespace swbnet {

std::string synth_user_id(std::size_t index, std::size_t population) {
  const std::size_t width = std::to_string(population > 0 ? population - 1 : 0).size();
  std::string digits = std::to_string(index);
  return "u" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

SwbScores generate_bimodal_swb(const BimodalSpec& spec) {
  if (spec.n == 0) throw ArgumentError("population size must be positive");
  for (const auto* m : {&spec.mode1, &spec.mode2}) {
    if (!(m->sd > 0.0)) throw ArgumentError("mixture sd must be positive");
    if (!(m->mean >= -1.0 && m->mean <= 1.0)) throw ArgumentError("mixture mean must lie in [-1,1]");
    if (!(m->weight >= 0.0 && m->weight <= 1.0)) throw ArgumentError("mixture weight must lie in [0,1]");
  }
  if (std::fabs(spec.mode1.weight + spec.mode2.weight - 1.0) > 1e-9)
    throw ArgumentError("mixture weights must sum to 1");

  Rng rng(spec.seed);
  SwbScores out;
  for (std::size_t i = 0; i < spec.n; ++i) {
    const MixtureMode& m = rng.uniform() < spec.mode1.weight ? spec.mode1 : spec.mode2;
    UserScore s;
    s.swb = std::clamp(m.mean + m.sd * rng.normal(), -1.0, 1.0);
    out.emplace(synth_user_id(i, spec.n), s);
  }
  return out;
}

FriendGraph generate_homophilous_graph(const SwbScores& scores, const HomophilySpec& spec) {
  const std::size_t n = scores.size();
  if (n < 3) throw ArgumentError("need at least 3 scored users");
  if (!(spec.h >= 0.0)) throw ArgumentError("homophily strength must be non-negative");
  if (!(spec.mean_degree > 0.0 && spec.mean_degree < static_cast<double>(n - 1)))
    throw ArgumentError("target mean degree must lie in (0, n-1)");

  std::vector<std::string> ids;
  std::vector<double> swb;
  ids.reserve(n);
  swb.reserve(n);
  for (const auto& [id, s] : scores) {
    ids.push_back(id);
    swb.push_back(s.swb);
  }

  const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.mean_degree / 2.0));
  const std::size_t budget = target * spec.max_attempts_per_edge;
  Rng rng(spec.seed);
  std::unordered_set<std::uint64_t> seen;
  std::vector<WeightedEdge> edges;
  edges.reserve(target);
  std::size_t attempts = 0;
  while (edges.size() < target) {
    if (++attempts > budget)
      throw ComputeError("target mean degree not reached after " + std::to_string(budget) + " attempts");
    auto u = static_cast<NodeIndex>(rng.below(n));
    auto v = static_cast<NodeIndex>(rng.below(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    const std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
    if (seen.count(key)) continue;
    if (rng.uniform() >= std::exp(-spec.h * std::fabs(swb[u] - swb[v]))) continue;
    seen.insert(key);
    edges.push_back({u, v, 1.0});
  }
  return compute_jaccard_weights(FriendGraph::from_edges(std::move(ids), edges, false), spec.convention);
}

std::string format_utc_timestamp(std::int64_t seconds) {
  std::int64_t days = seconds >= 0 ? seconds / 86400 : -((-seconds + 86399) / 86400);
  std::int64_t rem = seconds - days * 86400;
  // civil_from_days
  days += 719468;
  const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const auto doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<long long>(y), m, d,
                static_cast<long long>(rem / 3600), static_cast<long long>(rem / 60 % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

namespace {

constexpr const char* kPositiveTerms[] = {"happy", "love", "great", "amazing", "sweet", "smile"};
constexpr const char* kNegativeTerms[] = {"sad", "hate", "awful", "cry", "sick", "tears"};
constexpr const char* kNeutralTexts[] = {"just posted a new update", "heading out to the store",
                                         "reading the news this morning", "back at my desk"};
constexpr std::int64_t kWindowStart = 1227830400;  // 2008-11-28T00:00:00Z
constexpr std::int64_t kWindowSeconds = 180LL * 86400;

void emit_timeline(const std::string& user, double target_swb, std::size_t total, double emotional_fraction,
                   Rng& rng, std::vector<TweetRecord>& out) {
  const auto emotional = static_cast<long>(std::llround(emotional_fraction * static_cast<double>(total)));
  const auto positive = static_cast<long>(std::llround(static_cast<double>(emotional) * (1.0 + target_swb) / 2.0));
  const long negative = emotional - positive;
  std::vector<int> kinds;  // 1 positive, -1 negative, 0 neutral
  kinds.insert(kinds.end(), static_cast<std::size_t>(positive), 1);
  kinds.insert(kinds.end(), static_cast<std::size_t>(negative), -1);
  kinds.resize(total, 0);
  for (std::size_t i = kinds.size(); i > 1; --i) std::swap(kinds[i - 1], kinds[rng.below(i)]);
  for (std::size_t i = 0; i < total; ++i) {
    TweetRecord t;
    t.user_id = user;
    t.timestamp = kWindowStart + static_cast<std::int64_t>(i) * (kWindowSeconds / static_cast<std::int64_t>(total)) +
                  static_cast<std::int64_t>(rng.below(3600));
    t.type = "web";
    if (kinds[i] == 1) {
      t.text = std::string("feeling ") + kPositiveTerms[rng.below(std::size(kPositiveTerms))] + " today";
    } else if (kinds[i] == -1) {
      t.text = std::string("so ") + kNegativeTerms[rng.below(std::size(kNegativeTerms))] + " right now";
    } else {
      t.text = kNeutralTexts[rng.below(std::size(kNeutralTexts))];
    }
    out.push_back(std::move(t));
  }
}

}  // namespace

RawFixture make_raw_fixture(const SwbScores& scores, const FriendGraph& graph, const RawFixtureSpec& spec) {
  if (spec.tweets_per_user == 0) throw ArgumentError("tweets_per_user must be positive");
  if (!(spec.min_emotional_fraction > 0.0 && spec.min_emotional_fraction <= spec.max_emotional_fraction &&
        spec.max_emotional_fraction <= 1.0))
    throw ArgumentError("emotional fractions must satisfy 0 < min <= max <= 1");
  Rng rng(spec.seed);
  RawFixture fx;

  for (const char* t : kPositiveTerms) fx.lexicon_tsv += std::string(t) + "\tpositive\tstrong\n";
  for (const char* t : kNegativeTerms) fx.lexicon_tsv += std::string(t) + "\tnegative\tweak\n";

  std::set<std::pair<std::string, std::string>> arcs;
  for (const auto& e : graph.edges()) {
    arcs.emplace(graph.id(e.u), graph.id(e.v));
    arcs.emplace(graph.id(e.v), graph.id(e.u));
  }
  const std::size_t n = graph.node_count();
  if (n >= 2) {
    const auto extra = static_cast<std::size_t>(spec.unreciprocated_fraction * static_cast<double>(graph.edge_count()));
    std::size_t added = 0;
    for (std::size_t tries = 0; added < extra && tries < extra * 50; ++tries) {
      const auto& a = graph.id(static_cast<NodeIndex>(rng.below(n)));
      const auto& b = graph.id(static_cast<NodeIndex>(rng.below(n)));
      if (a == b || arcs.count({a, b}) || arcs.count({b, a})) continue;
      arcs.emplace(a, b);
      ++added;
    }
  }

  for (const auto& [id, s] : scores) {
    const double frac = spec.min_emotional_fraction +
                        (spec.max_emotional_fraction - spec.min_emotional_fraction) * rng.uniform();
    emit_timeline(id, s.swb, spec.tweets_per_user, frac, rng, fx.tweets);
  }

  // Low-activity users tied into the graph; the activity filter must remove them.
  for (std::size_t i = 0; i < spec.inactive_users && n > 0; ++i) {
    const std::string id = "x" + synth_user_id(i, spec.inactive_users).substr(1);
    const auto& friend_id = graph.id(static_cast<NodeIndex>(rng.below(n)));
    arcs.emplace(id, friend_id);
    arcs.emplace(friend_id, id);
    emit_timeline(id, 0.5, spec.inactive_tweets, 0.5, rng, fx.tweets);
  }

  // An active triangle with no path to the rest; the component step must remove it.
  const std::string tri[] = {"z0", "z1", "z2"};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j)
      if (i != j) arcs.emplace(tri[i], tri[j]);
    emit_timeline(tri[i], -0.5, spec.tweets_per_user, 0.5, rng, fx.tweets);
  }

  fx.arcs.assign(arcs.begin(), arcs.end());
  return fx;
}

}  // namespace swbnet
