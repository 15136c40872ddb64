#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swbnet/graph.hpp"

namespace swbnet {

enum class Polarity { positive, negative };
enum class Strength { weak, strong };

struct LexiconEntry {
  Polarity polarity;
  Strength strength;
};

/// Polarity-tagged term set. Terms are stored lower-cased; strength is kept
/// but never weights counts.
class Lexicon {
 public:
  // Lines are `term<TAB>polarity<TAB>strength`; runs of spaces are accepted as
  // separators too. '#' comments and blank lines are skipped. A term repeated
  // with the same polarity is kept once and noted in warnings(); a conflicting
  // polarity or an empty result raises IngestError.
  static Lexicon parse(std::istream& in);
  static Lexicon load(const std::filesystem::path& path);

  const LexiconEntry* lookup(const std::string& term) const;

  std::size_t size() const { return entries_.size(); }
  std::size_t positive_count() const { return positive_; }
  std::size_t negative_count() const { return negative_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::unordered_map<std::string, LexiconEntry> entries_;
  std::size_t positive_ = 0;
  std::size_t negative_ = 0;
  std::vector<std::string> warnings_;
};

/// Splits on every byte that is not an ASCII letter/digit, an apostrophe
/// between two word characters, or part of a multi-byte UTF-8 sequence.
/// ASCII letters are lower-cased; U+2019 inside a word becomes '.
std::vector<std::string> tokenize(std::string_view text);

enum class CountMode { tweet, occurrence };

CountMode parse_count_mode(std::string_view s);
std::string_view to_string(CountMode m);

struct PolarityHits {
  long positive = 0;
  long negative = 0;
  friend bool operator==(const PolarityHits&, const PolarityHits&) = default;
};

/// tweet mode: presence flags (0/1 per polarity); occurrence mode: raw term counts.
PolarityHits classify_tweet(std::span<const std::string> tokens, const Lexicon& lex, CountMode mode);

struct TweetRecord {
  std::string user_id;
  std::int64_t timestamp = 0;  // seconds since the Unix epoch, UTC
  std::string type;
  std::string text;
};

inline constexpr std::size_t kMaxTweetBytes = 560;

/// ISO-8601 UTC: `YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+00:00]`. Throws ArgumentError.
std::int64_t parse_utc_timestamp(std::string_view s);

// JSON Lines with fields user_id, ts, type, text. Blank lines are skipped.
std::vector<TweetRecord> read_tweets(std::istream& in);
std::vector<TweetRecord> load_tweets(const std::filesystem::path& path);

struct UserSentimentCounts {
  long positive = 0;   // N_p
  long negative = 0;   // N_n
  long total = 0;      // tweets in the timeline
  long emotional = 0;  // tweets with at least one lexicon hit (0 when loaded from CSV)
};

struct UserScore {
  double swb = 0.0;
  UserSentimentCounts counts;
  bool no_emotional_content = false;

  /// Fraction of tweets with any lexicon hit. Not part of the SWB definition.
  double emotionality() const {
    return counts.total > 0 ? static_cast<double>(counts.emotional) / static_cast<double>(counts.total) : 0.0;
  }
};

using SwbScores = std::map<std::string, UserScore, std::less<>>;

/// (N_p - N_n) / (N_p + N_n), or 0 when both are zero.
double swb_value(long positive, long negative);

/// Throws ArgumentError on an empty timeline.
UserScore score_user(std::span<const TweetRecord> timeline, const Lexicon& lex, CountMode mode);

/// Groups tweets by user and scores every user.
SwbScores score_users(std::span<const TweetRecord> tweets, const Lexicon& lex, CountMode mode,
                      unsigned workers = 1);

ActivityMap activity_from_tweets(std::span<const TweetRecord> tweets, int window_days = 180);

struct HistogramBin {
  double center;
  double lower;
  double upper;
  std::size_t count;
  double probability_pct;
  double cumulative_pct;  // share of the sample at or below this bin
};

struct Histogram {
  std::vector<HistogramBin> bins;
  std::size_t sample_size = 0;
  std::size_t excluded = 0;
};

// Bins are centered on lo, lo + w, lo + 2w, ... up to hi and span half a bin
// on each side; values outside fall into the first/last bin.
Histogram histogram(std::span<const double> values, double lo, double hi, double bin_width);

/// SWB histogram over [-1, 1]. With exclude_zero, users whose SWB is exactly 0 are left out.
Histogram swb_distribution(const SwbScores& scores, double bin_width, bool exclude_zero = false);

/// Smallest sample value v such that at least a fraction q of the sample is <= v.
double empirical_quantile(std::vector<double> values, double q);

void write_scores_csv(std::ostream& out, const SwbScores& scores);
SwbScores read_scores_csv(std::istream& in);
SwbScores load_scores_csv(const std::filesystem::path& path);

void write_histogram_csv(std::ostream& out, const Histogram& h);

}  // namespace swbnet
