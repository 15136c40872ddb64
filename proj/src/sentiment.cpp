#include "swbnet/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "swbnet/error.hpp"
#include "swbnet/format.hpp"
#include "swbnet/parallel.hpp"

namespace swbnet {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lexicon

Lexicon Lexicon::parse(std::istream& in) {
  Lexicon lex;
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (line.empty() || line.front() == '#') continue;
    auto f = split_ws(line);
    if (f.empty()) continue;
    if (f.size() != 3) throw IngestError("expected 'term<TAB>polarity<TAB>strength'", lineno);
    LexiconEntry entry{};
    if (f[1] == "positive") {
      entry.polarity = Polarity::positive;
    } else if (f[1] == "negative") {
      entry.polarity = Polarity::negative;
    } else {
      throw IngestError("unknown polarity '" + std::string(f[1]) + "'", lineno);
    }
    if (f[2] == "weak") {
      entry.strength = Strength::weak;
    } else if (f[2] == "strong") {
      entry.strength = Strength::strong;
    } else {
      throw IngestError("unknown strength '" + std::string(f[2]) + "'", lineno);
    }
    std::string term = lower_ascii(f[0]);
    auto [it, inserted] = lex.entries_.emplace(term, entry);
    if (!inserted) {
      if (it->second.polarity != entry.polarity)
        throw IngestError("term '" + term + "' listed with conflicting polarity", lineno);
      lex.warnings_.push_back("line " + std::to_string(lineno) + ": duplicate term '" + term + "' ignored");
      continue;
    }
    ++(entry.polarity == Polarity::positive ? lex.positive_ : lex.negative_);
  }
  if (lex.entries_.empty()) throw IngestError("lexicon is empty");
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open '" + path.string() + "'");
  try {
    return parse(in);
  } catch (const IngestError& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

const LexiconEntry* Lexicon::lookup(const std::string& term) const {
  auto it = entries_.find(term);
  return it == entries_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Tokenizer and classifier

std::vector<std::string> tokenize(std::string_view text) {
  auto is_word = [](unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
  };
  std::vector<std::string> tokens;
  std::string cur;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    // U+2019 (E2 80 99) is the usual apostrophe in typed text.
    const bool curly = c == 0xE2 && i + 2 < n && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
                       static_cast<unsigned char>(text[i + 2]) == 0x99;
    if (c == '\'' || curly) {
      const std::size_t after = curly ? i + 3 : i + 1;
      if (!cur.empty() && after < n && is_word(static_cast<unsigned char>(text[after])) &&
          !(static_cast<unsigned char>(text[after]) == 0xE2 && after + 2 < n &&
            static_cast<unsigned char>(text[after + 1]) == 0x80 &&
            static_cast<unsigned char>(text[after + 2]) == 0x99)) {
        cur.push_back('\'');
        i = after - 1;
        continue;
      }
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
      if (curly) i += 2;
      continue;
    }
    if (is_word(c)) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

CountMode parse_count_mode(std::string_view s) {
  if (s == "tweet") return CountMode::tweet;
  if (s == "occurrence") return CountMode::occurrence;
  throw ArgumentError("unknown count mode '" + std::string(s) + "' (expected tweet|occurrence)");
}

std::string_view to_string(CountMode m) { return m == CountMode::tweet ? "tweet" : "occurrence"; }

PolarityHits classify_tweet(std::span<const std::string> tokens, const Lexicon& lex, CountMode mode) {
  PolarityHits hits;
  for (const auto& t : tokens) {
    if (const auto* e = lex.lookup(t)) ++(e->polarity == Polarity::positive ? hits.positive : hits.negative);
  }
  if (mode == CountMode::tweet) {
    hits.positive = hits.positive > 0;
    hits.negative = hits.negative > 0;
  }
  return hits;
}

// ---------------------------------------------------------------------------
// Tweet ingestion

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool read_digits(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return true;
}

}  // namespace

std::int64_t parse_utc_timestamp(std::string_view s) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
  const bool shape = read_digits(s, 0, 4, y) && s.size() >= 19 && s[4] == '-' && read_digits(s, 5, 2, mo) &&
                     s[7] == '-' && read_digits(s, 8, 2, d) && (s[10] == 'T' || s[10] == ' ') &&
                     read_digits(s, 11, 2, h) && s[13] == ':' && read_digits(s, 14, 2, mi) && s[16] == ':' &&
                     read_digits(s, 17, 2, se);
  if (!shape) throw ArgumentError("bad timestamp '" + std::string(s) + "'");
  std::string_view rest = s.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t k = 1;
    while (k < rest.size() && rest[k] >= '0' && rest[k] <= '9') ++k;
    if (k == 1) throw ArgumentError("bad timestamp '" + std::string(s) + "'");
    rest.remove_prefix(k);
  }
  if (!(rest.empty() || rest == "Z" || rest == "+00:00" || rest == "+0000"))
    throw ArgumentError("timestamp '" + std::string(s) + "' is not UTC");
  static constexpr int kMonthDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  if (mo < 1 || mo > 12 || d < 1 || d > kMonthDays[mo - 1] || (mo == 2 && d == 29 && !leap) || h > 23 ||
      mi > 59 || se > 60)
    throw ArgumentError("timestamp '" + std::string(s) + "' out of range");
  return days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400 + h * 3600 + mi * 60 +
         se;
}

std::vector<TweetRecord> read_tweets(std::istream& in) {
  std::vector<TweetRecord> tweets;
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw IngestError("invalid JSON", lineno);
    }
    auto field = [&](const char* name) -> std::string {
      auto it = j.find(name);
      if (!j.is_object() || it == j.end() || !it->is_string())
        throw IngestError(std::string("missing string field '") + name + "'", lineno);
      return it->get<std::string>();
    };
    TweetRecord t;
    t.user_id = field("user_id");
    if (t.user_id.empty()) throw IngestError("empty user_id", lineno);
    try {
      t.timestamp = parse_utc_timestamp(field("ts"));
    } catch (const ArgumentError& e) {
      throw IngestError(e.what(), lineno);
    }
    t.type = field("type");
    t.text = field("text");
    if (t.text.size() > kMaxTweetBytes)
      throw IngestError("text exceeds " + std::to_string(kMaxTweetBytes) + " bytes", lineno);
    tweets.push_back(std::move(t));
  }
  return tweets;
}

std::vector<TweetRecord> load_tweets(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open '" + path.string() + "'");
  try {
    return read_tweets(in);
  } catch (const IngestError& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Scoring

double swb_value(long positive, long negative) {
  const long denom = positive + negative;
  if (denom == 0) return 0.0;
  return static_cast<double>(positive - negative) / static_cast<double>(denom);
}

UserScore score_user(std::span<const TweetRecord> timeline, const Lexicon& lex, CountMode mode) {
  if (timeline.empty()) throw ArgumentError("empty timeline");
  UserScore s;
  for (const auto& t : timeline) {
    auto hits = classify_tweet(tokenize(t.text), lex, mode);
    s.counts.positive += hits.positive;
    s.counts.negative += hits.negative;
    s.counts.emotional += (hits.positive + hits.negative) > 0;
    ++s.counts.total;
  }
  s.swb = swb_value(s.counts.positive, s.counts.negative);
  s.no_emotional_content = s.counts.positive + s.counts.negative == 0;
  return s;
}

SwbScores score_users(std::span<const TweetRecord> tweets, const Lexicon& lex, CountMode mode, unsigned workers) {
  std::map<std::string, std::vector<TweetRecord>, std::less<>> timelines;
  for (const auto& t : tweets) timelines[t.user_id].push_back(t);
  std::vector<const std::string*> users;
  std::vector<const std::vector<TweetRecord>*> lines;
  for (const auto& [u, tl] : timelines) {
    users.push_back(&u);
    lines.push_back(&tl);
  }
  std::vector<UserScore> scored(users.size());
  parallel_for(users.size(), workers, [&](std::size_t i) { scored[i] = score_user(*lines[i], lex, mode); });
  SwbScores out;
  for (std::size_t i = 0; i < users.size(); ++i) out.emplace(*users[i], scored[i]);
  return out;
}

ActivityMap activity_from_tweets(std::span<const TweetRecord> tweets, int window_days) {
  if (window_days <= 0) throw ArgumentError("window_days must be positive");
  ActivityMap a;
  a.window_days = window_days;
  for (const auto& t : tweets) ++a.counts[t.user_id];
  return a;
}

// ---------------------------------------------------------------------------
// Distributions

Histogram histogram(std::span<const double> values, double lo, double hi, double bin_width) {
  if (!(bin_width > 0.0)) throw ArgumentError("bin width must be positive");
  if (!(hi > lo)) throw ArgumentError("histogram range is empty");
  if (values.empty()) throw ComputeError("no values to bin");
  const auto nbins = static_cast<std::size_t>(std::floor((hi - lo) / bin_width + 1e-9)) + 1;
  std::vector<std::size_t> counts(nbins, 0);
  for (double v : values) {
    double pos = std::floor((v - lo) / bin_width + 0.5);
    pos = std::clamp(pos, 0.0, static_cast<double>(nbins - 1));
    ++counts[static_cast<std::size_t>(pos)];
  }
  Histogram h;
  h.sample_size = values.size();
  const double n = static_cast<double>(values.size());
  std::size_t running = 0;
  for (std::size_t k = 0; k < nbins; ++k) {
    running += counts[k];
    // Snap to a 1e-12 grid so centers print as 0.3 rather than 0.30000000000000004.
    const double center = std::round((lo + static_cast<double>(k) * bin_width) * 1e12) / 1e12;
    h.bins.push_back({center, center - bin_width / 2, center + bin_width / 2, counts[k],
                      100.0 * static_cast<double>(counts[k]) / n, 100.0 * static_cast<double>(running) / n});
  }
  return h;
}

Histogram swb_distribution(const SwbScores& scores, double bin_width, bool exclude_zero) {
  if (scores.empty()) throw ComputeError("no scores");
  std::vector<double> values;
  std::size_t excluded = 0;
  for (const auto& [id, s] : scores) {
    if (exclude_zero && s.swb == 0.0) {
      ++excluded;
      continue;
    }
    values.push_back(s.swb);
  }
  if (values.empty()) throw ComputeError("every score was excluded");
  auto h = histogram(values, -1.0, 1.0, bin_width);
  h.excluded = excluded;
  return h;
}

double empirical_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ComputeError("no values");
  if (!(q > 0.0 && q <= 1.0)) throw ArgumentError("quantile must lie in (0,1]");
  std::sort(values.begin(), values.end());
  auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(k, 1) - 1];
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> csv_fields(std::string_view line, long lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw IngestError("unterminated quoted field", lineno);
  out.push_back(std::move(cur));
  return out;
}

template <class T>
T parse_number(const std::string& s, long lineno) {
  T value{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw IngestError("bad number '" + s + "'", lineno);
  return value;
}

}  // namespace

void write_scores_csv(std::ostream& out, const SwbScores& scores) {
  out << "user_id,swb,n_pos,n_neg,n_total,flag\n";
  for (const auto& [id, s] : scores) {
    out << csv_escape(id) << ',' << format_double(s.swb) << ',' << s.counts.positive << ',' << s.counts.negative
        << ',' << s.counts.total << ',' << (s.no_emotional_content ? "no_emotional_content" : "") << '\n';
  }
}

SwbScores read_scores_csv(std::istream& in) {
  SwbScores scores;
  std::string raw;
  long lineno = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (line.empty()) continue;
    if (!header) {
      if (line != "user_id,swb,n_pos,n_neg,n_total,flag") throw IngestError("unexpected scores header", lineno);
      header = true;
      continue;
    }
    auto f = csv_fields(line, lineno);
    if (f.size() != 6 || f[0].empty()) throw IngestError("expected 6 fields", lineno);
    UserScore s;
    s.swb = parse_number<double>(f[1], lineno);
    s.counts.positive = parse_number<long>(f[2], lineno);
    s.counts.negative = parse_number<long>(f[3], lineno);
    s.counts.total = parse_number<long>(f[4], lineno);
    if (!(s.swb >= -1.0 && s.swb <= 1.0)) throw IngestError("swb outside [-1,1]", lineno);
    if (f[5] == "no_emotional_content") {
      s.no_emotional_content = true;
    } else if (!f[5].empty()) {
      throw IngestError("unknown flag '" + f[5] + "'", lineno);
    }
    if (!scores.emplace(f[0], s).second) throw IngestError("duplicate user '" + f[0] + "'", lineno);
  }
  if (!header) throw IngestError("missing scores header");
  return scores;
}

SwbScores load_scores_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open '" + path.string() + "'");
  try {
    return read_scores_csv(in);
  } catch (const IngestError& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_center,bin_lower,bin_upper,count,probability_pct,cumulative_pct\n";
  for (const auto& b : h.bins) {
    out << format_double(b.center) << ',' << format_double(b.lower) << ',' << format_double(b.upper) << ','
        << b.count << ',' << format_double(b.probability_pct) << ',' << format_double(b.cumulative_pct) << '\n';
  }
}

}  // namespace swbnet
