// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include "../oracles.hpp"
#include "../support.hpp"
#include "swbnet/assortativity.hpp"
#include "swbnet/error.hpp"
#include "swbnet/graph.hpp"
#include "swbnet/sentiment.hpp"
#include "swbnet/synth.hpp"

#ifndef SWBNET_CLI
#error "SWBNET_CLI must name the command-line binary"
#endif

using namespace swbnet;
namespace fs = std::filesystem;
using testing_support::to_friend_graph;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later checks still run so the detail stays useful.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && pass_) {
      pass_ = false;
      first_failure_ = what;
    }
  }
  Outcome done(const std::string& summary) const {
    return {pass_, pass_ ? summary + " [" + std::to_string(checks_) + " checks]" : first_failure_};
  }

 private:
  bool pass_ = true;
  std::size_t checks_ = 0;
  std::string first_failure_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SWBNET_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

SwbScores to_scores(const std::map<std::string, double>& m) {
  SwbScores s;
  for (const auto& [u, v] : m) s[u].swb = v;
  return s;
}

Outcome ac1_degree_density_arithmetic() {
  Checker c;
  const double k = average_degree(102009, 2361547);
  const double d = density(102009, 2361547);
  c.expect(std::fabs(k - 46.30) <= 0.005, "average degree " + fmt(k));
  c.expect(std::fabs(d - 0.000454) <= 1e-6, "density " + fmt(d));
  return c.done("average_degree=" + fmt(k) + " density=" + fmt(d));
}

Outcome ac2_jaccard_oracle() {
  Checker c;
  std::size_t edges = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng pick(seed * 7919);
    const std::size_t n = 2 + pick.below(199);
    auto tg = oracle::random_graph(n, 0.01 + 0.2 * pick.uniform(), seed);
    auto adj = oracle::adjacency(tg);
    auto base = to_friend_graph(tg);
    for (auto conv : {JaccardConvention::inclusive, JaccardConvention::exclusive}) {
      auto g = compute_jaccard_weights(base, conv, 1 + seed % 4);
      for (const auto& e : g.edges()) {
        const double want = oracle::jaccard(adj, g.id(e.u), g.id(e.v), conv == JaccardConvention::inclusive);
        c.expect(e.weight == want, "seed " + std::to_string(seed) + " edge " + g.id(e.u) + "-" + g.id(e.v) + " " +
                                       std::string(to_string(conv)) + ": " + fmt(e.weight) + " vs " + fmt(want));
        ++edges;
      }
    }
  }
  return c.done("100 graphs, " + std::to_string(edges) + " weighted edges");
}

Outcome ac3_pearson() {
  Checker c;
  double worst_r = 0.0, worst_p = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed + 500);
    const std::size_t n = 3 + rng.below(300);
    const double mix = 2.0 * rng.uniform() - 1.0;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal();
      y[i] = mix * x[i] + rng.normal();
    }
    auto got = pearson(x, y);
    auto want = oracle::pearson(x, y);
    const double er = std::fabs(got.r - want.r) / std::max(std::fabs(want.r), 1e-300);
    const double ep = got.p_value ? std::fabs(*got.p_value - want.p) / std::max(want.p, 1e-300) : 1.0;
    worst_r = std::max(worst_r, er);
    worst_p = std::max(worst_p, ep);
    c.expect(er <= 1e-10, "seed " + std::to_string(seed) + " r relative error " + fmt(er));
    c.expect(ep <= 1e-10, "seed " + std::to_string(seed) + " p relative error " + fmt(ep));

    std::vector<double> up(n), down(n);
    const double a = 0.01 + 100.0 * rng.uniform(), b = 10.0 * rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
      up[i] = a * x[i] + b;
      down[i] = -a * x[i] + b;
    }
    c.expect(std::fabs(pearson(x, up).r - 1.0) <= 1e-12, "affine +1 off by " + fmt(pearson(x, up).r - 1.0));
    c.expect(std::fabs(pearson(x, down).r + 1.0) <= 1e-12, "affine -1 off by " + fmt(pearson(x, down).r + 1.0));
  }
  return c.done("worst relative error r=" + fmt(worst_r) + " p=" + fmt(worst_p));
}

Outcome ac4_assortativity_oracle() {
  Checker c;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng pick(seed * 104729);
    const std::size_t n = 5 + pick.below(196);
    auto tg = oracle::random_graph(n, 0.02 + 0.15 * pick.uniform(), seed + 300);
    std::map<std::string, double> swb;
    for (const auto& v : tg.nodes) swb[v] = 2.0 * pick.uniform() - 1.0;
    auto g = to_friend_graph(tg);
    auto scores = to_scores(swb);
    const std::string tag = "seed " + std::to_string(seed);

    for (bool both : {true, false}) {
      const auto orientation = both ? Orientation::both : Orientation::single;
      auto want = oracle::pairwise_vectors(tg, swb, both);
      auto got = pairwise_sample(g, node_scores(g, scores), orientation);
      c.expect(got.x == want.x && got.y == want.y, tag + ": pairwise sample differs");
      if (want.x.size() < 2) continue;
      auto res = pairwise_assortativity(g, scores, orientation);
      auto ref = pearson(want.x, want.y);
      c.expect(res.r == ref.r && res.p_value == ref.p_value, tag + ": pairwise r differs");
    }
    auto want = oracle::neighborhood_vectors(tg, swb);
    auto got = neighborhood_sample(g, node_scores(g, scores));
    c.expect(got.x == want.x && got.y == want.y, tag + ": neighborhood sample differs");
    if (want.x.size() >= 2) {
      auto res = neighborhood_assortativity(g, scores);
      auto ref = pearson(want.x, want.y);
      c.expect(res.r == ref.r && res.p_value == ref.p_value, tag + ": neighborhood r differs");
    }
  }
  return c.done("100 graphs, samples and coefficients identical");
}

Outcome ac5_planted_homophily() {
  Checker c;
  const std::vector<double> hs{0, 1, 5, 20, 50};
  std::ostringstream summary;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    BimodalSpec b;
    b.n = 2000;
    b.seed = seed;
    auto scores = generate_bimodal_swb(b);
    std::vector<double> pw, nb;
    for (double h : hs) {
      HomophilySpec spec;
      spec.h = h;
      spec.mean_degree = 20;
      spec.seed = seed;
      auto g = largest_connected_component(generate_homophilous_graph(scores, spec));
      const double r = pairwise_assortativity(g, scores).r;
      pw.push_back(r);
      nb.push_back(neighborhood_assortativity(g, scores).r);
      if (h == 0) {
        auto band = bootstrap_null_band(g, scores, 1000, 0.99, seed);
        c.expect(r >= band.lower && r <= band.upper, "seed " + std::to_string(seed) + ": r(h=0)=" + fmt(r) +
                                                         " outside [" + fmt(band.lower) + ", " + fmt(band.upper) + "]");
      }
      if (h == 50) c.expect(r > 0.5, "seed " + std::to_string(seed) + ": r(h=50)=" + fmt(r));
    }
    const double rho_p = oracle::spearman(hs, pw), rho_n = oracle::spearman(hs, nb);
    c.expect(rho_p > 0.0, "seed " + std::to_string(seed) + ": pairwise Spearman " + fmt(rho_p));
    c.expect(rho_n > 0.0, "seed " + std::to_string(seed) + ": neighborhood Spearman " + fmt(rho_n));
    summary << " s" << seed << ":r0=" << fmt(pw.front()) << ",r50=" << fmt(pw.back()) << ",rho=" << fmt(rho_p) << "/"
            << fmt(rho_n);
  }
  return c.done(summary.str().substr(1));
}

Outcome ac6_sweep_structure() {
  Checker c;
  std::vector<double> eps;
  for (int k = 0; k <= 20; ++k) eps.push_back(k / 20.0);
  std::size_t significant = 0, marked = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    BimodalSpec b;
    b.n = 1000;
    b.seed = seed;
    auto scores = generate_bimodal_swb(b);
    HomophilySpec h;
    h.h = 20;
    h.mean_degree = 6 + 7 * static_cast<double>(seed);
    h.seed = seed;
    auto g = largest_connected_component(generate_homophilous_graph(scores, h));
    for (auto orientation : {Orientation::both, Orientation::single}) {
      auto rep = threshold_sweep(g, scores, eps, 0.001, orientation, 2);
      for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        if (i > 0) {
          c.expect(row.n_edges <= rep.rows[i - 1].n_edges, "n_edges increased at eps " + fmt(row.epsilon));
          c.expect(row.n_nodes <= rep.rows[i - 1].n_nodes, "n_nodes increased at eps " + fmt(row.epsilon));
        }
        const bool sig = row.pairwise && row.neighborhood && row.pairwise->p_value && row.neighborhood->p_value &&
                         *row.pairwise->p_value < 0.001 && *row.neighborhood->p_value < 0.001;
        const bool has_marker = std::find(row.flags.begin(), row.flags.end(), "not_significant") != row.flags.end();
        c.expect(sig != has_marker, "marker mismatch at eps " + fmt(row.epsilon));
        significant += sig;
        marked += has_marker;
      }
    }
  }
  c.expect(significant > 0 && marked > 0, "sweep never produced both kinds of rows");
  return c.done(std::to_string(significant) + " significant rows, " + std::to_string(marked) + " marked rows");
}

Outcome ac7_diameter() {
  Checker c;
  std::size_t largest = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng pick(seed * 31337);
    const std::size_t n = 2 + pick.below(999);
    auto tg = oracle::random_connected_graph(n, pick.below(n / 2 + 1), seed);
    largest = std::max(largest, n);
    auto g = to_friend_graph(tg);
    const std::size_t want = oracle::diameter(tg);
    auto s = graph_stats(g, {DiameterMode::exact, 0, 2});
    const std::size_t lb = double_sweep_diameter(g);
    const std::string tag = "seed " + std::to_string(seed) + " (n=" + std::to_string(n) + ")";
    c.expect(s.diameter == want, tag + ": exact " + std::to_string(s.diameter) + " vs " + std::to_string(want));
    c.expect(lb <= s.diameter, tag + ": double sweep " + std::to_string(lb) + " exceeds exact");
  }
  return c.done("50 connected graphs up to " + std::to_string(largest) + " nodes");
}

Outcome ac8_determinism() {
  Checker c;
  const auto root = testing_support::scratch_dir("acceptance_determinism");
  const auto fx = root / "fixture";
  c.expect(run_cli("synth --n 1000 --homophily 20 --mean-degree 20 --seed 42 --raw --out " + fx.string()) == 0,
           "synth failed");
  std::map<unsigned, fs::path> outs;
  for (unsigned w : {1u, 4u, 16u}) {
    outs[w] = root / ("w" + std::to_string(w));
    const int rc = run_cli("run --edges " + (fx / "edges.tsv").string() + " --tweets " + (fx / "tweets.jsonl").string() +
                           " --lexicon " + (fx / "lexicon.tsv").string() + " --workers " + std::to_string(w) +
                           " --out " + outs[w].string());
    c.expect(rc == 0, "run with " + std::to_string(w) + " workers exited " + std::to_string(rc));
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(outs[1])) {
    const auto name = entry.path().filename();
    if (name == "manifest.json") continue;
    const auto ref = testing_support::slurp(entry.path());
    for (unsigned w : {4u, 16u})
      c.expect(fs::exists(outs[w] / name) && testing_support::slurp(outs[w] / name) == ref,
               name.string() + " differs at " + std::to_string(w) + " workers");
    ++compared;
  }
  c.expect(compared >= 5, "too few output files");
  return c.done(std::to_string(compared) + " files byte-identical at workers 1/4/16");
}

Outcome ac9_swb_properties() {
  Checker c;
  std::istringstream lex_in(
      "good\tpositive\tstrong\nfun\tpositive\tweak\nnice\tpositive\tweak\n"
      "bad\tnegative\tstrong\nugly\tnegative\tweak\nmean\tnegative\tweak\n");
  const auto lex = Lexicon::parse(lex_in);
  const std::vector<std::string> words{"good", "fun", "nice", "bad", "ugly", "mean", "the", "a", "walk", "Good"};
  c.expect(swb_value(7, 7) == 0.0, "S(Np=Nn) != 0");
  c.expect(swb_value(3, 1) == 0.5, "S(3,1) != 0.5");
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    Rng rng(seed + 9000);
    std::vector<TweetRecord> tl;
    const std::size_t len = 1 + rng.below(60);
    for (std::size_t i = 0; i < len; ++i) {
      std::string text;
      for (std::size_t k = 0, m = 1 + rng.below(6); k < m; ++k) text += words[rng.below(words.size())] + " ";
      tl.push_back({"u", static_cast<std::int64_t>(i), "tweet", text});
    }
    const std::string tag = "timeline " + std::to_string(seed);
    for (auto mode : {CountMode::tweet, CountMode::occurrence}) {
      auto base = score_user(tl, lex, mode);
      c.expect(base.swb >= -1.0 && base.swb <= 1.0, tag + ": S out of range");
      if (base.counts.positive == base.counts.negative) c.expect(base.swb == 0.0, tag + ": balanced S != 0");
      auto perm = tl;
      for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      c.expect(score_user(perm, lex, mode).swb == base.swb, tag + ": permutation changed S");
      auto padded = tl;
      for (std::size_t k = 0, m = 1 + rng.below(10); k < m; ++k)
        padded.insert(padded.begin() + static_cast<std::ptrdiff_t>(rng.below(padded.size() + 1)),
                      TweetRecord{"u", 0, "tweet", "a walk the walk"});
      c.expect(score_user(padded, lex, mode).swb == base.swb, tag + ": neutral tweets changed S");
    }
  }
  return c.done("1000 randomized timelines, both count modes");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1", ac1_degree_density_arithmetic},     {"AC2", ac2_jaccard_oracle},   {"AC3", ac3_pearson},
      {"AC4", ac4_assortativity_oracle}, {"AC5", ac5_planted_homophily}, {"AC6", ac6_sweep_structure},
      {"AC7", ac7_diameter},             {"AC8", ac8_determinism},      {"AC9", ac9_swb_properties},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s (%.2fs) %s\n", name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
