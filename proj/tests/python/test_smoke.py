import json
import math

import pytest

import swbnet


def triangle():
    return swbnet.FriendGraph([("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0)])


def test_jaccard_conventions():
    inc = swbnet.compute_jaccard_weights(triangle(), "inclusive")
    exc = swbnet.compute_jaccard_weights(triangle(), "exclusive")
    assert all(w == 1.0 for _, _, w in inc.edges())
    assert all(math.isclose(w, 1 / 3) for _, _, w in exc.edges())


def test_reduction_chain():
    arcs = [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b"), ("c", "d"), ("a", "a")]
    g = swbnet.extract_reciprocal(arcs)
    assert (g.node_count, g.edge_count) == (4, 2)
    active = swbnet.filter_active_users(g, {"a": 200, "b": 10, "c": 200, "d": 500}, 180)
    assert active.ids == ["a", "c", "d"]
    assert active.edge_count == 0
    built = swbnet.build_friend_graph(arcs, None, 0, "inclusive")
    assert built.ids == ["a", "b", "c"]
    assert built.weight("a", "b") == pytest.approx(2 / 3)


def test_stats_and_threshold():
    stats = swbnet.graph_stats(triangle(), diameter="exact")
    assert stats["diameter"] == 1
    assert stats["density"] == 1.0
    g = swbnet.FriendGraph([("a", "b", 0.05), ("b", "c", 0.1), ("c", "d", 0.3)], weighted=True)
    assert swbnet.threshold_subgraph(g, 0.1).edge_count == 2
    with pytest.raises(swbnet.ArgumentError):
        swbnet.threshold_subgraph(g, 2.0)
    with pytest.raises(swbnet.ComputeError, match="empty graph"):
        swbnet.graph_stats(swbnet.FriendGraph([]))


def test_scoring():
    lex = swbnet.Lexicon.parse("happy\tpositive\tstrong\nsad\tnegative\tstrong\n")
    assert (lex.positive_count, lex.negative_count) == (1, 1)
    assert swbnet.tokenize("don't cry :(") == ["don't", "cry"]
    assert swbnet.classify_tweet(["happy", "happy", "sad"], lex, "occurrence") == (2, 1)
    scores = swbnet.score_users([("u", "happy"), ("u", "Happy!"), ("u", "happy day"), ("u", "sad"), ("v", "meh")], lex)
    assert scores["u"].swb == 0.5
    assert scores["v"].no_emotional_content
    assert swbnet.swb_value(0, 5) == -1.0
    with pytest.raises(swbnet.IngestError):
        swbnet.Lexicon.parse("happy positive weak\nhappy negative weak\n")


def test_correlation_and_assortativity():
    assert swbnet.pearson([1, 2, 3], [3, 2, 1])["r"] == -1.0
    with pytest.raises(swbnet.ComputeError, match="degenerate vector"):
        swbnet.pearson([0.1, 0.1, 0.1], [1, 2, 3])
    dyads = swbnet.FriendGraph([("a", "b", 1.0), ("c", "d", 1.0)])
    r = swbnet.pairwise_assortativity(dyads, {"a": 0.9, "b": 0.9, "c": -0.9, "d": -0.9})
    assert r["r"] == 1.0 and r["n"] == 4


def test_synthetic_sweep():
    scores = swbnet.generate_bimodal_swb(n=500, seed=3)
    assert scores == swbnet.generate_bimodal_swb(n=500, seed=3)
    g = swbnet.generate_homophilous_graph(scores, h=20, mean_degree=10, seed=3)
    rows = swbnet.threshold_sweep(g, scores, [0.0, 0.5, 1.0])
    assert [row["epsilon"] for row in rows] == [0.0, 0.5, 1.0]
    assert rows[0]["pairwise_r"] > 0.5
    sizes = [row["n_edges"] for row in rows]
    assert sizes == sorted(sizes, reverse=True)
    assert "not_significant" in rows[-1]["flags"]


def test_pipeline(tmp_path):
    scores = swbnet.generate_bimodal_swb(n=80, seed=2)
    g = swbnet.generate_homophilous_graph(scores, h=5, mean_degree=8, seed=2)
    edges = tmp_path / "edges.tsv"
    tweets = tmp_path / "tweets.jsonl"
    lexicon = tmp_path / "lexicon.tsv"
    edges.write_text("".join(f"{u}\t{v}\n{v}\t{u}\n" for u, v, _ in g.edges()))
    lexicon.write_text("good\tpositive\tstrong\nbad\tnegative\tstrong\n")
    with tweets.open("w") as f:
        for user in g.ids:
            for i in range(3):
                text = "good" if (hash(user) + i) % 2 else "bad"
                f.write(json.dumps({"user_id": user, "ts": "2009-01-01T00:00:00Z", "type": "web", "text": text}) + "\n")
    res = swbnet.run_pipeline(edges, tweets, lexicon, out_dir=tmp_path / "out", min_tweets=3, epsilons=[0.0])
    assert len(res["sweep"]) == 1
    assert res["stats"]["node_count"] == res["graph"].node_count
    assert (tmp_path / "out" / "manifest.json").exists()
    empty = tmp_path / "empty.tsv"
    empty.write_text("")
    with pytest.raises(swbnet.IngestError):
        swbnet.run_pipeline(empty, tweets, lexicon)
