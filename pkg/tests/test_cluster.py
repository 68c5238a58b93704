"""Tests for clustering, story chaining and breaking-news detection."""

import math
import random
from datetime import timedelta

import pytest

from tests.conftest import utc
from newsdesk_mcp.core.cluster import (
    chain_clusters,
    cluster_facets,
    cluster_window,
    detect_breaking,
    select_window,
    size_at,
    story_timeline,
    summarize,
)
from newsdesk_mcp.core.vectors import cosine
from newsdesk_mcp.models.article import Article
from newsdesk_mcp.models.cluster import BreakingReason, ChainRecord, Cluster, SizePoint
from newsdesk_mcp.models.config import BreakingSettings

ROUND = utc(2024, 3, 4, 12, 0)


def make_cluster(members, round_at=ROUND, cluster_id=None, chain_id=None, is_new=True, sources=None, history=None):
    members = sorted(members)
    return Cluster(
        cluster_id=cluster_id or f"en-{round_at:%Y%m%d%H%M}-001",
        language="en",
        members=members,
        window_size=len(members),
        medoid_article_id=members[0],
        round_at=round_at,
        chain_id=chain_id,
        is_new=is_new,
        source_ids=sources or ["s1"],
        size_history=history or [],
    )


def brute_force_average_link(vectors: dict[str, dict[str, float]], threshold: float) -> set[frozenset[str]]:
    """Merge the pair of groups with the highest mean pairwise cosine while it reaches ``threshold``."""
    groups = [[k] for k in sorted(vectors)]
    while len(groups) > 1:
        best, pair = -1.0, None
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                sims = [cosine(vectors[a], vectors[b]) for a in groups[i] for b in groups[j]]
                mean = math.fsum(sims) / len(sims)
                if mean > best:
                    best, pair = mean, (i, j)
        if best < threshold:
            break
        i, j = pair
        groups[i] = groups[i] + groups[j]
        del groups[j]
    return {frozenset(g) for g in groups}


class TestSelectWindow:
    def test_window_extends_to_minimum(self, make_article):
        articles = [make_article(f"a{i:02d}", title="x", published_at=ROUND - timedelta(minutes=30 * i)) for i in range(30)]
        window = select_window(articles, ROUND, window_hours=4, min_articles=20)
        assert len(window) == 20
        assert window[-1].article_id == "a00"
        assert [a.published_at for a in window] == sorted(a.published_at for a in window)

    def test_full_window_kept(self, make_article):
        articles = [make_article(f"a{i:02d}", title="x", published_at=ROUND - timedelta(minutes=5 * i)) for i in range(30)]
        assert len(select_window(articles, ROUND, window_hours=4, min_articles=20)) == 30

    def test_future_articles_excluded(self, make_article):
        articles = [
            make_article("past", title="x", published_at=ROUND - timedelta(minutes=1)),
            make_article("future", title="x", published_at=ROUND + timedelta(minutes=1)),
        ]
        assert [a.article_id for a in select_window(articles, ROUND, min_articles=1)] == ["past"]


class TestClusterWindow:
    @staticmethod
    def _corpus(make_article, seed: int, n: int = 25):
        rng = random.Random(seed)
        topics = [[f"t{t}w{w}" for w in range(4)] for t in range(4)]
        noise = [f"noise{i}" for i in range(6)]
        articles, vectors = [], {}
        for i in range(n):
            topic = rng.choice(topics)
            vec = {tok: rng.uniform(0.2, 1.0) for tok in rng.sample(topic, 3)}
            vec[rng.choice(noise)] = rng.uniform(0.1, 0.8)
            article = make_article(f"a{i:02d}", title="x", published_at=ROUND - timedelta(minutes=i))
            articles.append(article)
            vectors[article.article_id] = vec
        return articles, vectors

    @pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
    def test_matches_brute_force(self, make_article, seed):
        articles, vectors = self._corpus(make_article, seed)
        clusters = cluster_window(articles, vectors, 0.5, ROUND)
        assert {frozenset(c.members) for c in clusters} == brute_force_average_link(vectors, 0.5)

    def test_every_article_in_exactly_one_cluster(self, make_article):
        articles, vectors = self._corpus(make_article, 9)
        clusters = cluster_window(articles, vectors, 0.5, ROUND)
        members = [m for c in clusters for m in c.members]
        assert sorted(members) == sorted(a.article_id for a in articles)

    def test_order_ids_and_medoid(self, make_article):
        articles, vectors = self._corpus(make_article, 3)
        clusters = cluster_window(articles, vectors, 0.5, ROUND)
        sizes = [c.size for c in clusters]
        assert sizes == sorted(sizes, reverse=True)
        assert clusters[0].cluster_id == "en-202403041200-001"
        for cluster in clusters:
            assert cluster.medoid_article_id in cluster.members
            assert cluster.window_size == cluster.size
            length = math.sqrt(math.fsum(w * w for w in cluster.centroid.values()))
            assert length == pytest.approx(1.0)

    def test_deterministic(self, make_article):
        articles, vectors = self._corpus(make_article, 4)
        first = cluster_window(articles, vectors, 0.5, ROUND)
        second = cluster_window(list(reversed(articles)), vectors, 0.5, ROUND)
        assert first == second

    def test_one_language_only(self, make_article):
        articles = [make_article("a", title="x"), make_article("b", title="y", language="fr")]
        with pytest.raises(ValueError):
            cluster_window(articles, {"a": {"x": 1.0}, "b": {"x": 1.0}}, 0.5, ROUND)

    def test_empty_vector_stays_alone(self, make_article):
        articles = [make_article("a", title="x"), make_article("b", title="x"), make_article("c", title="x")]
        vectors = {"a": {"flood": 1.0}, "b": {"flood": 2.0}, "c": {}}
        clusters = cluster_window(articles, vectors, 0.5, ROUND)
        assert [c.members for c in clusters] == [["a", "b"], ["c"]]


class TestChaining:
    def test_one_tenth_overlap_links(self):
        previous = make_cluster([f"p{i:02d}" for i in range(19)] + ["shared"], round_at=ROUND - timedelta(minutes=10),
                                chain_id="chain-old")
        current = make_cluster(["shared"] + [f"c{i}" for i in range(9)])
        [linked] = chain_clusters([current], [previous], 0.10)
        assert linked.chain_id == "chain-old"
        assert linked.is_new is False

    def test_below_one_tenth_starts_new_story(self):
        previous = make_cluster(["shared", "p1"], round_at=ROUND - timedelta(minutes=10), chain_id="chain-old")
        current = make_cluster(["shared"] + [f"c{i:02d}" for i in range(10)])
        [linked] = chain_clusters([current], [previous], 0.10)
        assert linked.chain_id == "202403041200-en-001"
        assert linked.is_new is True
        assert linked.size_history == [SizePoint(timestamp=ROUND, size=11)]

    def test_inherits_history_and_members_outside_window(self):
        earlier = ROUND - timedelta(minutes=10)
        previous = make_cluster(
            ["old", "shared"],
            round_at=earlier,
            chain_id="chain-old",
            history=[SizePoint(timestamp=earlier, size=2)],
        )
        current = make_cluster(["shared", "new"])
        [linked] = chain_clusters([current], [previous], 0.10, window_ids={"shared", "new"})
        assert linked.members == ["new", "old", "shared"]
        assert [p.size for p in linked.size_history] == [2, 3]

    def test_best_overlap_wins(self):
        earlier = ROUND - timedelta(minutes=10)
        small = make_cluster(["a"], round_at=earlier, chain_id="chain-small")
        big = make_cluster(["b", "c", "z"], round_at=earlier, chain_id="chain-big")
        current = make_cluster(["a", "b", "c"])
        [linked] = chain_clusters([current], [small, big], 0.10)
        assert linked.chain_id == "chain-big"


class TestBreaking:
    def test_new_large(self):
        cluster = make_cluster(
            [f"a{i}" for i in range(10)],
            sources=[f"s{i}" for i in range(5)],
            history=[SizePoint(timestamp=ROUND, size=10)],
        )
        flag = detect_breaking(cluster)
        assert flag.reason == BreakingReason.NEW_LARGE
        assert flag.distinct_sources == 5
        assert flag.round_at == ROUND

    def test_too_few_sources(self):
        cluster = make_cluster([f"a{i}" for i in range(10)], sources=["s1", "s2"])
        assert detect_breaking(cluster) is None

    def test_rapid_rise(self):
        history = [
            SizePoint(timestamp=ROUND - timedelta(hours=5), size=8),
            SizePoint(timestamp=ROUND - timedelta(hours=4, minutes=30), size=10),
            SizePoint(timestamp=ROUND - timedelta(hours=2), size=11),
            SizePoint(timestamp=ROUND - timedelta(minutes=30), size=12),
            SizePoint(timestamp=ROUND, size=30),
        ]
        cluster = make_cluster([f"a{i}" for i in range(30)], chain_id="c", is_new=False, history=history)
        flag = detect_breaking(cluster, config=BreakingSettings())
        assert flag.reason == BreakingReason.RAPID_RISE
        assert flag.articles_30min == 18

    def test_steady_story_is_quiet(self):
        history = [
            SizePoint(timestamp=ROUND - timedelta(hours=1), size=12),
            SizePoint(timestamp=ROUND, size=12),
        ]
        cluster = make_cluster([f"a{i}" for i in range(12)], is_new=False, history=history)
        assert detect_breaking(cluster) is None

    def test_size_at(self):
        history = [SizePoint(timestamp=ROUND, size=3), SizePoint(timestamp=ROUND + timedelta(hours=1), size=5)]
        assert size_at(history, ROUND - timedelta(minutes=1)) == 0
        assert size_at(history, ROUND + timedelta(minutes=30)) == 3


class TestSummaries:
    def test_timeline_keeps_last_size_per_day(self):
        chain = ChainRecord(
            chain_id="c",
            language="en",
            first_seen=utc(2024, 3, 4, 10),
            last_seen=utc(2024, 3, 5, 9),
            size_history=[
                SizePoint(timestamp=utc(2024, 3, 4, 10), size=2),
                SizePoint(timestamp=utc(2024, 3, 4, 23), size=6),
                SizePoint(timestamp=utc(2024, 3, 5, 9), size=9),
            ],
        )
        assert [(p.day, p.size) for p in story_timeline(chain)] == [("2024-03-04", 6), ("2024-03-05", 9)]

    def test_facets_and_summary(self, make_article):
        a = make_article("a", title="Quake", url="http://x/a", published_at=utc(2024, 3, 4, 10))
        b = make_article("b", title="Quake again", published_at=utc(2024, 3, 4, 11))
        a.annotations.categories = ["earthquake", "italy"]
        a.annotations.countries = ["IT"]
        b.annotations.categories = ["earthquake"]
        articles: dict[str, Article] = {"a": a, "b": b}
        cluster = make_cluster(["a", "b"]).model_copy(update={"medoid_title": "Quake", "chain_id": "c1"})

        facets = cluster_facets(cluster, articles)
        assert facets.categories == {"earthquake": 1.0, "italy": 0.5}
        assert facets.countries == {"IT": 0.5}

        [summary] = summarize([cluster], articles, {cluster.cluster_id: 1000})
        assert summary.rank == 1
        assert summary.title == "Quake"
        assert summary.url == "http://x/a"
        assert summary.published_at == utc(2024, 3, 4, 11)
        assert summary.major_location == 1000
        assert summary.chain_id == "c1"
