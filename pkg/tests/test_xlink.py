"""Tests for cluster signatures, link scoring and entity profiles."""

import pytest

from tests.conftest import utc
from newsdesk_mcp.core.names import EntityStore
from newsdesk_mcp.core.xlink import combine, fuse_entity_profile, link_clusters, link_score, signature
from newsdesk_mcp.errors import EntityNotFoundError
from newsdesk_mcp.models.article import ResolvedPlace, TaggedName
from newsdesk_mcp.models.cluster import ChainRecord, Cluster
from newsdesk_mcp.models.config import LinkWeights
from newsdesk_mcp.models.entity import Entity, QuoteRecord
from newsdesk_mcp.models.link import ClusterSignature, LinkParts


def sig(cluster_id, language, **vectors) -> ClusterSignature:
    return ClusterSignature(cluster_id=cluster_id, language=language, **vectors)


class TestScore:
    def test_combined_is_weighted_sum(self):
        parts = LinkParts(subject=1.0, country=0.0, entity=0.5, keyword=0.0)
        assert combine(parts) == pytest.approx(0.5)
        weights = LinkWeights(subject=0.0, country=0.0, entity=1.0, keyword=0.0)
        assert combine(parts, weights) == pytest.approx(0.5)

    @pytest.mark.parametrize(
        ("ingredient", "expected"), [("subject", 0.4), ("country", 0.3), ("entity", 0.2), ("keyword", 0.1)]
    )
    def test_default_weights(self, ingredient, expected):
        parts = LinkParts(**{name: float(name == ingredient) for name in ("subject", "country", "entity", "keyword")})
        assert combine(parts) == pytest.approx(expected, abs=1e-12)

    def test_parts(self):
        sa = sig("en-1", "en", subject={100: 1.0}, country={"TR": 3}, entity={1: 2}, keyword={"flood": 1.0})
        sb = sig("fr-1", "fr", subject={100: 1.0}, country={"TR": 1}, entity={1: 1}, keyword={"crue": 1.0})
        combined, parts = link_score(sa, sb)
        assert parts.subject == pytest.approx(1.0)
        assert parts.country == pytest.approx(1.0)
        assert parts.entity == pytest.approx(1.0)
        assert parts.keyword == 0.0
        assert combined == pytest.approx(0.9)

    def test_empty_ingredients_score_zero(self):
        combined, parts = link_score(sig("en-1", "en"), sig("fr-1", "fr"))
        assert combined == 0.0
        assert parts == LinkParts(subject=0, country=0, entity=0, keyword=0)


class TestLinkClusters:
    def test_pairs_examined_is_language_pairs(self):
        signatures = {lang: [sig(f"{lang}-1", lang, subject={1: 1.0})] for lang in ["de", "en", "fr", "it"]}
        result = link_clusters(signatures, threshold=0.0)
        assert result.pairs_examined == 6
        assert len(result.edges) == 6

    @pytest.mark.parametrize("count", range(2, 20))
    def test_every_language_pair_is_examined(self, count):
        languages = [f"l{i:02d}" for i in range(count)]
        signatures = {lang: [sig(f"{lang}-1", lang)] for lang in languages}
        result = link_clusters(signatures, threshold=1.0)
        assert result.pairs_examined == count * (count - 1) // 2
        assert result.edges == []
        if count == 19:
            assert result.pairs_examined == 171

    def test_threshold_and_order(self):
        signatures = {
            "en": [sig("en-1", "en", subject={1: 1.0}, country={"TR": 1}), sig("en-2", "en", subject={1: 1.0})],
            "fr": [sig("fr-1", "fr", subject={1: 1.0}, country={"TR": 1})],
        }
        result = link_clusters(signatures, threshold=0.5, date="2024-03-04")
        [edge] = result.edges
        assert (edge.cluster_a, edge.cluster_b) == ("en-1", "fr-1")
        assert edge.combined == pytest.approx(0.7)
        assert edge.date == "2024-03-04"

        everything = link_clusters(signatures, threshold=0.0)
        assert [e.cluster_a for e in everything.edges] == ["en-1", "en-2"]

    def test_single_language(self):
        result = link_clusters({"en": [sig("en-1", "en")]})
        assert result.pairs_examined == 0
        assert result.edges == []


class TestSignature:
    def test_ingredients(self, make_article):
        article = make_article("a", title="Flood flood")
        article.annotations.places = [ResolvedPlace(surface="Izmir", token_offset=0, location_id=2002, country="TR")]
        article.annotations.names = [
            TaggedName(surface="Ayse Demir", start=0, end=2, char_start=0, char_end=10, entity_id=4, entity_type="person")
        ]
        cluster = Cluster(
            cluster_id="en-202403040900-001",
            language="en",
            members=["a", "gone"],
            medoid_article_id="a",
            round_at=utc(2024, 3, 4, 9),
        )
        result = signature(cluster, {"a": article})
        assert result.subject == {}
        assert result.country == {"TR": 1}
        assert result.entity == {4: 1}
        assert result.keyword == {"flood": 2.0}


class TestEntityProfile:
    def test_fuses_languages_quotes_and_partners(self):
        store = EntityStore(
            [
                Entity(
                    entity_id=1,
                    variants=["Ayse Demir", "Ayşe Demir"],
                    canonical="s dmr",
                    titles={"governor": 2},
                    cluster_refs=["en-202403040900-001", "fr-202403040900-002"],
                    chain_refs=["202403040900-en-001"],
                ),
                Entity(entity_id=2, variants=["Marco Bellini"], canonical="mrk bln"),
            ]
        )
        chains = [
            ChainRecord(chain_id="c1", language="en", first_seen=utc(2024, 3, 4), last_seen=utc(2024, 3, 4), entity_ids=[1, 2]),
            ChainRecord(chain_id="c2", language="fr", first_seen=utc(2024, 3, 4), last_seen=utc(2024, 3, 4), entity_ids=[1, 2, 3]),
        ]
        quote = QuoteRecord(
            entity_id=1,
            speaker="Ayse Demir",
            verb="said",
            quote_text="Hold on.",
            article_id="a",
            span_start=0,
            span_end=30,
            quote_start=20,
            quote_end=28,
        )
        other = quote.model_copy(update={"entity_id": 2})
        profile = fuse_entity_profile(1, store, quotes=[quote, other], chains=chains)
        assert profile.clusters == {"en": ["en-202403040900-001"], "fr": ["fr-202403040900-002"]}
        assert profile.stories == ["202403040900-en-001"]
        assert profile.quotes == [quote]
        assert [(c.entity_id, c.count) for c in profile.cooccurring] == [(2, 2), (3, 1)]
        assert profile.cooccurring[0].weighted == pytest.approx(1.5)

    def test_unknown_entity(self):
        with pytest.raises(EntityNotFoundError):
            fuse_entity_profile(9, EntityStore())
