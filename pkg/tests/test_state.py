"""Tests for state persistence and the derived artifacts."""

import email
import xml.etree.ElementTree as ET

import pytest

from tests.conftest import utc
from newsdesk_mcp.core.ingest import ArticleStore
from newsdesk_mcp.core.names import EntityStore
from newsdesk_mcp.core.state import MonitorState, alerts_rss, clusters_json, clusters_rss, load_state, mock_email, persist_state
from newsdesk_mcp.errors import StateLoadError
from newsdesk_mcp.formats import feed_entry, read_jsonl
from newsdesk_mcp.models.alert import AlertDecision, AlertState, DailyCount
from newsdesk_mcp.models.article import Article
from newsdesk_mcp.models.cluster import BreakingNewsFlag, BreakingReason, ClusterSummary, RoundSnapshot
from newsdesk_mcp.models.entity import Entity
from newsdesk_mcp.models.link import LinkEdge, LinkParts
from newsdesk_mcp.models.subject import SubjectProfile

ROUND = utc(2024, 3, 4, 9, 0)


@pytest.fixture
def state(make_article) -> MonitorState:
    article = make_article("a1", title="Séisme en Italie", body="Un fort séisme a frappé l'Italie.", language="fr")
    summary = ClusterSummary(
        rank=1,
        cluster_id="fr-202403040900-001",
        chain_id="202403040900-fr-001",
        language="fr",
        title="Séisme en Italie",
        published_at=utc(2024, 3, 4, 6),
        size=1,
        source_count=1,
    )
    decision = AlertDecision(
        timestamp=ROUND, country="IT", category="earthquake", alert=True, level=4.0, raw_count=12, adjusted=12.0, mean=3.0
    )
    flag = BreakingNewsFlag(
        cluster_id="fr-202403040900-001",
        chain_id="202403040900-fr-001",
        language="fr",
        reason=BreakingReason.NEW_LARGE,
        articles_30min=10,
        distinct_sources=5,
        round_at=ROUND,
    )
    edge = LinkEdge(
        date="2024-03-04",
        cluster_a="en-202403040900-001",
        language_a="en",
        cluster_b="fr-202403040900-001",
        language_b="fr",
        combined=0.7,
        parts=LinkParts(subject=1.0, country=1.0, entity=0.0, keyword=0.0),
    )
    return MonitorState(
        articles=ArticleStore([article]),
        entities=EntityStore([Entity(entity_id=1, variants=["Ayse Demir"], canonical="s dmr")]),
        rounds={"fr": RoundSnapshot(language="fr", round_at=ROUND, summaries=[summary])},
        breaking=[flag],
        alert_states={
            ("IT", "earthquake"): AlertState(
                country="IT", category="earthquake", today=DailyCount(day=ROUND.date(), count=12), recent=[ROUND]
            )
        },
        alert_log=[decision],
        links={"2024-03-04": [edge]},
        profiles={(100, "fr"): SubjectProfile(code=100, language="fr", terms={"séisme": 12.5, "secours": 3.25})},
    )


class TestPersist:
    def test_round_trip(self, state, tmp_path):
        persist_state(state, tmp_path / "state")
        loaded = load_state(tmp_path / "state")
        assert loaded.articles.sorted() == state.articles.sorted()
        assert loaded.entities == state.entities
        assert loaded.rounds == state.rounds
        assert loaded.breaking == state.breaking
        assert loaded.alert_states == state.alert_states
        assert loaded.alert_log == state.alert_log
        assert loaded.links == state.links
        assert loaded.profiles == state.profiles

    def test_layout(self, state, tmp_path):
        root = tmp_path / "state"
        persist_state(state, root)
        for name in [
            "articles.jsonl",
            "entities.jsonl",
            "alerts/state.jsonl",
            "alerts/log.jsonl",
            "links/2024-03-04.jsonl",
            "profiles.tsv",
            "out/clusters/fr.rss",
            "out/clusters/fr.json",
            "out/alerts.rss",
        ]:
            assert (root / name).is_file(), name
        assert len(list((root / "outbox").glob("*.eml"))) == 2

    def test_byte_identical_on_rewrite(self, state, tmp_path):
        persist_state(state, tmp_path / "one")
        persist_state(load_state(tmp_path / "one"), tmp_path / "two")
        first = sorted(p.relative_to(tmp_path / "one") for p in (tmp_path / "one").rglob("*") if p.is_file())
        second = sorted(p.relative_to(tmp_path / "two") for p in (tmp_path / "two").rglob("*") if p.is_file())
        assert first == second
        for relative in first:
            assert (tmp_path / "one" / relative).read_bytes() == (tmp_path / "two" / relative).read_bytes()

    def test_replaces_previous_directory(self, state, tmp_path):
        root = tmp_path / "state"
        root.mkdir()
        (root / "stale.txt").write_text("old", encoding="utf-8")
        persist_state(state, root)
        assert not (root / "stale.txt").exists()
        assert not (tmp_path / ".state.tmp").exists()
        assert not (tmp_path / ".state.old").exists()

    def test_missing_directory_is_empty(self, tmp_path):
        loaded = load_state(tmp_path / "nothing")
        assert loaded.is_empty
        assert loaded.profiles is None


class TestLoadErrors:
    def test_truncated_record(self, state, tmp_path):
        root = tmp_path / "state"
        persist_state(state, root)
        path = root / "articles.jsonl"
        path.write_text(path.read_text(encoding="utf-8").rstrip("\n")[:-5], encoding="utf-8")
        with pytest.raises(StateLoadError, match="truncated") as info:
            load_state(root)
        assert info.value.line == 1

    def test_invalid_json_names_line(self, tmp_path):
        path = tmp_path / "records.jsonl"
        path.write_text('{"day": "2024-03-04", "count": 1}\n{oops\n', encoding="utf-8")
        with pytest.raises(StateLoadError) as info:
            read_jsonl(path, DailyCount)
        assert info.value.line == 2

    def test_invalid_record(self, tmp_path):
        path = tmp_path / "records.jsonl"
        path.write_text('{"day": "2024-03-04", "count": -1}\n', encoding="utf-8")
        with pytest.raises(StateLoadError, match="invalid record"):
            read_jsonl(path, DailyCount)

    def test_bad_profiles(self, state, tmp_path):
        root = tmp_path / "state"
        persist_state(state, root)
        (root / "profiles.tsv").write_text("100\tfr\tséisme\n", encoding="utf-8")
        with pytest.raises(StateLoadError, match="4 fields"):
            load_state(root)


class TestArtifacts:
    def test_clusters_rss(self, state):
        document = ET.fromstring(clusters_rss(state.rounds["fr"]))
        channel = document.find("channel")
        assert channel.findtext("language") == "fr"
        [item] = channel.findall("item")
        assert item.findtext("title") == "Séisme en Italie"
        assert item.findtext("guid") == "fr-202403040900-001"
        assert item.findtext("category") == "202403040900-fr-001"

    def test_clusters_json(self, state):
        import json

        document = json.loads(clusters_json(state.rounds["fr"]))
        assert document["language"] == "fr"
        assert document["clusters"][0]["rank"] == 1

    def test_alerts_feed_has_alerts_and_breaking(self, state):
        channel = ET.fromstring(alerts_rss(state)).find("channel")
        titles = [item.findtext("title") for item in channel.findall("item")]
        assert titles == [
            "Alert IT / earthquake: level 4",
            "Breaking (new-large): fr story 202403040900-fr-001",
        ]

    def test_mock_email(self, state):
        message = email.message_from_bytes(mock_email(feed_entry(state.alert_log[0])))
        assert message["Subject"] == "Alert IT / earthquake: level 4"
        assert message["Message-ID"] == "<alert-IT-earthquake-202403040900@newsdesk.localhost>"
        assert "12.00 articles in 24 hours" in message.get_payload()

    def test_articles_rss(self, make_article):
        from newsdesk_mcp.formats import emit_rss

        older = make_article("a", title="Older", published_at=utc(2024, 3, 4, 6))
        newer = make_article("b", title="Newer", published_at=utc(2024, 3, 4, 7))
        channel = ET.fromstring(emit_rss([older, newer])).find("channel")
        assert [i.findtext("title") for i in channel.findall("item")] == ["Newer", "Older"]

    def test_unsupported_item(self):
        with pytest.raises(TypeError):
            feed_entry(object())
