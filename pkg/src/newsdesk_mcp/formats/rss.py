"""RSS 2.0 writer."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections.abc import Iterable
from datetime import datetime
from email.utils import format_datetime
from typing import NamedTuple

from newsdesk_mcp.models.alert import AlertDecision
from newsdesk_mcp.models.article import Article, ChannelInfo, ensure_utc
from newsdesk_mcp.models.cluster import ClusterSummary


class FeedEntry(NamedTuple):
    guid: str
    title: str
    link: str
    published_at: datetime
    description: str = ""
    category: str | None = None


def feed_entry(item: Article | ClusterSummary | AlertDecision | FeedEntry) -> FeedEntry:
    """Map a domain object onto the fields of an RSS item."""
    if isinstance(item, FeedEntry):
        return item
    if isinstance(item, Article):
        return FeedEntry(item.article_id, item.title, item.url, item.published_at, item.body)
    if isinstance(item, ClusterSummary):
        description = f"{item.size} articles from {item.source_count} sources"
        return FeedEntry(item.cluster_id, item.title, item.url, item.published_at, description, item.chain_id)
    if isinstance(item, AlertDecision):
        title = f"Alert {item.country} / {item.category}: level {item.level or 0:g}"
        description = f"{item.adjusted:.2f} articles in 24 hours against a daily mean of {item.mean:.2f}"
        guid = f"alert-{item.country}-{item.category}-{item.timestamp:%Y%m%d%H%M}"
        return FeedEntry(guid, title, "", item.timestamp, description, item.category)
    raise TypeError(f"Cannot make an RSS item from {type(item).__name__}")


def emit_rss(items: Iterable[Article | ClusterSummary | AlertDecision | FeedEntry], channel: ChannelInfo | None = None) -> bytes:
    """UTF-8 RSS 2.0 document, newest item first, ties by guid."""
    channel = channel or ChannelInfo()
    entries = sorted(
        (feed_entry(item) for item in items),
        key=lambda e: (-ensure_utc(e.published_at).timestamp(), e.guid),
    )

    rss = ET.Element("rss", version="2.0")
    chan = ET.SubElement(rss, "channel")
    ET.SubElement(chan, "title").text = channel.title
    ET.SubElement(chan, "link").text = channel.link
    ET.SubElement(chan, "description").text = channel.description
    if channel.language:
        ET.SubElement(chan, "language").text = channel.language
    if entries:
        ET.SubElement(chan, "lastBuildDate").text = _rfc822(entries[0].published_at)

    for entry in entries:
        node = ET.SubElement(chan, "item")
        ET.SubElement(node, "title").text = entry.title
        if entry.link:
            ET.SubElement(node, "link").text = entry.link
        ET.SubElement(node, "description").text = entry.description
        if entry.category:
            ET.SubElement(node, "category").text = entry.category
        ET.SubElement(node, "guid", isPermaLink="false").text = entry.guid
        ET.SubElement(node, "pubDate").text = _rfc822(entry.published_at)

    ET.indent(rss)
    return ET.tostring(rss, encoding="utf-8", xml_declaration=True) + b"\n"


def _rfc822(value: datetime) -> str:
    return format_datetime(ensure_utc(value), usegmt=True)
