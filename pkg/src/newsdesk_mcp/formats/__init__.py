"""Wire formats: RSS 2.0 documents and line-delimited JSON records."""

from newsdesk_mcp.formats.records import read_jsonl, write_jsonl, write_text
from newsdesk_mcp.formats.rss import FeedEntry, emit_rss, feed_entry

__all__ = ["FeedEntry", "emit_rss", "feed_entry", "read_jsonl", "write_jsonl", "write_text"]
