"""Log-likelihood keyword vectors and sparse cosine similarity."""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import xlogy

from newsdesk_mcp.core.resources import read_tsv, resolve
from newsdesk_mcp.core.text import term_counts
from newsdesk_mcp.errors import ResourceError
from newsdesk_mcp.models.article import Article
from newsdesk_mcp.models.cluster import KeywordVector

logger = logging.getLogger(__name__)

EPSILON = 1e-9


@dataclass(frozen=True)
class BackgroundModel:
    """Corpus frequencies of one language."""

    language: str
    counts: dict[str, int] = field(default_factory=dict)
    total: int = 0

    def count(self, token: str) -> int:
        return self.counts.get(token, 0)


def load_background(language: str, models_dir: str | Path | None = None) -> BackgroundModel | None:
    """Read ``models/<lang>.tsv`` (token, count, total); None when absent."""
    path = resolve(models_dir, "models") / f"{language}.tsv"
    if not path.is_file():
        return None
    counts: dict[str, int] = {}
    total = 0
    for token, count, row_total in read_tsv(path, 3):
        try:
            counts[token.lower()] = counts.get(token.lower(), 0) + int(count)
            total = max(total, int(row_total))
        except ValueError as e:
            raise ResourceError(f"{path}: bad count for {token!r}: {e}") from e
    total = max(total, sum(counts.values()))
    return BackgroundModel(language=language, counts=counts, total=total)


def g2(k11, n1, k21, n2):
    """One-sided Dunning G² of rate k11/n1 against k21/n2 (array-friendly)."""
    k11 = np.asarray(k11, dtype=float)
    k21 = np.asarray(k21, dtype=float)
    k12 = n1 - k11
    k22 = n2 - k21
    n = n1 + n2
    value = 2.0 * (
        xlogy(k11, k11) + xlogy(k12, k12) + xlogy(k21, k21) + xlogy(k22, k22)
        - xlogy(k11 + k12, k11 + k12) - xlogy(k21 + k22, k21 + k22)
        - xlogy(k11 + k21, k11 + k21) - xlogy(k12 + k22, k12 + k22)
        + xlogy(n, n)
    )
    over = k11 * n2 > k21 * n1
    return np.where(over, np.maximum(value, 0.0), 0.0)


def llr_weights(counts: Mapping[str, int], reference: Mapping[str, int], reference_total: int) -> KeywordVector:
    """LLR weight of every token of ``counts`` against the reference counts."""
    if not counts:
        return {}
    tokens = sorted(counts)
    k11 = np.array([counts[t] for t in tokens], dtype=float)
    k21 = np.array([reference.get(t, 0) for t in tokens], dtype=float)
    n1 = float(k11.sum())
    weights = g2(k11, n1, k21, float(reference_total))
    return {t: float(w) for t, w in zip(tokens, weights) if w >= EPSILON}


def vectorize_counts(counts: Mapping[str, int], background: BackgroundModel | None) -> KeywordVector:
    if background is None or background.total <= 0:
        return {t: float(c) for t, c in sorted(counts.items()) if c > 0}
    return llr_weights(counts, background.counts, background.total)


def vectorize(article: Article, background: BackgroundModel | None) -> KeywordVector:
    """Keyword vector of an article against its language background."""
    if background is None:
        logger.warning(
            f"No background model for language {article.language!r}, "
            f"using raw term frequency for {article.article_id}"
        )
    return vectorize_counts(term_counts(article.text), background)


def norm(u: Mapping) -> float:
    return math.sqrt(math.fsum(x * x for x in u.values()))


def cosine(u: Mapping, v: Mapping) -> float:
    """Cosine of two sparse non-negative vectors; 0 when either is empty."""
    if not u or not v:
        return 0.0
    shared = sorted(set(u) & set(v), key=str)
    if not shared:
        return 0.0
    nu, nv = norm(u), norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    dot = math.fsum(u[k] * v[k] for k in shared)
    return min(1.0, max(0.0, dot / (nu * nv)))


def add_counts(*counters: Mapping[str, int]) -> Counter[str]:
    total: Counter[str] = Counter()
    for c in counters:
        total.update(c)
    return total
