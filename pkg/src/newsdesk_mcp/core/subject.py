"""Language-neutral subject codes from per-language term profiles."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Mapping
from pathlib import Path

from newsdesk_mcp.core.resources import read_tsv, resolve
from newsdesk_mcp.core.text import term_counts
from newsdesk_mcp.core.vectors import cosine, llr_weights
from newsdesk_mcp.errors import ResourceError
from newsdesk_mcp.models.subject import LabeledDocument, SubjectClass, SubjectProfile, SubjectVector

logger = logging.getLogger(__name__)

ProfileKey = tuple[int, str]


def load_thesaurus(path: str | Path | None = None) -> dict[int, SubjectClass]:
    """Read ``subjects/classes.tsv`` (code, lang, label)."""
    path = resolve(path, "subjects/classes.tsv")
    classes: dict[int, SubjectClass] = {}
    for code, lang, label in read_tsv(path, 3):
        try:
            key = int(code)
        except ValueError:
            raise ResourceError(f"{path}: class code {code!r} is not numeric") from None
        classes.setdefault(key, SubjectClass(code=key)).labels[lang] = label
    return dict(sorted(classes.items()))


def load_corpus(directory: str | Path | None = None) -> list[LabeledDocument]:
    """One document per file under ``<lang>/``; the first line lists class codes."""
    root = resolve(directory, "subjects/corpus")
    docs = []
    for path in sorted(root.glob("*/*.txt")):
        lines = path.read_text(encoding="utf-8").splitlines()
        if not lines:
            raise ResourceError(f"{path}: empty training document")
        try:
            codes = [int(c) for c in lines[0].replace(",", " ").split()]
        except ValueError:
            raise ResourceError(f"{path}: first line must list class codes") from None
        docs.append(
            LabeledDocument(
                text="\n".join(lines[1:]),
                language=path.parent.name,
                codes=codes,
                name=f"{path.parent.name}/{path.name}",
            )
        )
    logger.info(f"Loaded {len(docs)} labeled documents from {root}")
    return docs


def train_profiles(
    docs: Iterable[LabeledDocument],
    profile_size: int = 100,
    classes: Iterable[int] | None = None,
) -> dict[ProfileKey, SubjectProfile]:
    """Top LLR terms of each class against the other documents of its language."""
    docs = list(docs)
    by_language: dict[str, list[tuple[Counter[str], set[int]]]] = {}
    for doc in docs:
        by_language.setdefault(doc.language, []).append((term_counts(doc.text), set(doc.codes)))

    profiles: dict[ProfileKey, SubjectProfile] = {}
    for language in sorted(by_language):
        entries = by_language[language]
        codes = set().union(*(c for _, c in entries))
        wanted = sorted(set(classes) if classes is not None else codes)
        for code in wanted:
            inside: Counter[str] = Counter()
            outside: Counter[str] = Counter()
            for counts, doc_codes in entries:
                (inside if code in doc_codes else outside).update(counts)
            if not inside:
                logger.warning(f"No training documents for class {code} in {language}, empty profile")
                profiles[(code, language)] = SubjectProfile(code=code, language=language)
                continue
            out_total = sum(outside.values())
            if out_total == 0:
                logger.warning(f"Class {code} covers every {language} document, using raw term frequency")
                weights = {t: float(c) for t, c in inside.items()}
            else:
                weights = llr_weights(inside, outside, out_total)
            top = sorted(weights.items(), key=lambda kv: (-kv[1], kv[0]))[:profile_size]
            profiles[(code, language)] = SubjectProfile(code=code, language=language, terms=dict(top))
    return profiles


def classify_subjects(
    text: str | Mapping[str, float],
    language: str,
    profiles: Mapping[ProfileKey, SubjectProfile],
    top_k: int = 6,
) -> SubjectVector:
    """Top-K classes by cosine with the text's term vector, max weight 1."""
    vector = term_counts(text) if isinstance(text, str) else text
    candidates = [p for (code, lang), p in profiles.items() if lang == language and p.terms]
    if not candidates:
        logger.warning(f"No trained subject profiles for language {language!r}")
        return {}
    scores = [(cosine(vector, p.terms), p.code) for p in candidates]
    ranked = sorted(((s, c) for s, c in scores if s > 0), key=lambda sc: (-sc[0], sc[1]))[:top_k]
    if not ranked:
        return {}
    top = ranked[0][0]
    return {code: score / top for score, code in ranked}


def profiles_to_rows(profiles: Mapping[ProfileKey, SubjectProfile]) -> list[tuple[int, str, str, float]]:
    rows = []
    for key in sorted(profiles):
        profile = profiles[key]
        if not profile.terms:
            rows.append((profile.code, profile.language, "", 0.0))
        rows.extend((profile.code, profile.language, t, w) for t, w in profile.terms.items())
    return rows


def profiles_from_rows(rows: Iterable[tuple[int, str, str, float]]) -> dict[ProfileKey, SubjectProfile]:
    profiles: dict[ProfileKey, SubjectProfile] = {}
    for code, language, token, weight in rows:
        profile = profiles.setdefault((code, language), SubjectProfile(code=code, language=language))
        if token:
            profile.terms[token] = weight
    return profiles
